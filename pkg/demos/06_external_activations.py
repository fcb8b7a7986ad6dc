#!/usr/bin/env python3
"""Score layers of any external model via the activation archive format.

The binary .gdva container carries named activation matrices plus one label
vector, so activations dumped from any framework can be scored by this
toolkit without it knowing anything about the model. This demo fakes an
"external" network with plain numpy, writes the archive, reads it back and
scores the curve -- the same flow works from the command line:

    gdvkit gdv --input dumps.gdva --output curve.csv
"""

from pathlib import Path

import numpy as np

from gdvkit import LabeledDataset, gdv_curve
from gdvkit.io import (
    ActivationArchive,
    read_activation_archive,
    write_activation_archive,
    write_curve_csv,
)

OUT = Path(__file__).parent / "out" / "06_external_activations"
OUT.mkdir(parents=True, exist_ok=True)

# stand-in for "some other framework": random projections + tanh
rng = np.random.default_rng(5)
inputs = np.vstack([rng.normal(-0.5, 1.0, (200, 32)),
                    rng.normal(+0.5, 1.0, (200, 32))])
labels = np.repeat([0, 1], 200)

layers = [("input", inputs)]
h = inputs
for i in range(3):
    h = np.tanh(h @ rng.normal(size=(h.shape[1], 24)) * 0.4)
    layers.append((f"tanh/{i + 1}", h))

archive = ActivationArchive(
    layers=[(name, values.astype(np.float32)) for name, values in layers],
    labels=labels,
    source="demo external dump",
)
path = OUT / "dumps.gdva"
write_activation_archive(path, archive)
print(f"wrote {path} ({path.stat().st_size} bytes, "
      f"{len(archive.layers)} layers, provenance {archive.source!r})")

back = read_activation_archive(path)
curve = gdv_curve([
    (name, LabeledDataset(values.astype(np.float64), back.labels))
    for name, values in back.layers
])
for name, value in zip(curve.layer_ids, curve.values):
    print(f"  {name:8s} gdv = {value:+.3f}")
write_curve_csv(OUT / "curve.csv", curve)
print(f"curve written to {OUT / 'curve.csv'}")
