#!/usr/bin/env python3
"""The value does not care how many coordinates carry the data.

Embedding 2-D points into higher-dimensional spaces by copying coordinates
leaves the score essentially unchanged: exact for whole-set duplication
(distances scale by sqrt(2), the 1/sqrt(D) factor cancels it), and within
a couple of hundredths for odd replications like (x, y) -> (x, y, y).
That is what makes scores comparable between network layers of different
widths. Constant (dead) coordinates are dropped automatically and do not
dilute the normalization.
"""

from pathlib import Path

import numpy as np

from gdvkit import (
    LabeledDataset,
    embed_duplicate_y,
    embed_replicate,
    gdv,
    generate_clusters,
    two_cluster_spec,
)
from gdvkit.io import write_svg_lines

OUT = Path(__file__).parent / "out" / "02_dimension_invariance"
OUT.mkdir(parents=True, exist_ok=True)

data = generate_clusters(two_cluster_spec(0.2, seed=42))
base = gdv(data)
print(f"2-D value: {base.gdv:+.4f}")

xyy = embed_duplicate_y(data)
print(f"(x, y, y) embedding: {gdv(xyy).gdv:+.4f}  "
      f"(shift {gdv(xyy).gdv - base.gdv:+.5f})")

sweep = []
for dim in range(2, 21):
    value = gdv(embed_replicate(data, dim)).gdv if dim > 2 else base.gdv
    sweep.append(value)
    marker = " <- exact duplication" if dim % 2 == 0 and dim > 2 else ""
    print(f"replicated to {dim:2d} dims: {value:+.4f}{marker}")
write_svg_lines(OUT / "sweep.svg", [("replicated", sweep)],
                title="score vs embedding dimension")

# dead coordinates are ignored, not counted
padded = LabeledDataset(
    np.hstack([data.points, np.full((data.n_points, 5), 3.0)]), data.labels
)
report = gdv(padded)
print(f"\nwith 5 constant padding dims: {report.gdv:+.4f} "
      f"(effective_dim={report.effective_dim}, unchanged)")
print(f"\nsweep plot written to {OUT}")
