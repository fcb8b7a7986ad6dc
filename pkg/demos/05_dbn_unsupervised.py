#!/usr/bin/env python3
"""Unsupervised stacks separate classes they were never told about.

Train a deep belief network layer by layer with contrastive divergence on
digit images -- no labels involved anywhere in training -- and then score
each layer's representation with the label information held back until
measurement time. Separability improves steadily with depth, and faster
for a visually distinct digit triple (0, 1, 6) than for a look-alike
triple (4, 7, 9). Dreaming the prototypical input for a class (sparsify a
layer's activity, propagate it back down to pixel space) shows what each
layer considers a typical member.
"""

from pathlib import Path

import numpy as np
from PIL import Image

from gdvkit import gdv
from gdvkit.digits import digit_dataset
from gdvkit.io import write_svg_lines
from gdvkit.nets import dbn_layer_datasets, dbn_train_greedy, prototype_reconstruct

OUT = Path(__file__).parent / "out" / "05_dbn_unsupervised"
OUT.mkdir(parents=True, exist_ok=True)

train = digit_dataset(600, classes=(0, 1, 6), seed=300)
print("greedy CD-1 training of a 6-layer width-256 stack (labels unused)...")
dbn = dbn_train_greedy([784] + [256] * 6, train.points, epochs=8,
                       learning_rate=0.05, seed=0, batch_size=64)

easy = digit_dataset(150, classes=(0, 1, 6), seed=10300)
hard = digit_dataset(150, classes=(4, 7, 9), seed=10300)
easy_curve = [gdv(layer).gdv for layer in dbn_layer_datasets(dbn, easy)]
hard_curve = [gdv(layer).gdv for layer in dbn_layer_datasets(dbn, hard)]
print("layer:          " + "  ".join(f"{i:6d}" for i in range(len(easy_curve))))
print("gdv {0,1,6}:    " + "  ".join(f"{v:+.3f}" for v in easy_curve))
print("gdv {4,7,9}:    " + "  ".join(f"{v:+.3f}" for v in hard_curve))
write_svg_lines(OUT / "curves.svg",
                [("digits 0,1,6", easy_curve), ("digits 4,7,9", hard_curve)],
                title="unsupervised separability per layer")

print("\ndreaming class prototypes at increasing depth...")
tiles = []
for class_id in (0, 1, 6):
    row = []
    for layer in (1, 3, 6):
        pip = prototype_reconstruct(dbn, layer, class_id, easy)
        row.append(pip.image)
    tiles.append(np.hstack(row))
sheet = np.vstack(tiles)
Image.fromarray((sheet * 255).astype(np.uint8), mode="L").resize(
    (sheet.shape[1] * 4, sheet.shape[0] * 4), Image.NEAREST
).save(OUT / "prototypes.png")
print(f"curves and prototype sheet written to {OUT}")
