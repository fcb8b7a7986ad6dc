"""Shared fixtures: small reference datasets and the digit image source.

Set GDVKIT_MNIST_DIR to a directory holding the four standard IDX files to
run the layer-probing tests on real handwritten digits instead of the
procedural stand-in images.
"""

import os
from pathlib import Path

import numpy as np
import pytest

from gdvkit import LabeledDataset
from gdvkit.digits import digit_dataset
from gdvkit.io import load_idx_pair

MNIST_FILES = {
    "train": ("train-images-idx3-ubyte", "train-labels-idx1-ubyte"),
    "test": ("t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte"),
}


def _mnist_dir() -> Path | None:
    path = os.environ.get("GDVKIT_MNIST_DIR")
    if not path:
        return None
    base = Path(path)
    for images, labels in MNIST_FILES.values():
        if not (base / images).exists() or not (base / labels).exists():
            return None
    return base


def digit_images(split: str, n_per_class: int, classes, seed: int) -> LabeledDataset:
    """Digit images from real IDX files when available, else rendered glyphs."""
    base = _mnist_dir()
    classes = tuple(int(c) for c in classes)
    if base is None:
        # distinct seed offset keeps train/test draws disjoint
        offset = 0 if split == "train" else 10_000
        return digit_dataset(n_per_class, classes=classes, seed=seed + offset)
    images, labels = MNIST_FILES[split]
    full = load_idx_pair(base / images, base / labels)
    rng = np.random.default_rng(seed)
    rows = []
    for c in classes:
        candidates = np.flatnonzero(full.labels == c)
        rows.append(rng.choice(candidates, size=n_per_class, replace=False))
    rows = np.concatenate(rows)
    return full.subset(rows)


@pytest.fixture
def rng():
    """Fresh deterministic generator per test; keeps tests order-independent."""
    return np.random.default_rng(12345)


@pytest.fixture
def two_blob_dataset():
    """Well-separated 2-D blobs, 40 points per class."""
    gen = np.random.default_rng(7)
    a = gen.normal((0, 0), 0.3, size=(40, 2))
    b = gen.normal((3, 3), 0.3, size=(40, 2))
    return LabeledDataset(np.vstack([a, b]), np.repeat([0, 1], 40))
