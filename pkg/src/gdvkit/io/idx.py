"""Readers for the IDX files of the standard handwritten-digit distribution.

The format is big-endian: a 32-bit magic (0x00000803 for images, 0x00000801
for labels), the 32-bit dimension sizes, then the unsigned-byte payload.
"""

from __future__ import annotations

import struct

import numpy as np

from ..dataset import LabeledDataset
from ..errors import BadMagic, DimensionMismatch, TruncatedFile

IMAGE_MAGIC = 0x00000803
LABEL_MAGIC = 0x00000801


def _read_exact(f, n: int, what: str) -> bytes:
    buf = f.read(n)
    if len(buf) != n:
        raise TruncatedFile(f"file ended while reading {what} ({len(buf)}/{n} bytes)")
    return buf


def load_idx_images(path) -> np.ndarray:
    """Images flattened row-major to (N, rows*cols), scaled to [0, 1] by /255."""
    with open(path, "rb") as f:
        magic, n, rows, cols = struct.unpack(">IIII", _read_exact(f, 16, "image header"))
        if magic != IMAGE_MAGIC:
            raise BadMagic(f"expected image magic {IMAGE_MAGIC:#010x}, found {magic:#010x}")
        payload = _read_exact(f, n * rows * cols, "image payload")
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(n, rows * cols)
    return pixels.astype(np.float64) / 255.0


def load_idx_labels(path) -> np.ndarray:
    """Label bytes as an integer vector."""
    with open(path, "rb") as f:
        magic, n = struct.unpack(">II", _read_exact(f, 8, "label header"))
        if magic != LABEL_MAGIC:
            raise BadMagic(f"expected label magic {LABEL_MAGIC:#010x}, found {magic:#010x}")
        payload = _read_exact(f, n, "label payload")
    return np.frombuffer(payload, dtype=np.uint8).astype(np.int64)


def load_idx_pair(images_path, labels_path) -> LabeledDataset:
    """Load matching image and label files as one dataset."""
    images = load_idx_images(images_path)
    labels = load_idx_labels(labels_path)
    if images.shape[0] != labels.shape[0]:
        raise DimensionMismatch(
            f"{images.shape[0]} images but {labels.shape[0]} labels"
        )
    return LabeledDataset(images, labels)
