"""Versioned binary container for per-layer activation dumps.

Lets activations recorded from any external network be analyzed by the same
metric pipeline. Layout, little-endian throughout:

    magic "GDVA" | u32 version=1 | u32 layer_count
    per layer: u32 id_len | id utf-8 | u32 rows | u32 cols | float32 values
    u32 label_count | u32 labels...
    optional trailer: u32 src_len | source utf-8

The trailer carries free-form provenance; readers accept files without it.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from ..errors import BadMagic, DimensionMismatch, TruncatedFile, UnsupportedVersion

MAGIC = b"GDVA"
VERSION = 1


@dataclass
class ActivationArchive:
    """Named activation matrices sharing one label vector.

    Values are stored as float32; inputs are cast on construction so a write
    followed by a read reproduces the archive bit for bit.
    """

    layers: list[tuple[str, np.ndarray]]
    labels: np.ndarray
    source: str = ""

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.labels.ndim != 1:
            raise DimensionMismatch("labels must be a 1-D vector")
        normalized = []
        for layer_id, values in self.layers:
            values = np.ascontiguousarray(values, dtype=np.float32)
            if values.ndim != 2:
                raise DimensionMismatch(f"layer {layer_id!r} values must be 2-D")
            if values.shape[0] != self.labels.shape[0]:
                raise DimensionMismatch(
                    f"layer {layer_id!r} has {values.shape[0]} rows, "
                    f"labels have {self.labels.shape[0]}"
                )
            normalized.append((str(layer_id), values))
        self.layers = normalized


def _read_exact(f, n: int, what: str) -> bytes:
    buf = f.read(n)
    if len(buf) != n:
        raise TruncatedFile(f"file ended while reading {what} ({len(buf)}/{n} bytes)")
    return buf


def _read_u32(f, what: str) -> int:
    return struct.unpack("<I", _read_exact(f, 4, what))[0]


def write_activation_archive(path, archive: ActivationArchive) -> None:
    """Serialize an archive; see the module docstring for the layout."""
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<II", VERSION, len(archive.layers)))
        for layer_id, values in archive.layers:
            encoded = layer_id.encode("utf-8")
            f.write(struct.pack("<I", len(encoded)))
            f.write(encoded)
            f.write(struct.pack("<II", values.shape[0], values.shape[1]))
            f.write(values.astype("<f4", copy=False).tobytes())
        f.write(struct.pack("<I", archive.labels.shape[0]))
        f.write(archive.labels.astype("<u4").tobytes())
        encoded_src = archive.source.encode("utf-8")
        f.write(struct.pack("<I", len(encoded_src)))
        f.write(encoded_src)


def read_activation_archive(path) -> ActivationArchive:
    """Read an archive written by :func:`write_activation_archive`."""
    with open(path, "rb") as f:
        magic = _read_exact(f, 4, "magic")
        if magic != MAGIC:
            raise BadMagic(f"expected {MAGIC!r}, found {magic!r}")
        version = _read_u32(f, "version")
        if version != VERSION:
            raise UnsupportedVersion(f"archive version {version} not supported")
        n_layers = _read_u32(f, "layer count")
        layers = []
        for _ in range(n_layers):
            id_len = _read_u32(f, "layer id length")
            layer_id = _read_exact(f, id_len, "layer id").decode("utf-8")
            rows = _read_u32(f, "row count")
            cols = _read_u32(f, "column count")
            buf = _read_exact(f, 4 * rows * cols, f"layer {layer_id!r} values")
            values = np.frombuffer(buf, dtype="<f4").reshape(rows, cols).copy()
            layers.append((layer_id, values))
        n_labels = _read_u32(f, "label count")
        labels = np.frombuffer(
            _read_exact(f, 4 * n_labels, "labels"), dtype="<u4"
        ).astype(np.int64)
        source = ""
        trailer = f.read(4)
        if len(trailer) == 4:
            (src_len,) = struct.unpack("<I", trailer)
            source = _read_exact(f, src_len, "source").decode("utf-8")
    return ActivationArchive(layers=layers, labels=labels, source=source)
