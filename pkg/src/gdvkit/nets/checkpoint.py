"""Binary model checkpoints.

Container layout (all integers unsigned 32-bit little-endian, all parameters
64-bit IEEE-754 little-endian, row-major):

    magic "GDVM" | version=1 | model_type (0=MLP, 1=DBN) | n_widths | widths...
    MLP payload: per dense layer, weight matrix (fan_in x fan_out) then bias.
    DBN payload: per RBM, weight matrix (hidden x visible), visible bias,
    hidden bias.

Round trips are bit-exact. Loading an MLP attaches a default config carrying
the stored widths; the training history is not serialized.
"""

from __future__ import annotations

import struct

import numpy as np

from ..errors import BadMagic, TruncatedFile, UnsupportedVersion
from .dbn import DbnModel, RbmParams
from .mlp import MlpConfig, MlpModel

MAGIC = b"GDVM"
VERSION = 1
_MLP, _DBN = 0, 1


def _read_exact(f, n: int, what: str) -> bytes:
    buf = f.read(n)
    if len(buf) != n:
        raise TruncatedFile(f"file ended while reading {what} ({len(buf)}/{n} bytes)")
    return buf


def _read_u32(f, what: str) -> int:
    return struct.unpack("<I", _read_exact(f, 4, what))[0]


def _write_array(f, arr: np.ndarray) -> None:
    f.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def _read_array(f, shape: tuple[int, ...], what: str) -> np.ndarray:
    count = int(np.prod(shape))
    buf = _read_exact(f, 8 * count, what)
    return np.frombuffer(buf, dtype="<f8").reshape(shape).copy()


def save_model(path, model: MlpModel | DbnModel) -> None:
    """Write an MLP or DBN checkpoint."""
    if isinstance(model, MlpModel):
        model_type, widths = _MLP, model.layer_widths
    elif isinstance(model, DbnModel):
        model_type, widths = _DBN, model.layer_widths
    else:
        raise TypeError(f"cannot checkpoint {type(model).__name__}")

    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<III", VERSION, model_type, len(widths)))
        f.write(struct.pack(f"<{len(widths)}I", *widths))
        if model_type == _MLP:
            for w, b in zip(model.weights, model.biases):
                _write_array(f, w)
                _write_array(f, b)
        else:
            for rbm in model.rbms:
                _write_array(f, rbm.weights)
                _write_array(f, rbm.visible_bias)
                _write_array(f, rbm.hidden_bias)


def load_model(path) -> MlpModel | DbnModel:
    """Read a checkpoint written by :func:`save_model`."""
    with open(path, "rb") as f:
        magic = _read_exact(f, 4, "magic")
        if magic != MAGIC:
            raise BadMagic(f"expected {MAGIC!r}, found {magic!r}")
        version = _read_u32(f, "version")
        if version != VERSION:
            raise UnsupportedVersion(f"container version {version} not supported")
        model_type = _read_u32(f, "model type")
        n_widths = _read_u32(f, "width count")
        widths = struct.unpack(
            f"<{n_widths}I", _read_exact(f, 4 * n_widths, "widths")
        )

        if model_type == _MLP:
            weights, biases = [], []
            for fan_in, fan_out in zip(widths[:-1], widths[1:]):
                weights.append(_read_array(f, (fan_in, fan_out), "weight matrix"))
                biases.append(_read_array(f, (fan_out,), "bias vector"))
            return MlpModel(
                weights=weights, biases=biases, config=MlpConfig(layer_widths=widths)
            )
        if model_type == _DBN:
            rbms = []
            for visible, hidden in zip(widths[:-1], widths[1:]):
                w = _read_array(f, (hidden, visible), "rbm weights")
                vb = _read_array(f, (visible,), "visible bias")
                hb = _read_array(f, (hidden,), "hidden bias")
                rbms.append(RbmParams(weights=w, visible_bias=vb, hidden_bias=hb))
            return DbnModel(rbms=rbms)
        raise UnsupportedVersion(f"unknown model type {model_type}")


def model_kind(path) -> str:
    """Peek at a checkpoint's model type: "mlp" or "dbn"."""
    with open(path, "rb") as f:
        magic = _read_exact(f, 4, "magic")
        if magic != MAGIC:
            raise BadMagic(f"expected {MAGIC!r}, found {magic!r}")
        version = _read_u32(f, "version")
        if version != VERSION:
            raise UnsupportedVersion(f"container version {version} not supported")
        return "mlp" if _read_u32(f, "model type") == _MLP else "dbn"
