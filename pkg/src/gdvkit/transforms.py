"""Random coordinate transformations and their effect on the GDV.

The named transform kinds model untrained network layers: a random weight
matrix, optionally followed by an element-wise logistic squashing, applied to
standardized coordinates. Standardizing first (the metric's own half-z
scaling) is what makes the pure scale-and-squash variant push points toward
the hypercube corners instead of saturating them all against 1; it is part of
the transform definition here and is required to reproduce the reference
statistics of the ensemble experiments.

``apply_linear`` is the raw building block: it multiplies the stored
coordinates by a caller-supplied matrix with no standardization, so an
identity matrix returns the dataset unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from .dataset import LabeledDataset
from .errors import InvalidSpec
from .metric import gdv, z_score_half
from .synthetic import EnsembleConfig, generate_ensemble

TRANSFORM_KINDS = (
    "random_linear",
    "random_linear_logistic",
    "random_linear_double_dim",
    "random_linear_double_dim_logistic",
    "scale_logistic",
)

HIST_RANGE = (-0.15, 0.15)
HIST_BINS = 61

# Sub-stream tag separating transform draws from dataset draws for one index.
_TRANSFORM_STREAM = 1


@dataclass
class TransformSpec:
    """One named random transformation.

    ``seed`` may be an int or a tuple of ints (numpy seed entropy); the same
    spec always draws the same matrix.
    """

    kind: str
    element_range: tuple[float, float] = (-10.0, 10.0)
    scale_factor: float = 10.0
    seed: int | tuple[int, ...] = 0

    def __post_init__(self):
        if self.kind not in TRANSFORM_KINDS:
            raise InvalidSpec(f"unknown transform kind {self.kind!r}")
        lo, hi = self.element_range
        if not lo < hi:
            raise InvalidSpec(f"element_range must satisfy low < high, got ({lo}, {hi})")


@dataclass
class DeltaGdvStats:
    """Aggregate of GDV changes over an ensemble under one transform kind."""

    kind: str
    mean_before: float
    mean_delta: float
    hist_counts: np.ndarray
    bin_edges: np.ndarray
    n_valid: int
    n_skipped: int
    deltas: np.ndarray = field(repr=False, default_factory=lambda: np.empty(0))


def logistic(x: np.ndarray) -> np.ndarray:
    """Element-wise 1 / (1 + exp(-x))."""
    return expit(x)


def apply_linear(
    data: LabeledDataset, matrix: np.ndarray, logistic_after: bool = False
) -> LabeledDataset:
    """points <- matrix . point for every point, optionally squashed.

    No standardization is performed, so ``matrix = I`` with
    ``logistic_after=False`` reproduces the input exactly.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != data.n_dims:
        raise InvalidSpec(
            f"matrix must have {data.n_dims} columns, got shape {matrix.shape}"
        )
    out = data.points @ matrix.T
    if logistic_after:
        out = logistic(out)
    return data.with_points(out)


def apply_transform(data: LabeledDataset, spec: TransformSpec) -> LabeledDataset:
    """Apply one named random transformation to standardized coordinates.

    The coordinates are first half-z-scored (constant dimensions dropped,
    giving D' live dimensions), then transformed per ``spec.kind``:

    - ``random_linear``: A s with A of shape D' x D', entries uniform over
      ``element_range``;
    - ``random_linear_logistic``: logistic(A s);
    - ``random_linear_double_dim[/_logistic]``: same with A of shape 2D' x D';
    - ``scale_logistic``: logistic(scale_factor * s), no matrix.

    A fresh matrix is drawn on every call, deterministically from
    ``spec.seed``. Labels are never altered.
    """
    s = z_score_half(data).points
    d = s.shape[1]
    rng = np.random.default_rng(np.random.SeedSequence(entropy=spec.seed))
    lo, hi = spec.element_range

    if spec.kind == "scale_logistic":
        out = logistic(spec.scale_factor * s)
    else:
        rows = 2 * d if "double_dim" in spec.kind else d
        a = rng.uniform(lo, hi, size=(rows, d))
        out = s @ a.T
        if spec.kind.endswith("logistic"):
            out = logistic(out)
    return data.with_points(out)


def ensemble_gdv_values(cfg: EnsembleConfig) -> tuple[np.ndarray, int]:
    """GDV of every valid ensemble member, plus the skipped-member count."""
    values = []
    skipped = 0
    for item in generate_ensemble(cfg):
        if item.has_small_class:
            skipped += 1
            continue
        values.append(gdv(item.data).gdv)
    return np.asarray(values), skipped


def _clamped_histogram(deltas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    edges = np.linspace(HIST_RANGE[0], HIST_RANGE[1], HIST_BINS + 1)
    clamped = np.clip(deltas, HIST_RANGE[0], HIST_RANGE[1])
    counts, _ = np.histogram(clamped, bins=edges)
    return counts, edges


def delta_gdv_experiment(
    cfg: EnsembleConfig, kind: str, n_datasets: int | None = None
) -> DeltaGdvStats:
    """GDV change before/after one fresh random transform per ensemble member.

    Members containing single-point classes are skipped and counted. The
    transform for member k is seeded with ``(cfg.seed, k, 1)``, independent of
    the member's own sample draws; outliers beyond +-0.15 are clamped into the
    histogram's edge bins.
    """
    if kind not in TRANSFORM_KINDS:
        raise InvalidSpec(f"unknown transform kind {kind!r}")
    if n_datasets is not None:
        cfg = EnsembleConfig(
            n_datasets=n_datasets,
            dim_range=cfg.dim_range,
            class_range=cfg.class_range,
            points_range=cfg.points_range,
            center_range=cfg.center_range,
            sigma_range=cfg.sigma_range,
            seed=cfg.seed,
        )
    before, deltas = [], []
    skipped = 0
    for item in generate_ensemble(cfg):
        if item.has_small_class:
            skipped += 1
            continue
        g0 = gdv(item.data).gdv
        spec = TransformSpec(kind=kind, seed=(cfg.seed, item.index, _TRANSFORM_STREAM))
        g1 = gdv(apply_transform(item.data, spec)).gdv
        before.append(g0)
        deltas.append(g1 - g0)

    deltas = np.asarray(deltas)
    counts, edges = _clamped_histogram(deltas)
    return DeltaGdvStats(
        kind=kind,
        mean_before=float(np.mean(before)) if before else float("nan"),
        mean_delta=float(deltas.mean()) if deltas.size else float("nan"),
        hist_counts=counts,
        bin_edges=edges,
        n_valid=int(deltas.size),
        n_skipped=skipped,
        deltas=deltas,
    )


def histogram_total_variation(stats_a: DeltaGdvStats, stats_b: DeltaGdvStats) -> float:
    """Total-variation distance between two normalized delta histograms."""
    p = stats_a.hist_counts / max(stats_a.n_valid, 1)
    q = stats_b.hist_counts / max(stats_b.n_valid, 1)
    return 0.5 * float(np.abs(p - q).sum())
