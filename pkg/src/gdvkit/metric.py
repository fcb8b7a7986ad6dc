"""Generalized discrimination value (GDV).

The GDV quantifies how well labeled point clusters separate in a space of
arbitrary dimension. Each coordinate is z-scored and halved, mean pairwise
Euclidean distances are taken within each class and between each class pair,
and the normalized difference

    gdv = (1/sqrt(D')) * [ mean_l intra(l)  -  mean_{l<m} inter(l, m) ]

is returned, where D' counts the non-constant coordinates. Perfectly merged
clusters (or shuffled labels) give values near 0; two point-like clusters
give exactly -1. More negative means better separated.

All functions here are pure and deterministic: safe to call concurrently on
shared datasets, with pair sums taken in a fixed canonical order (sorted
class ids, row-major point pairs).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist, pdist

from .dataset import LabeledDataset
from .errors import (
    AllDimensionsConstant,
    ClassTooSmall,
    EmptyClass,
    GdvError,
    LabelMismatch,
    SingleClass,
    ValidationError,
)

SUPPORTED_METRICS = ("euclidean",)


@dataclass
class ScaledDataset:
    """Half-z-scored coordinates plus the bookkeeping of dropped dimensions.

    Each kept dimension of ``points`` has empirical mean 0 and population
    standard deviation 1/2. Dimensions whose input variance is exactly zero
    are removed and listed in ``dropped_dims``.
    """

    points: np.ndarray
    kept_dims: np.ndarray
    dropped_dims: np.ndarray
    per_dim_mean: np.ndarray
    per_dim_std: np.ndarray

    @property
    def effective_dim(self) -> int:
        return int(self.kept_dims.size)


@dataclass
class GdvReport:
    """A GDV value together with every intermediate class statistic."""

    gdv: float
    intra: dict[int, float]
    inter: dict[tuple[int, int], float]
    class_counts: dict[int, int]
    effective_dim: int
    n_classes: int
    metric_name: str = "euclidean"


@dataclass
class GdvCurve:
    """GDV per network layer; ``None`` marks a layer that could not be scored."""

    layer_ids: list[str]
    values: list[float | None] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.layer_ids)

    def to_array(self) -> np.ndarray:
        """Values as float array with NaN at missing layers."""
        return np.array(
            [np.nan if v is None else v for v in self.values], dtype=np.float64
        )


def z_score_half(data: LabeledDataset) -> ScaledDataset:
    """Standardize each dimension to mean 0, std 1/2 (population convention).

    Constant dimensions carry no class information and would divide by zero;
    they are dropped and recorded so the caller can use the reduced dimension
    count. Point order is preserved.

    Raises
    ------
    AllDimensionsConstant
        If every dimension has zero variance.
    """
    x = data.points
    mu = x.mean(axis=0)
    sigma = x.std(axis=0)  # population: divide by N
    kept = np.flatnonzero(sigma > 0.0)
    dropped = np.flatnonzero(sigma == 0.0)
    if kept.size == 0:
        raise AllDimensionsConstant(
            f"all {x.shape[1]} dimensions are constant; cannot standardize"
        )
    scaled = 0.5 * (x[:, kept] - mu[kept]) / sigma[kept]
    return ScaledDataset(
        points=scaled,
        kept_dims=kept,
        dropped_dims=dropped,
        per_dim_mean=mu,
        per_dim_std=sigma,
    )


def _check_metric(metric: str) -> None:
    if metric not in SUPPORTED_METRICS:
        raise ValidationError(
            f"unsupported metric {metric!r}; available: {SUPPORTED_METRICS}"
        )


def mean_intra_class_distance(scaled: ScaledDataset, members, metric: str = "euclidean") -> float:
    """Mean pairwise distance among the points indexed by ``members``.

    Averages d(s_i, s_j) over the N_l*(N_l-1)/2 unordered pairs of one class.

    Raises
    ------
    ClassTooSmall
        If fewer than two member indices are given.
    """
    _check_metric(metric)
    members = np.asarray(members)
    if members.size < 2:
        raise ClassTooSmall(
            f"need at least 2 points for an intra-class distance, got {members.size}"
        )
    return float(pdist(scaled.points[members], metric).mean())


def mean_inter_class_distance(
    scaled: ScaledDataset, members_l, members_m, metric: str = "euclidean"
) -> float:
    """Mean distance over all N_l * N_m cross pairs of two disjoint classes.

    Raises
    ------
    EmptyClass
        If either index set is empty.
    """
    _check_metric(metric)
    members_l = np.asarray(members_l)
    members_m = np.asarray(members_m)
    if members_l.size == 0 or members_m.size == 0:
        raise EmptyClass("both classes must be non-empty")
    if np.intersect1d(members_l, members_m).size:
        raise ValidationError("inter-class index sets must be disjoint")
    return float(cdist(scaled.points[members_l], scaled.points[members_m], metric).mean())


def combine_distances(
    intra: dict[int, float], inter: dict[tuple[int, int], float], effective_dim: int
) -> float:
    """Fold per-class statistics into the scalar discrimination value."""
    n_classes = len(intra)
    mean_intra = sum(intra.values()) / n_classes
    mean_inter = 2.0 * sum(inter.values()) / (n_classes * (n_classes - 1))
    return (mean_intra - mean_inter) / np.sqrt(effective_dim)


def gdv(data: LabeledDataset, metric: str = "euclidean") -> GdvReport:
    """Compute the generalized discrimination value of a labeled point set.

    Parameters
    ----------
    data : LabeledDataset
        At least two distinct classes, each with at least two points.
    metric : str
        Distance metric name; only ``"euclidean"`` is implemented.

    Returns
    -------
    GdvReport
        The scalar value plus all intra/inter class means, class counts and
        the effective (non-constant) dimension count.

    Raises
    ------
    SingleClass
        Fewer than two distinct labels.
    ClassTooSmall
        Some class has fewer than two points.
    AllDimensionsConstant
        Every coordinate is constant.
    """
    _check_metric(metric)
    classes = data.classes
    if classes.size < 2:
        raise SingleClass(f"need at least 2 distinct labels, got {classes.size}")
    counts = {int(c): int(np.count_nonzero(data.labels == c)) for c in classes}
    for c, n in counts.items():
        if n < 2:
            raise ClassTooSmall(f"class {c} has {n} point(s); need at least 2")

    scaled = z_score_half(data)
    index_sets = {int(c): data.class_indices(int(c)) for c in classes}

    intra = {
        c: mean_intra_class_distance(scaled, idx, metric)
        for c, idx in index_sets.items()
    }
    inter: dict[tuple[int, int], float] = {}
    cls = [int(c) for c in classes]
    for i, l in enumerate(cls):
        for m in cls[i + 1 :]:
            inter[(l, m)] = mean_inter_class_distance(
                scaled, index_sets[l], index_sets[m], metric
            )

    value = combine_distances(intra, inter, scaled.effective_dim)
    return GdvReport(
        gdv=float(value),
        intra=intra,
        inter=inter,
        class_counts=counts,
        effective_dim=scaled.effective_dim,
        n_classes=len(cls),
        metric_name=metric,
    )


def gdv_curve(layers, metric: str = "euclidean") -> GdvCurve:
    """GDV per layer for an ordered list of ``(layer_id, dataset)`` pairs.

    All datasets must carry the identical label vector. A layer whose GDV is
    undefined (for example dead, constant activations) contributes a missing
    value instead of aborting the whole curve.

    Raises
    ------
    LabelMismatch
        If the label vectors differ between layers.
    ValidationError
        If the layer list is empty.
    """
    entries = list(layers)
    if not entries:
        raise ValidationError("layer list must not be empty")
    ref_labels = entries[0][1].labels
    for layer_id, ds in entries[1:]:
        if not np.array_equal(ds.labels, ref_labels):
            raise LabelMismatch(f"layer {layer_id!r} has a different label vector")

    curve = GdvCurve(layer_ids=[str(lid) for lid, _ in entries])
    for _, ds in entries:
        try:
            curve.values.append(gdv(ds, metric).gdv)
        except GdvError:
            curve.values.append(None)
    return curve
