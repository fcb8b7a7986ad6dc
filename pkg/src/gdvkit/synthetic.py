"""Seeded generators for Gaussian cluster datasets.

Covers the two-cluster validation cases, dimension-embedding helpers, and a
randomized ensemble of small cluster datasets with widely varying dimension,
class count, class size and spread.

Reproducibility: all sampling uses numpy's PCG64 generator; normal draws go
through ``Generator.normal`` (ziggurat), whose stream for a fixed seed is
stable across numpy releases. Ensemble member ``k`` is drawn from
``default_rng(SeedSequence((seed, k)))``, so any member can be regenerated
without producing its predecessors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .dataset import LabeledDataset
from .errors import InvalidSpec, WrongDimension
from .metric import gdv


@dataclass
class ClusterSpec:
    """Gaussian mixture description: one center per class, diagonal spread.

    ``sigmas`` may be a scalar (shared by all classes and dimensions), a
    length-D vector (shared by all classes), or a K x D matrix (per class).
    ``points_per_class`` may be one count for all classes or one per class.
    """

    centers: np.ndarray
    sigmas: float | np.ndarray
    points_per_class: int | list[int]
    seed: int = 0

    def __post_init__(self):
        self.centers = np.atleast_2d(np.asarray(self.centers, dtype=np.float64))
        k, d = self.centers.shape
        if k < 1 or d < 1:
            raise InvalidSpec(f"need K >= 1 centers with D >= 1, got shape {self.centers.shape}")
        sig = np.asarray(self.sigmas, dtype=np.float64)
        if sig.ndim == 0:
            sig = np.full((k, d), float(sig))
        elif sig.ndim == 1:
            if sig.shape[0] != d:
                raise InvalidSpec(f"per-dimension sigmas must have length {d}")
            sig = np.tile(sig, (k, 1))
        elif sig.shape != (k, d):
            raise InvalidSpec(f"sigmas must be scalar, ({d},) or ({k}, {d})")
        if np.any(sig < 0):
            raise InvalidSpec("sigmas must be non-negative")
        self.sigmas = sig
        counts = np.asarray(self.points_per_class)
        if counts.ndim == 0:
            counts = np.full(k, int(counts))
        if counts.shape != (k,) or np.any(counts < 1):
            raise InvalidSpec("points_per_class must be positive, one count per class")
        self.points_per_class = [int(n) for n in counts]

    @property
    def n_classes(self) -> int:
        return self.centers.shape[0]

    @property
    def n_dims(self) -> int:
        return self.centers.shape[1]


def generate_clusters(spec: ClusterSpec) -> LabeledDataset:
    """Sample the mixture: class k's points are N(center_k, diag(sigma_k^2)).

    Points appear class-by-class with labels 0..K-1; the same spec and seed
    always produce the bit-identical dataset.
    """
    rng = np.random.default_rng(spec.seed)
    blocks = [
        rng.normal(spec.centers[k], spec.sigmas[k], size=(n, spec.n_dims))
        for k, n in enumerate(spec.points_per_class)
    ]
    labels = np.repeat(np.arange(spec.n_classes), spec.points_per_class)
    return LabeledDataset(np.vstack(blocks), labels)


def two_cluster_spec(
    sigma: float, n_per_class: int = 500, seed: int = 42, centers=((0.0, 0.0), (1.0, 1.0))
) -> ClusterSpec:
    """The standard two-cluster validation configuration in 2-D."""
    return ClusterSpec(
        centers=np.asarray(centers), sigmas=sigma, points_per_class=n_per_class, seed=seed
    )


def embed_duplicate_y(data: LabeledDataset) -> LabeledDataset:
    """Map 2-D points (x, y) onto (x, y, y); labels unchanged."""
    if data.n_dims != 2:
        raise WrongDimension(f"expected 2-D input, got D={data.n_dims}")
    p = data.points
    return data.with_points(np.column_stack([p[:, 0], p[:, 1], p[:, 1]]))


def embed_replicate(data: LabeledDataset, target_dim: int) -> LabeledDataset:
    """Embed into ``target_dim`` dimensions by cycling the original columns.

    Column i of the output is column ``i mod D`` of the input, so multiples
    of D are exact whole-set duplications.
    """
    if target_dim < 1:
        raise WrongDimension("target_dim must be >= 1")
    cols = [data.points[:, i % data.n_dims] for i in range(target_dim)]
    return data.with_points(np.column_stack(cols))


@dataclass
class EnsembleConfig:
    """Randomized ensemble: each member draws its own shape parameters.

    Per member: dimension D and class count K uniform over their inclusive
    integer ranges; one point count per class uniform over ``points_range``;
    class centers uniform in ``center_range``^D; one standard deviation per
    class and dimension uniform over ``sigma_range``.
    """

    n_datasets: int
    dim_range: tuple[int, int] = (2, 10)
    class_range: tuple[int, int] = (2, 10)
    points_range: tuple[int, int] = (1, 100)
    center_range: tuple[float, float] = (0.0, 1.0)
    sigma_range: tuple[float, float] = (0.0, 1.0)
    seed: int = 0

    def __post_init__(self):
        if self.n_datasets < 1:
            raise InvalidSpec("n_datasets must be >= 1")
        for name, (lo, hi) in (
            ("dim_range", self.dim_range),
            ("class_range", self.class_range),
            ("points_range", self.points_range),
            ("center_range", self.center_range),
            ("sigma_range", self.sigma_range),
        ):
            if lo > hi:
                raise InvalidSpec(f"{name} is empty: {lo} > {hi}")
        if self.dim_range[0] < 1 or self.class_range[0] < 1 or self.points_range[0] < 1:
            raise InvalidSpec("dimension, class and point counts must be >= 1")
        if self.sigma_range[0] < 0:
            raise InvalidSpec("sigma_range must be non-negative")


@dataclass
class EnsembleItem:
    """One generated member plus its position and degeneracy flag.

    ``has_small_class`` marks members containing a class with fewer than two
    points, which have no defined GDV and are skipped by downstream stages.
    """

    index: int
    data: LabeledDataset
    has_small_class: bool


def _member_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=(seed, index)))


def generate_ensemble(cfg: EnsembleConfig) -> Iterator[EnsembleItem]:
    """Yield the ensemble members in index order.

    Draw order per member is fixed: D, K, per-class counts, centers (K x D),
    sigmas (K x D), then the Gaussian samples class by class.
    """
    for k in range(cfg.n_datasets):
        rng = _member_rng(cfg.seed, k)
        d = int(rng.integers(cfg.dim_range[0], cfg.dim_range[1] + 1))
        n_cls = int(rng.integers(cfg.class_range[0], cfg.class_range[1] + 1))
        counts = rng.integers(cfg.points_range[0], cfg.points_range[1] + 1, size=n_cls)
        centers = rng.uniform(cfg.center_range[0], cfg.center_range[1], size=(n_cls, d))
        sigmas = rng.uniform(cfg.sigma_range[0], cfg.sigma_range[1], size=(n_cls, d))
        blocks = [
            rng.normal(centers[c], sigmas[c], size=(counts[c], d)) for c in range(n_cls)
        ]
        data = LabeledDataset(np.vstack(blocks), np.repeat(np.arange(n_cls), counts))
        yield EnsembleItem(index=k, data=data, has_small_class=bool(counts.min() < 2))


def two_cluster_separation_probe(
    ratio: float = 2.0,
    dim: int = 2,
    n_per_class: int = 2000,
    seed: int = 0,
    mode: str = "center",
) -> float:
    """GDV of two isotropic Gaussian clusters at a prescribed separation.

    ``mode="center"`` places the centers ``ratio * sigma`` apart;
    ``mode="pairwise"`` instead searches for the center gap at which the
    empirical mean pairwise inter-cluster distance equals ``ratio * sigma``.
    Useful for measuring what value the metric actually takes at a given
    separation rather than assuming one.
    """
    if mode not in ("center", "pairwise"):
        raise InvalidSpec(f"unknown probe mode {mode!r}")
    sigma = 1.0
    rng = np.random.default_rng(seed)
    a = rng.normal(0.0, sigma, size=(n_per_class, dim))
    b = rng.normal(0.0, sigma, size=(n_per_class, dim))

    def dataset(gap: float) -> LabeledDataset:
        offset = np.zeros(dim)
        offset[0] = gap
        pts = np.vstack([a, b + offset])
        labels = np.repeat([0, 1], n_per_class)
        return LabeledDataset(pts, labels)

    if mode == "center":
        return gdv(dataset(ratio * sigma)).gdv

    def mean_inter(gap: float) -> float:
        off = np.zeros(dim)
        off[0] = gap
        diff = a[:, None, :] - (b[None, :, :] + off)
        return float(np.sqrt((diff**2).sum(axis=2)).mean())

    target = ratio * sigma
    if mean_inter(0.0) >= target:
        raise InvalidSpec(
            f"mean pairwise distance at zero gap already exceeds {target}; "
            f"ratio {ratio} is unreachable in dimension {dim}"
        )
    lo, hi = 0.0, target
    while mean_inter(hi) < target:
        hi *= 2.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if mean_inter(mid) < target:
            lo = mid
        else:
            hi = mid
    return gdv(dataset(0.5 * (lo + hi))).gdv
