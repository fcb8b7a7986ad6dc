"""Classical (Torgerson) multidimensional scaling to two dimensions.

Double-centers the squared Euclidean distance matrix and extracts the top two
eigenpairs with deflated power iteration. Because the input is always an
actual point set, the centered Gram matrix is positive semi-definite and
power iteration on it is safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .dataset import LabeledDataset
from .errors import DegenerateSpectrum, TooFewPoints

EIG_TOL = 1e-10
EIG_MAX_ITER = 10_000


@dataclass
class Projection2D:
    """2-D coordinates, the two leading eigenvalues, and the residual stress.

    When the input was subsampled, ``sample_indices`` holds the rows of the
    original dataset that were projected (in their original order).
    """

    coords: np.ndarray
    eigenvalues: np.ndarray
    stress: float
    sample_indices: np.ndarray | None = None


def _power_iteration(b: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray]:
    """Dominant eigenpair of a symmetric PSD matrix, deterministic start.

    The start vector is drawn from a fixed-seed generator; the constant
    vector would sit exactly in the null space of a double-centered matrix.
    """
    n = b.shape[0]
    eigenvalue = 0.0
    for start_seed in range(4):
        v = np.random.default_rng(start_seed).normal(size=n)
        v /= np.linalg.norm(v)
        for _ in range(max_iter):
            y = b @ v
            eigenvalue = float(v @ y)
            residual = np.linalg.norm(y - eigenvalue * v)
            if residual <= tol * max(abs(eigenvalue), 1.0):
                return eigenvalue, v
            norm = np.linalg.norm(y)
            if norm == 0.0:
                break  # start vector annihilated; retry with a new one
            v = y / norm
        else:
            return eigenvalue, v
    return 0.0, v


def top_eigenpairs(
    b: np.ndarray, k: int = 2, tol: float = EIG_TOL, max_iter: int = EIG_MAX_ITER
) -> tuple[np.ndarray, np.ndarray]:
    """Leading k eigenpairs of a symmetric PSD matrix by power iteration.

    Returns eigenvalues (descending) and the matching unit eigenvectors as
    columns. Each converged pair satisfies |B v - lambda v| <= tol * lambda.
    """
    b = b.copy()
    values = np.empty(k)
    vectors = np.empty((b.shape[0], k))
    for i in range(k):
        lam, v = _power_iteration(b, tol, max_iter)
        values[i] = lam
        vectors[:, i] = v
        b -= lam * np.outer(v, v)
    return values, vectors


def _fix_sign(v: np.ndarray) -> np.ndarray:
    """Flip so the first non-negligible coordinate is positive."""
    scale = np.max(np.abs(v))
    if scale == 0.0:
        return v
    idx = np.flatnonzero(np.abs(v) > 1e-12 * scale)
    if idx.size and v[idx[0]] < 0:
        return -v
    return v


def mds_project(
    data: LabeledDataset, max_points: int = 3000, seed: int = 0
) -> Projection2D:
    """Project a labeled point set to 2-D by classical MDS.

    For more than ``max_points`` rows a seeded uniform subsample is projected
    instead (quadratic memory in N); the chosen row indices are reported.

    Raises
    ------
    TooFewPoints
        Fewer than 3 points.
    DegenerateSpectrum
        All points coincide (no positive eigenvalue).
    """
    if data.n_points < 3:
        raise TooFewPoints(f"need at least 3 points, got {data.n_points}")

    sample_indices = None
    points = data.points
    if data.n_points > max_points:
        rng = np.random.default_rng(seed)
        sample_indices = np.sort(
            rng.choice(data.n_points, size=max_points, replace=False)
        )
        points = points[sample_indices]

    n = points.shape[0]
    d2 = squareform(pdist(points, "sqeuclidean"))
    row_mean = d2.mean(axis=1, keepdims=True)
    grand_mean = d2.mean()
    b = -0.5 * (d2 - row_mean - row_mean.T + grand_mean)

    values, vectors = top_eigenpairs(b, k=2)
    if values[0] <= 0.0:
        raise DegenerateSpectrum("all points coincide; spectrum has no positive part")

    coords = np.zeros((n, 2))
    for i in range(2):
        if values[i] > 0.0:
            coords[:, i] = _fix_sign(vectors[:, i]) * np.sqrt(values[i])

    orig = np.sqrt(squareform(d2, checks=False))
    fitted = pdist(coords)
    denom = max(float(np.sum(orig**2)), 1e-300)
    stress = float(np.sqrt(np.sum((orig - fitted) ** 2) / denom))
    return Projection2D(
        coords=coords,
        eigenvalues=values,
        stress=stress,
        sample_indices=sample_indices,
    )
