"""Labeled point sets: the common currency of every operation in the toolkit."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError


@dataclass
class LabeledDataset:
    """N points in D dimensions, each assigned to an integer class.

    Parameters
    ----------
    points : array_like, shape (N, D)
        Coordinates; coerced to float64. Every entry must be finite.
    labels : array_like, shape (N,)
        Non-negative integer class ids, one per point.
    class_names : dict, optional
        Display names keyed by class id. Purely cosmetic.
    """

    points: np.ndarray
    labels: np.ndarray
    class_names: dict[int, str] | None = field(default=None)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64)
        if self.points.ndim == 1:
            self.points = self.points.reshape(-1, 1)
        if self.points.ndim != 2 or self.points.shape[0] < 1 or self.points.shape[1] < 1:
            raise ValidationError(
                f"points must be a non-empty 2-D array, got shape {self.points.shape}"
            )
        if not np.all(np.isfinite(self.points)):
            raise ValidationError("points contain NaN or infinite entries")
        self.labels = np.asarray(self.labels)
        if self.labels.ndim != 1 or self.labels.shape[0] != self.points.shape[0]:
            raise ValidationError(
                f"labels must be 1-D of length {self.points.shape[0]}, "
                f"got shape {self.labels.shape}"
            )
        if not np.issubdtype(self.labels.dtype, np.integer):
            rounded = np.asarray(self.labels, dtype=np.float64)
            if not np.all(rounded == np.floor(rounded)):
                raise ValidationError("labels must be integers")
            self.labels = rounded.astype(np.int64)
        else:
            self.labels = self.labels.astype(np.int64)
        if np.any(self.labels < 0):
            raise ValidationError("labels must be non-negative")

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def n_dims(self) -> int:
        return self.points.shape[1]

    @property
    def classes(self) -> np.ndarray:
        """Sorted distinct class ids."""
        return np.unique(self.labels)

    def class_indices(self, label: int) -> np.ndarray:
        """Row indices of all points carrying ``label``."""
        return np.flatnonzero(self.labels == label)

    def subset(self, rows) -> "LabeledDataset":
        """New dataset restricted to the given row indices (order kept)."""
        rows = np.asarray(rows)
        return LabeledDataset(self.points[rows], self.labels[rows], self.class_names)

    def with_points(self, points) -> "LabeledDataset":
        """New dataset with replaced coordinates and the same labels."""
        return LabeledDataset(points, self.labels.copy(), self.class_names)
