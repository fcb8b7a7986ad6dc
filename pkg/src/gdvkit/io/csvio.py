"""Labeled datasets as CSV: numeric feature columns plus a trailing 'label'."""

from __future__ import annotations

import csv
import math

import numpy as np

from ..dataset import LabeledDataset
from ..errors import MissingLabelColumn, NonFiniteValue, ParseError


def load_labeled_csv(path) -> LabeledDataset:
    """Read a UTF-8 CSV with a header row whose final column is 'label'.

    Feature cells must parse as finite floats, labels as non-negative
    integers. Row/column positions in error messages are 1-based file
    coordinates (the header is line 1).
    """
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file") from None
        if not header or header[-1].strip() != "label":
            raise MissingLabelColumn("final CSV column must be named 'label'")
        n_features = len(header) - 1
        if n_features < 1:
            raise ParseError("need at least one feature column before 'label'")

        points, labels = [], []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"row {line_no}: expected {len(header)} cells, found {len(row)}"
                )
            values = []
            for col, cell in enumerate(row[:-1], start=1):
                try:
                    v = float(cell)
                except ValueError:
                    raise ParseError(
                        f"row {line_no}, column {col}: cannot parse {cell!r} as a number"
                    ) from None
                if not math.isfinite(v):
                    raise NonFiniteValue(
                        f"row {line_no}, column {col}: non-finite value {cell!r}"
                    )
                values.append(v)
            try:
                label = int(row[-1])
            except ValueError:
                raise ParseError(
                    f"row {line_no}, column {len(header)}: label {row[-1]!r} is not an integer"
                ) from None
            if label < 0:
                raise ParseError(f"row {line_no}: label must be non-negative, got {label}")
            points.append(values)
            labels.append(label)

    if not points:
        raise ParseError("file contains a header but no data rows")
    return LabeledDataset(np.asarray(points), np.asarray(labels))


def save_labeled_csv(path, data: LabeledDataset) -> None:
    """Write a dataset in the format :func:`load_labeled_csv` reads.

    Floats are emitted with 17 significant digits, enough for an exact
    float64 round trip.
    """
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow([f"x{i}" for i in range(data.n_dims)] + ["label"])
        for row, label in zip(data.points, data.labels):
            writer.writerow([f"{v:.17g}" for v in row] + [int(label)])
