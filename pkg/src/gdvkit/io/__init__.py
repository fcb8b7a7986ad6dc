"""File formats: labeled CSV, IDX image files, activation archives, reports."""

from .csvio import load_labeled_csv, save_labeled_csv
from .idx import load_idx_images, load_idx_labels, load_idx_pair
from .archive import ActivationArchive, read_activation_archive, write_activation_archive
from .reports import (
    write_curve_csv,
    write_report_json,
    write_svg_lines,
    write_svg_scatter,
)

__all__ = [
    "load_labeled_csv",
    "save_labeled_csv",
    "load_idx_images",
    "load_idx_labels",
    "load_idx_pair",
    "ActivationArchive",
    "read_activation_archive",
    "write_activation_archive",
    "write_curve_csv",
    "write_report_json",
    "write_svg_lines",
    "write_svg_scatter",
]
