"""Report and figure emission: JSON reports, curve CSVs, self-contained SVGs."""

from __future__ import annotations

import csv
import json

import numpy as np

from ..metric import GdvCurve, GdvReport

REPORT_SCHEMA = "gdv-report/1"

# Categorical 10-color palette for class scatter/line plots.
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def write_report_json(path, report: GdvReport) -> None:
    """One GDV report as versioned JSON; inter-class keys look like "0-1"."""
    doc = {
        "schema": REPORT_SCHEMA,
        "gdv": report.gdv,
        "metric": report.metric_name,
        "n_classes": report.n_classes,
        "effective_dim": report.effective_dim,
        "class_counts": {str(k): v for k, v in report.class_counts.items()},
        "intra": {str(k): v for k, v in report.intra.items()},
        "inter": {f"{l}-{m}": v for (l, m), v in report.inter.items()},
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


def read_report_json(path) -> dict:
    """Parse a report written by :func:`write_report_json`."""
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def write_curve_csv(path, curve: GdvCurve) -> None:
    """Layer curve as CSV (layer_index, layer_id, gdv, missing_flag)."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["layer_index", "layer_id", "gdv", "missing_flag"])
        for i, (layer_id, value) in enumerate(zip(curve.layer_ids, curve.values)):
            if value is None:
                writer.writerow([i, layer_id, "", 1])
            else:
                writer.writerow([i, layer_id, f"{value:.17g}", 0])


def _svg_header(width: int, height: int, title: str | None) -> list[str]:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>'
        )
    return parts


def _data_to_pixel(values, lo, hi, pix_lo, pix_hi):
    span = hi - lo if hi > lo else 1.0
    return pix_lo + (np.asarray(values) - lo) / span * (pix_hi - pix_lo)


def write_svg_scatter(path, coords, labels, class_names=None, title=None) -> None:
    """Class-colored 2-D scatter; exactly one circle per point.

    ``coords`` may be an (N, 2) array or anything with a ``coords``
    attribute (a projection result). Legend entries use squares so circles
    count points one-to-one.
    """
    coords = np.asarray(getattr(coords, "coords", coords), dtype=float)
    labels = np.asarray(labels)
    width, height, margin = 640, 480, 40
    x = _data_to_pixel(coords[:, 0], coords[:, 0].min(), coords[:, 0].max(),
                       margin, width - margin)
    y = _data_to_pixel(coords[:, 1], coords[:, 1].min(), coords[:, 1].max(),
                       height - margin, margin)

    classes = [int(c) for c in np.unique(labels)]
    color = {c: PALETTE[i % len(PALETTE)] for i, c in enumerate(classes)}
    parts = _svg_header(width, height, title)
    for xi, yi, li in zip(x, y, labels):
        parts.append(
            f'<circle cx="{xi:.2f}" cy="{yi:.2f}" r="3" fill="{color[int(li)]}" '
            f'fill-opacity="0.7"/>'
        )
    for i, c in enumerate(classes):
        ly = margin + 16 * i
        name = (class_names or {}).get(c, str(c))
        parts.append(f'<rect x="{width - 110}" y="{ly - 9}" width="10" height="10" '
                     f'fill="{color[c]}"/>')
        parts.append(f'<text x="{width - 95}" y="{ly}" font-family="sans-serif" '
                     f'font-size="12">{name}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(parts) + "\n")


def write_svg_lines(path, curves, title=None, y_label="gdv") -> None:
    """Line chart for one or more layer curves.

    ``curves`` is a list of ``(name, values)`` pairs where values may contain
    ``None`` gaps; gaps split the polyline.
    """
    width, height, margin = 640, 480, 50
    all_vals = [v for _, values in curves for v in values if v is not None]
    if not all_vals:
        raise ValueError("no finite values to plot")
    lo, hi = min(all_vals), max(all_vals)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    n_max = max(len(values) for _, values in curves)

    parts = _svg_header(width, height, title)
    # axes
    parts.append(f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
                 f'y2="{height - margin}" stroke="black"/>')
    parts.append(f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
                 f'y2="{height - margin}" stroke="black"/>')
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        val = lo + frac * (hi - lo)
        py = _data_to_pixel([val], lo, hi, height - margin, margin)[0]
        parts.append(f'<text x="{margin - 6}" y="{py + 4:.1f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="10">{val:.3f}</text>')
        parts.append(f'<line x1="{margin - 4}" y1="{py:.1f}" x2="{margin}" '
                     f'y2="{py:.1f}" stroke="black"/>')
    stride = max(1, n_max // 16)
    for i in range(0, n_max, stride):
        px = _data_to_pixel([i], 0, max(n_max - 1, 1), margin, width - margin)[0]
        parts.append(f'<text x="{px:.1f}" y="{height - margin + 16}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="10">{i}</text>')
    parts.append(f'<text x="14" y="{height / 2:.0f}" font-family="sans-serif" '
                 f'font-size="12" transform="rotate(-90 14 {height / 2:.0f})" '
                 f'text-anchor="middle">{y_label}</text>')

    for ci, (name, values) in enumerate(curves):
        col = PALETTE[ci % len(PALETTE)]
        segment: list[str] = []
        for i, v in enumerate(values):
            if v is None:
                if len(segment) > 1:
                    parts.append(f'<polyline points="{" ".join(segment)}" fill="none" '
                                 f'stroke="{col}" stroke-width="2"/>')
                segment = []
                continue
            px = _data_to_pixel([i], 0, max(n_max - 1, 1), margin, width - margin)[0]
            py = _data_to_pixel([v], lo, hi, height - margin, margin)[0]
            segment.append(f"{px:.2f},{py:.2f}")
        if len(segment) > 1:
            parts.append(f'<polyline points="{" ".join(segment)}" fill="none" '
                         f'stroke="{col}" stroke-width="2"/>')
        ly = margin + 16 * ci
        parts.append(f'<rect x="{width - 150}" y="{ly - 9}" width="10" height="10" '
                     f'fill="{col}"/>')
        parts.append(f'<text x="{width - 135}" y="{ly}" font-family="sans-serif" '
                     f'font-size="12">{name}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(parts) + "\n")
