"""Procedural 28x28 digit images for self-contained experiments.

Standard handwritten-digit files are not always on hand, so this module
rasterizes each digit from a small set of strokes (segments and circular
arcs) with per-image random affine jitter, stroke-width variation and pixel
noise. The result is a labeled image set with the qualitative structure the
layer-probing experiments need: clearly learnable classes, with rounded
digits (4, 7, 9 share long diagonals; 0, 1, 6 are mutually distinct).

Glyphs live in the unit square with y pointing down; rasterization uses the
exact distance to each stroke with a half-pixel anti-aliasing ramp.
"""

from __future__ import annotations

import numpy as np

from .dataset import LabeledDataset
from .errors import InvalidSpec

# (kind, parameters): segments as (x1, y1, x2, y2); arcs as
# (cx, cy, radius, theta_start, theta_end) with theta in image coordinates
# (0 = +x, pi/2 = +y downward), swept from start to end.
_PI = np.pi
_GLYPHS: dict[int, list[tuple]] = {
    0: [("arc", 0.50, 0.50, 0.26, -_PI, _PI)],
    1: [("seg", 0.52, 0.12, 0.52, 0.88), ("seg", 0.38, 0.28, 0.52, 0.12)],
    2: [
        ("arc", 0.50, 0.34, 0.18, -_PI, 0.30),
        ("seg", 0.67, 0.40, 0.32, 0.80),
        ("seg", 0.32, 0.80, 0.70, 0.80),
    ],
    3: [
        ("arc", 0.48, 0.33, 0.17, -2.40, 1.45),
        ("arc", 0.48, 0.67, 0.18, -1.45, 2.40),
    ],
    4: [
        ("seg", 0.58, 0.12, 0.30, 0.58),
        ("seg", 0.30, 0.58, 0.74, 0.58),
        ("seg", 0.62, 0.32, 0.62, 0.88),
    ],
    5: [
        ("seg", 0.68, 0.14, 0.36, 0.14),
        ("seg", 0.36, 0.14, 0.34, 0.44),
        ("arc", 0.47, 0.64, 0.20, -1.85, 1.85),
    ],
    6: [
        ("seg", 0.60, 0.12, 0.43, 0.46),
        ("arc", 0.48, 0.66, 0.18, -_PI, _PI),
    ],
    7: [("seg", 0.30, 0.16, 0.72, 0.16), ("seg", 0.72, 0.16, 0.44, 0.86)],
    8: [
        ("arc", 0.50, 0.32, 0.14, -_PI, _PI),
        ("arc", 0.50, 0.68, 0.17, -_PI, _PI),
    ],
    9: [
        ("arc", 0.52, 0.34, 0.16, -_PI, _PI),
        ("seg", 0.68, 0.36, 0.58, 0.86),
    ],
}


def _segment_distance(px, py, x1, y1, x2, y2):
    vx, vy = x2 - x1, y2 - y1
    seg_len2 = vx * vx + vy * vy
    if seg_len2 == 0.0:
        return np.hypot(px - x1, py - y1)
    t = np.clip(((px - x1) * vx + (py - y1) * vy) / seg_len2, 0.0, 1.0)
    return np.hypot(px - (x1 + t * vx), py - (y1 + t * vy))


def _arc_distance(px, py, cx, cy, r, t0, t1):
    dx, dy = px - cx, py - cy
    rad = np.hypot(dx, dy)
    if t1 - t0 >= 2 * _PI - 1e-9:
        return np.abs(rad - r)
    phi = np.arctan2(dy, dx)
    rel = np.mod(phi - t0, 2 * _PI)
    on_arc = rel <= (t1 - t0)
    d_ring = np.abs(rad - r)
    e0 = np.hypot(px - (cx + r * np.cos(t0)), py - (cy + r * np.sin(t0)))
    e1 = np.hypot(px - (cx + r * np.cos(t1)), py - (cy + r * np.sin(t1)))
    return np.where(on_arc, d_ring, np.minimum(e0, e1))


def render_digit(
    digit: int,
    rng: np.random.Generator | None = None,
    size: int = 28,
    jitter: bool = True,
    noise: float = 0.05,
) -> np.ndarray:
    """One digit image in [0, 1], optionally with random distortions."""
    if digit not in _GLYPHS:
        raise InvalidSpec(f"no glyph for digit {digit!r}")
    if rng is None:
        rng = np.random.default_rng(0)

    if jitter:
        angle = rng.uniform(-0.20, 0.20)
        scale_x = rng.uniform(0.85, 1.15)
        scale_y = rng.uniform(0.85, 1.15)
        shift = rng.uniform(-0.07, 0.07, size=2)
        width = rng.uniform(0.045, 0.075)
    else:
        angle, scale_x, scale_y, shift, width = 0.0, 1.0, 1.0, np.zeros(2), 0.06

    # Map pixel centers back into glyph space (inverse affine around 0.5).
    grid = (np.arange(size) + 0.5) / size
    px, py = np.meshgrid(grid, grid)
    cx, cy = px - 0.5 - shift[0], py - 0.5 - shift[1]
    cos_a, sin_a = np.cos(-angle), np.sin(-angle)
    gx = (cos_a * cx - sin_a * cy) / scale_x + 0.5
    gy = (sin_a * cx + cos_a * cy) / scale_y + 0.5

    img = np.zeros((size, size))
    aa = 0.5 / size
    for stroke in _GLYPHS[digit]:
        if stroke[0] == "seg":
            d = _segment_distance(gx, gy, *stroke[1:])
        else:
            d = _arc_distance(gx, gy, *stroke[1:])
        intensity = np.clip((width - d) / aa + 0.5, 0.0, 1.0)
        img = np.maximum(img, intensity)

    if noise > 0.0:
        img = img + rng.normal(0.0, noise, size=img.shape)
    return np.clip(img, 0.0, 1.0)


def digit_dataset(
    n_per_class: int,
    classes=tuple(range(10)),
    seed: int = 0,
    size: int = 28,
    noise: float = 0.05,
) -> LabeledDataset:
    """Labeled set of flattened digit images, ``n_per_class`` each.

    Deterministic in ``seed``; image j of class c is drawn from the stream
    ``SeedSequence((seed, c, j))`` so subsets are reproducible independently.
    """
    if n_per_class < 1:
        raise InvalidSpec("n_per_class must be >= 1")
    classes = [int(c) for c in classes]
    images = np.empty((n_per_class * len(classes), size * size))
    labels = np.empty(n_per_class * len(classes), dtype=np.int64)
    row = 0
    for c in classes:
        for j in range(n_per_class):
            rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, c, j)))
            images[row] = render_digit(c, rng, size=size, noise=noise).ravel()
            labels[row] = c
            row += 1
    return LabeledDataset(images, labels)
