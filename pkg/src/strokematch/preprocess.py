"""Preprocessing chain applied identically to templates and inputs.

interpolate -> normalize to the target grid -> re-interpolate -> extract
feature points. Four normalization methods are available; elongated
characters bypass them in favour of aspect-preserving linear scaling.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from . import kernels
from .model import Character, Stroke


class NormalizationMethod(Enum):
    LINEAR = "linear"
    MOMENT = "moment"
    DOT_DENSITY = "dot-density"
    LINE_DENSITY = "line-density"


@dataclass(frozen=True)
class PreprocessConfig:
    target_size: int = 256
    feature_spacing: float = 20.0
    aspect_guard_ratio: float = 3.0
    method: NormalizationMethod = NormalizationMethod.MOMENT
    alpha: int = 2  # dot-density smoothing constant
    moment_spread: float = 4.0  # multiples of the per-axis RMS spread

    def __post_init__(self) -> None:
        if self.target_size < 2:
            raise ValueError("target_size must be >= 2")
        if self.feature_spacing <= 0:
            raise ValueError("feature_spacing must be positive")
        if self.aspect_guard_ratio < 1:
            raise ValueError("aspect_guard_ratio must be >= 1")
        if self.alpha <= 0:
            raise ValueError("alpha must be a positive integer")


class Box(NamedTuple):
    x_min: int
    y_min: int
    w: int
    h: int


@dataclass(frozen=True)
class BinaryImage:
    """Bit grid in bounding-box coordinates, pixels[y, x] in {0, 1}."""

    pixels: np.ndarray

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def interpolate_stroke(s: Stroke) -> Stroke:
    """Insert all grid points between consecutive samples (8-connected)."""
    return Stroke.make(kernels.interpolate_polyline(s.array))


def interpolate_character(k: Character) -> Character:
    return Character(tuple(interpolate_stroke(s) for s in k.strokes))


def bounding_box(k: Character) -> Box:
    """Tightest pixel box over all points; degenerate extents count as 1."""
    arrays = [s.array for s in k.strokes]
    xs_min = min(int(a[:, 0].min()) for a in arrays)
    xs_max = max(int(a[:, 0].max()) for a in arrays)
    ys_min = min(int(a[:, 1].min()) for a in arrays)
    ys_max = max(int(a[:, 1].max()) for a in arrays)
    return Box(xs_min, ys_min, xs_max - xs_min + 1, ys_max - ys_min + 1)


def rasterize(k: Character, box: Box) -> BinaryImage:
    """Stamp every stroke point onto a box-sized grid (no thickening;
    interpolation already yields connected pixel chains)."""
    img = np.zeros((box.h, box.w), dtype=np.uint8)
    for stroke in k.strokes:
        arr = stroke.array
        img[arr[:, 1] - box.y_min, arr[:, 0] - box.x_min] = 1
    return BinaryImage(img)


def _round_half_away(values: np.ndarray) -> np.ndarray:
    # Deterministic rounding; numpy's round() would round half to even.
    return np.where(
        values >= 0, np.floor(values + 0.5), np.ceil(values - 0.5)
    ).astype(np.int64)


def _rebuild(k: Character, xs: np.ndarray, ys: np.ndarray, target: int) -> Character:
    xs = np.clip(xs, 0, target - 1)
    ys = np.clip(ys, 0, target - 1)
    strokes = []
    pos = 0
    for stroke in k.strokes:
        count = len(stroke)
        pts = np.stack([xs[pos:pos + count], ys[pos:pos + count]], axis=1)
        strokes.append(Stroke.make(pts))
        pos += count
    return Character(tuple(strokes))


def _all_points(k: Character) -> np.ndarray:
    return np.concatenate([s.array for s in k.strokes], axis=0)


def normalize_linear(k: Character, box: Box, target: int, preserve_aspect: bool = False) -> Character:
    """Scale box-relative coordinates onto the target grid. With
    preserve_aspect both axes use the smaller scale factor."""
    sx = target / box.w
    sy = target / box.h
    if preserve_aspect:
        sx = sy = min(sx, sy)
    pts = _all_points(k)
    xs = _round_half_away((pts[:, 0] - box.x_min) * sx)
    ys = _round_half_away((pts[:, 1] - box.y_min) * sy)
    return _rebuild(k, xs, ys, target)


def normalize_moment(k: Character, image: BinaryImage, target: int, spread: float = 4.0) -> Character:
    """Recenter on the ink centroid and rescale by the per-axis RMS spread;
    the centroid lands on the middle of the target grid.

    `image` must be the rasterization of `k` over its bounding box. Falls
    back to plain linear normalization when all ink lies on one line.
    """
    ys, xs = np.nonzero(image.pixels)
    mass = len(xs)
    box = bounding_box(k)
    xc = xs.mean()
    yc = ys.mean()
    mu20 = float(((xs - xc) ** 2).sum())
    mu02 = float(((ys - yc) ** 2).sum())
    if mu20 == 0.0 or mu02 == 0.0:
        return normalize_linear(k, box, target)
    delta_x = spread * np.sqrt(mu20 / mass)
    delta_y = spread * np.sqrt(mu02 / mass)
    pts = _all_points(k)
    out_x = _round_half_away((pts[:, 0] - box.x_min - xc) * (target / delta_x) + target / 2)
    out_y = _round_half_away((pts[:, 1] - box.y_min - yc) * (target / delta_y) + target / 2)
    return _rebuild(k, out_x, out_y, target)


def _equalize_axis(projection: np.ndarray, target: int) -> np.ndarray:
    # Cumulative share of the projection strictly left of each cell, so a
    # constant projection reduces exactly to linear scaling.
    total = float(projection.sum())
    cum = np.concatenate(([0.0], np.cumsum(projection)[:-1]))
    return _round_half_away(cum * (target / total))


def normalize_dot_density(k: Character, image: BinaryImage, target: int, alpha: int) -> Character:
    """Nonlinear remap equalizing per-column/per-row ink counts; alpha biases
    every cell toward the linear map."""
    box = bounding_box(k)
    h_proj = image.pixels.sum(axis=0).astype(np.float64) + alpha
    v_proj = image.pixels.sum(axis=1).astype(np.float64) + alpha
    xmap = _equalize_axis(h_proj, target)
    ymap = _equalize_axis(v_proj, target)
    pts = _all_points(k)
    xs = xmap[pts[:, 0] - box.x_min]
    ys = ymap[pts[:, 1] - box.y_min]
    return _rebuild(k, xs, ys, target)


def normalize_line_density(k: Character, image: BinaryImage, target: int) -> Character:
    """Nonlinear remap equalizing local stroke-interval density. Blank or
    pathological images (all-zero projections) fall back to linear."""
    h_proj, v_proj = kernels.line_density_projections(image.pixels)
    if h_proj.sum() <= 0.0 or v_proj.sum() <= 0.0:
        return normalize_linear(k, bounding_box(k), target)
    box = bounding_box(k)
    xmap = _equalize_axis(h_proj, target)
    ymap = _equalize_axis(v_proj, target)
    pts = _all_points(k)
    xs = xmap[pts[:, 0] - box.x_min]
    ys = ymap[pts[:, 1] - box.y_min]
    return _rebuild(k, xs, ys, target)


def extract_feature_points(s: Stroke, spacing: float) -> Stroke:
    """Walk the polyline emitting a point whenever the accumulated arc length
    since the last emission reaches the spacing. Endpoints are always kept
    and single-point strokes are duplicated to keep strokes >= 2 points."""
    return Stroke.make(kernels.extract_features(s.array, spacing))


def preprocess(k: Character, cfg: PreprocessConfig) -> Character:
    """Full chain; never changes the stroke count."""
    dense = interpolate_character(k)
    box = bounding_box(dense)
    if max(box.w, box.h) > cfg.aspect_guard_ratio * min(box.w, box.h):
        normalized = normalize_linear(dense, box, cfg.target_size, preserve_aspect=True)
    elif cfg.method is NormalizationMethod.LINEAR:
        normalized = normalize_linear(dense, box, cfg.target_size)
    elif cfg.method is NormalizationMethod.MOMENT:
        normalized = normalize_moment(dense, rasterize(dense, box), cfg.target_size, cfg.moment_spread)
    elif cfg.method is NormalizationMethod.DOT_DENSITY:
        normalized = normalize_dot_density(dense, rasterize(dense, box), cfg.target_size, cfg.alpha)
    else:
        normalized = normalize_line_density(dense, rasterize(dense, box), cfg.target_size)
    dense2 = interpolate_character(normalized)
    return Character(
        tuple(extract_feature_points(s, cfg.feature_spacing) for s in dense2.strokes)
    )
