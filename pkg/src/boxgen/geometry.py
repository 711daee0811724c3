"""Axis-aligned box arithmetic: area, intersection, IoU, and affine frame changes.

Coordinates are continuous and unit-agnostic. Area uses the
last-pixel-not-counted convention, so area(Box(0, 0, 1, 1)) == 1.0.
All functions here are pure; boxes and maps are immutable values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError


@dataclass(frozen=True, slots=True)
class Box:
    """Rectangle [x1, y1, x2, y2] with strictly positive width and height."""

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self):
        for v in (self.x1, self.y1, self.x2, self.y2):
            if not math.isfinite(v):
                raise ParameterError(f"box coordinates must be finite, got {self!r}")
        if self.x2 <= self.x1 or self.y2 <= self.y1:
            raise ParameterError(
                f"degenerate box: require x2 > x1 and y2 > y1, got "
                f"[{self.x1}, {self.y1}, {self.x2}, {self.y2}]"
            )

    @classmethod
    def from_xywh(cls, x, y, w, h):
        """Build from (x, y, width, height) as used by COCO annotations."""
        return cls(float(x), float(y), float(x) + float(w), float(y) + float(h))

    @property
    def width(self):
        return self.x2 - self.x1

    @property
    def height(self):
        return self.y2 - self.y1

    @property
    def top_left(self):
        return (self.x1, self.y1)

    @property
    def bottom_right(self):
        return (self.x2, self.y2)

    def center(self):
        return ((self.x1 + self.x2) / 2.0, (self.y1 + self.y2) / 2.0)

    def diagonal(self):
        return math.hypot(self.width, self.height)

    def as_tuple(self):
        return (self.x1, self.y1, self.x2, self.y2)


UNIT_BOX = Box(0.0, 0.0, 1.0, 1.0)


def area(b: Box) -> float:
    """Area of a box, (x2 - x1) * (y2 - y1)."""
    return (b.x2 - b.x1) * (b.y2 - b.y1)


def intersection(b: Box, c: Box) -> float:
    """Intersection area of two boxes; 0 when they are disjoint.

    The raw min/max expression goes negative for disjoint boxes, so each
    extent is clamped at 0 to keep the result a valid area.
    """
    iw = min(b.x2, c.x2) - max(b.x1, c.x1)
    ih = min(b.y2, c.y2) - max(b.y1, c.y1)
    if iw <= 0.0 or ih <= 0.0:
        return 0.0
    return iw * ih


def iou(b: Box, c: Box) -> float:
    """Intersection over union of two boxes, in [0, 1]."""
    inter = intersection(b, c)
    if inter == 0.0:
        return 0.0
    return inter / (area(b) + area(c) - inter)


@dataclass(frozen=True, slots=True)
class AffineMap:
    """Per-axis scale followed by shift: (x, y) -> (x * sx + dx, y * sy + dy)."""

    scale_x: float
    scale_y: float
    shift_x: float
    shift_y: float

    def __post_init__(self):
        if not (
            math.isfinite(self.scale_x)
            and math.isfinite(self.scale_y)
            and math.isfinite(self.shift_x)
            and math.isfinite(self.shift_y)
        ):
            raise ParameterError(f"affine map parameters must be finite: {self!r}")
        if self.scale_x <= 0.0 or self.scale_y <= 0.0:
            raise ParameterError(
                f"affine map must have strictly positive scales: {self!r}"
            )

    @classmethod
    def identity(cls):
        return cls(1.0, 1.0, 0.0, 0.0)

    @property
    def is_identity(self):
        return (
            self.scale_x == 1.0
            and self.scale_y == 1.0
            and self.shift_x == 0.0
            and self.shift_y == 0.0
        )

    def apply_point(self, x, y):
        return (x * self.scale_x + self.shift_x, y * self.scale_y + self.shift_y)

    def invert_point(self, x, y):
        return ((x - self.shift_x) / self.scale_x, (y - self.shift_y) / self.scale_y)

    def apply(self, b: Box) -> Box:
        x1, y1 = self.apply_point(b.x1, b.y1)
        x2, y2 = self.apply_point(b.x2, b.y2)
        return Box(x1, y1, x2, y2)

    def invert(self, b: Box) -> Box:
        x1, y1 = self.invert_point(b.x1, b.y1)
        x2, y2 = self.invert_point(b.x2, b.y2)
        return Box(x1, y1, x2, y2)

    def apply_points(self, xs, ys):
        """Vectorized apply_point for coordinate arrays."""
        return (xs * self.scale_x + self.shift_x, ys * self.scale_y + self.shift_y)

    def invert_points(self, xs, ys):
        return ((xs - self.shift_x) / self.scale_x, (ys - self.shift_y) / self.scale_y)


def normalize_to(b: Box, reference: Box) -> AffineMap:
    """Map sending box b exactly onto the reference box.

    Scaling and shifting preserve pairwise IoU, so any companion box moved
    by the same map keeps its IoU with b.
    """
    sx = reference.width / b.width
    sy = reference.height / b.height
    return AffineMap(sx, sy, reference.x1 - b.x1 * sx, reference.y1 - b.y1 * sy)


def reflect_about_center(b: Box, center_of: Box) -> Box:
    """Point-reflect b through the center of center_of.

    An involution that preserves extents, hence areas and pairwise IoU of
    boxes reflected by the same map.
    """
    cx, cy = center_of.center()
    return Box(
        2.0 * cx - b.x2,
        2.0 * cy - b.y2,
        2.0 * cx - b.x1,
        2.0 * cy - b.y1,
    )
