"""Feasible corner-position polygons for a target IoU threshold.

For a reference box and threshold T, the locus of top-left corners whose
completed box reaches IoU >= T (bottom-right corner held at the
reference's) is bounded by four level curves, one per quadrant around the
reference corner. The same construction, parameterized by an already
chosen top-left point, bounds the bottom-right corner space. Curves are
traced at a fixed sweep precision and joined into a closed polygon.

All tracing happens on the unit-normalized frame and is mapped back to the
caller's frame afterwards; IoU is invariant under that change of frame.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import ParameterError
from .geometry import UNIT_BOX, Box, normalize_to

log = logging.getLogger(__name__)

DEFAULT_TRACE_STEP = 1e-4

TOP_LEFT = "top-left"
BOTTOM_RIGHT = "bottom-right"

# membership slack for points claimed to lie inside a polygon; matches the
# per-vertex IoU accuracy bound of the traced curves
BOUNDARY_IOU_TOL = 1e-6

_REGIONS = (1, 2, 3, 4)


@dataclass(frozen=True)
class BRContext:
    """Clipped-corner parameters of the bottom-right space.

    alpha and beta clip the fixed top-left point against the reference's;
    alpha_hat/beta_hat do the same per candidate bottom-right point.
    """

    alpha: float  # max(tl_x, x1)
    beta: float   # max(tl_y, y1)
    reference: Box
    tl: tuple

    @classmethod
    def for_tl(cls, b: Box, tl):
        return cls(
            alpha=max(tl[0], b.x1), beta=max(tl[1], b.y1), reference=b, tl=tuple(tl)
        )

    def alpha_hat(self, br_x):
        return min(br_x, self.reference.x2)

    def beta_hat(self, br_y):
        return min(br_y, self.reference.y2)


@dataclass(frozen=True, eq=False)
class FeasiblePolygon:
    """Closed feasible-region boundary for one corner of a reference box.

    Vertices are stored as parallel coordinate arrays forming a closed ring
    (first vertex not repeated). A degenerate polygon collapses to a single
    point and carries exactly one vertex.
    """

    xs: np.ndarray
    ys: np.ndarray
    threshold: float
    trace_step: float
    corner_kind: str
    reference: Box
    degenerate: bool = False
    boundary_gaps: int = 0

    @property
    def vertices(self):
        return np.stack([self.xs, self.ys], axis=1)

    def __len__(self):
        return self.xs.shape[0]

    @property
    def anchor(self):
        """The reference-box corner this polygon surrounds."""
        if self.corner_kind == TOP_LEFT:
            return self.reference.top_left
        return self.reference.bottom_right

    def to_json_dict(self):
        return {
            "corner_kind": self.corner_kind,
            "threshold": self.threshold,
            "trace_step": self.trace_step,
            "reference": list(self.reference.as_tuple()),
            "degenerate": self.degenerate,
            "vertices": [[float(x), float(y)] for x, y in zip(self.xs, self.ys)],
        }


def _validate_threshold(t):
    if not (0.0 < t < 1.0):
        raise ParameterError(f"IoU threshold must lie in (0, 1), got {t}")


def _validate_step(step):
    if not (0.0 < step < 1.0):
        raise ParameterError(f"trace_step must lie in (0, 1), got {step}")


def _assemble(curves):
    """Concatenate traversal-ordered curves into a deduplicated closed ring."""
    xs = np.concatenate([c[0] for c in curves])
    ys = np.concatenate([c[1] for c in curves])
    keep = np.ones(xs.shape[0], dtype=bool)
    keep[1:] = (np.abs(np.diff(xs)) > 1e-12) | (np.abs(np.diff(ys)) > 1e-12)
    xs = xs[keep]
    ys = ys[keep]
    # drop a repeated closing vertex
    if xs.shape[0] > 1 and abs(xs[0] - xs[-1]) <= 1e-12 and abs(ys[0] - ys[-1]) <= 1e-12:
        xs = xs[:-1]
        ys = ys[:-1]
    return _decimate_collinear(xs, ys)


def _decimate_collinear(xs, ys):
    """Drop interior vertices of exactly collinear runs; bounds vertex count."""
    n = xs.shape[0]
    if n < 3:
        return xs, ys
    ax = xs[1:-1] - xs[:-2]
    ay = ys[1:-1] - ys[:-2]
    bx = xs[2:] - xs[1:-1]
    by = ys[2:] - ys[1:-1]
    cross = ax * by - ay * bx
    keep = np.ones(n, dtype=bool)
    keep[1:-1] = cross != 0.0
    return xs[keep], ys[keep]


def trace_region_boundary(region, space, b, t, *, tl=None, trace_step=DEFAULT_TRACE_STEP):
    """Trace one region's IoU == t level curve, in b's coordinate frame.

    region is 1..4; space is "top-left" or "bottom-right" (the latter needs
    the fixed top-left point tl). Consecutive points are spaced at most
    trace_step apart in the swept coordinate of the unit-normalized frame.
    """
    _validate_threshold(t)
    _validate_step(trace_step)
    if region not in _REGIONS:
        raise ParameterError(f"region must be one of {_REGIONS}, got {region}")
    m = normalize_to(b, UNIT_BOX)
    if space == TOP_LEFT:
        xs, ys, skipped = _kernels.impl.tl_region_curve(
            region, 0.0, 0.0, 1.0, 1.0, t, trace_step
        )
    elif space == BOTTOM_RIGHT:
        if tl is None:
            raise ParameterError("bottom-right tracing requires the fixed tl point")
        tx, ty = m.apply_point(tl[0], tl[1])
        xs, ys, skipped = _kernels.impl.br_region_curve(
            region, 0.0, 0.0, 1.0, 1.0, tx, ty, t, trace_step
        )
    else:
        raise ParameterError(f"space must be {TOP_LEFT!r} or {BOTTOM_RIGHT!r}")
    if skipped:
        log.debug(
            "boundary gap: skipped %d sweep points (region %s, space %s, t=%s)",
            skipped, region, space, t,
        )
    if not m.is_identity:
        xs, ys = m.invert_points(xs, ys)
    return np.stack([xs, ys], axis=1)


@lru_cache(maxsize=128)
def _unit_tl_polygon(t, trace_step):
    """TL feasible polygon of the unit box; cached since it depends only on t."""
    # diameter of the polygon is (1/t - t) in both axes on the unit frame
    if (1.0 / t - t) < 2.0 * trace_step:
        return FeasiblePolygon(
            xs=np.array([0.0]),
            ys=np.array([0.0]),
            threshold=t,
            trace_step=trace_step,
            corner_kind=TOP_LEFT,
            reference=UNIT_BOX,
            degenerate=True,
        )
    curves = []
    gaps = 0
    for region, reverse in ((1, False), (2, False), (3, True), (4, True)):
        xs, ys, skipped = _kernels.impl.tl_region_curve(
            region, 0.0, 0.0, 1.0, 1.0, t, trace_step
        )
        gaps += skipped
        if reverse:
            xs = xs[::-1]
            ys = ys[::-1]
        curves.append((xs, ys))
    xs, ys = _assemble(curves)
    return FeasiblePolygon(
        xs=xs,
        ys=ys,
        threshold=t,
        trace_step=trace_step,
        corner_kind=TOP_LEFT,
        reference=UNIT_BOX,
        boundary_gaps=gaps,
    )


def tl_feasible_polygon(b: Box, t: float, trace_step: float = DEFAULT_TRACE_STEP):
    """Polygon enclosing the top-left corners p with iou(Box(p, BR(b)), b) >= t."""
    _validate_threshold(t)
    _validate_step(trace_step)
    unit = _unit_tl_polygon(t, trace_step)
    if b == UNIT_BOX:
        return unit
    m = normalize_to(b, UNIT_BOX)
    xs, ys = m.invert_points(unit.xs, unit.ys)
    return FeasiblePolygon(
        xs=xs,
        ys=ys,
        threshold=t,
        trace_step=trace_step,
        corner_kind=TOP_LEFT,
        reference=b,
        degenerate=unit.degenerate,
        boundary_gaps=unit.boundary_gaps,
    )


def br_feasible_polygon(b: Box, t: float, tl, trace_step: float = DEFAULT_TRACE_STEP):
    """Polygon enclosing the bottom-right corners q with iou(Box(tl, q), b) >= t.

    tl must lie inside tl_feasible_polygon(b, t); on its boundary the
    feasible space collapses to the single point BR(b), returned as a
    degenerate polygon.
    """
    _validate_threshold(t)
    _validate_step(trace_step)
    m = normalize_to(b, UNIT_BOX)
    tx, ty = m.apply_point(tl[0], tl[1])
    # precondition: the box completed with BR(b) must already reach t
    if tx >= 1.0 or ty >= 1.0:
        raise ParameterError(f"tl point {tl!r} cannot form a box with BR(b)")
    inter = (1.0 - max(tx, 0.0)) * (1.0 - max(ty, 0.0))
    union = 1.0 + (1.0 - tx) * (1.0 - ty) - inter
    tl_iou = inter / union
    if tl_iou < t - BOUNDARY_IOU_TOL:
        raise ParameterError(
            f"tl point {tl!r} lies outside the feasible top-left space "
            f"(completed-box IoU {tl_iou:.6f} < {t})"
        )

    ctx = BRContext.for_tl(UNIT_BOX, (tx, ty))
    al = ctx.alpha
    be = ctx.beta
    cc = (1.0 - al) * (1.0 - be)
    amax = cc / t + cc - 1.0
    # polygon extents; both collapse to 0 as tl approaches the boundary
    x_hi = tx + amax / (1.0 - ty)
    y_hi = ty + amax / (1.0 - tx)
    denom_x = (t + 1.0) * (1.0 - be) - t * (1.0 - ty)
    denom_y = (t + 1.0) * (1.0 - al) - t * (1.0 - tx)
    x_lo = (t + (t + 1.0) * al * (1.0 - be) - t * tx * (1.0 - ty)) / denom_x
    y_lo = (t + (t + 1.0) * be * (1.0 - al) - t * ty * (1.0 - tx)) / denom_y
    if max(x_hi - x_lo, y_hi - y_lo) < 2.0 * trace_step:
        return FeasiblePolygon(
            xs=np.array([b.x2]),
            ys=np.array([b.y2]),
            threshold=t,
            trace_step=trace_step,
            corner_kind=BOTTOM_RIGHT,
            reference=b,
            degenerate=True,
        )

    curves = []
    gaps = 0
    for region, reverse in ((4, False), (1, False), (2, True), (3, True)):
        xs, ys, skipped = _kernels.impl.br_region_curve(
            region, 0.0, 0.0, 1.0, 1.0, tx, ty, t, trace_step
        )
        gaps += skipped
        if reverse:
            xs = xs[::-1]
            ys = ys[::-1]
        curves.append((xs, ys))
    if gaps:
        log.debug("boundary gap: skipped %d sweep points (br space, t=%s)", gaps, t)
    xs, ys = _assemble(curves)
    if not m.is_identity:
        xs, ys = m.invert_points(xs, ys)
    return FeasiblePolygon(
        xs=xs,
        ys=ys,
        threshold=t,
        trace_step=trace_step,
        corner_kind=BOTTOM_RIGHT,
        reference=b,
        boundary_gaps=gaps,
    )
