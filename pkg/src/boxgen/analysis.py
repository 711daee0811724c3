"""Distribution studies over generated RoIs and feasible boundaries.

Reproduces the achieved-IoU histograms of the named RoI sources and the
nested feasible-boundary contour families around a reference box, plus
occupancy statistics of top-left points against those boundaries.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ParameterError
from .feasible import DEFAULT_TRACE_STEP, tl_feasible_polygon
from .generator import generate_bb
from .geometry import UNIT_BOX, Box
from .proi import DEFAULT_CLIP_MAX, DEFAULT_PSI, IoUDistributionSpec
from .sampling import DEFAULT_ATTEMPT_BUDGET, DEFAULT_PROPOSAL

HISTOGRAM_EDGES = tuple(DEFAULT_PSI) + (DEFAULT_CLIP_MAX, 1.0)


@dataclass(frozen=True, eq=False)
class IoUHistogram:
    """Achieved-IoU counts for one RoI source."""

    edges: tuple
    counts: np.ndarray
    source: str
    sample_size: int

    @property
    def densities(self):
        widths = np.diff(np.asarray(self.edges))
        return self.counts / (self.sample_size * widths)

    def rows(self):
        dens = self.densities
        for i in range(len(self.counts)):
            yield (self.edges[i], self.edges[i + 1], int(self.counts[i]), float(dens[i]))


@dataclass(frozen=True, eq=False)
class ContourFamily:
    """Nested feasible-boundary polylines for a list of IoU levels."""

    reference: Box
    levels: tuple
    polylines: tuple  # one (n, 2) array per level, same order as levels

    def areas(self):
        return tuple(
            abs(_kernels.impl.shoelace_signed_area(p[:, 0], p[:, 1]))
            for p in self.polylines
        )

    def to_json_dict(self):
        return {
            "reference": list(self.reference.as_tuple()),
            "contours": [
                {"iou_level": lvl, "vertices": [[float(x), float(y)] for x, y in poly]}
                for lvl, poly in zip(self.levels, self.polylines)
            ],
        }


def parse_source(source: str):
    """Split a source label into ("base", t) or ("preset", name)."""
    if source.startswith("base:"):
        t = float(source.split(":", 1)[1])
        if not (0.0 < t < 1.0):
            raise ParameterError(f"base IoU must lie in (0, 1), got {t}")
        return "base", t
    return "preset", source


def iou_histogram(
    source: str,
    n: int,
    rng,
    *,
    reference: Box = UNIT_BOX,
    proposal=DEFAULT_PROPOSAL,
    trace_step: float = DEFAULT_TRACE_STEP,
    budget: int = DEFAULT_ATTEMPT_BUDGET,
) -> IoUHistogram:
    """Generate n boxes from the named source and bin their achieved IoUs.

    Sources are the preset names or "base:T" for a fixed threshold. A tail
    bin [0.95, 1.0] captures achieved IoUs above the target clip so counts
    always sum to n.
    """
    if n < 1:
        raise ParameterError(f"sample size must be >= 1, got {n}")
    kind, value = parse_source(source)
    if kind == "preset":
        spec = IoUDistributionSpec.from_preset(value)
        edges = spec.bin_edges
        cumulative = np.cumsum(np.asarray(spec.weights))
    achieved = np.empty(n)
    streams = rng.spawn(n)
    for i, stream in enumerate(streams):
        if kind == "base":
            target = value
        else:
            k = rng.weighted_index(cumulative)
            target = min(rng.uniform(edges[k], edges[k + 1]), spec.clip_max)
        _, record = generate_bb(
            reference, target, stream, proposal,
            trace_step=trace_step, budget=budget,
        )
        achieved[i] = record.achieved_iou
    bins = np.asarray(HISTOGRAM_EDGES)
    idx = np.clip(np.searchsorted(bins, achieved, side="right") - 1, 0, len(bins) - 2)
    counts = np.bincount(idx, minlength=len(bins) - 1)
    return IoUHistogram(
        edges=HISTOGRAM_EDGES, counts=counts, source=source, sample_size=n
    )


def boundary_contours(
    reference: Box, levels, trace_step: float = DEFAULT_TRACE_STEP
) -> ContourFamily:
    """Top-left feasible boundaries for each IoU level around the reference.

    Higher levels trace strictly inside lower ones, matching the in-out
    ordering of the feasible spaces.
    """
    levels = tuple(levels)
    if not levels:
        raise ParameterError("need at least one IoU level")
    for lvl in levels:
        if not (0.0 < lvl < 1.0):
            raise ParameterError(f"IoU level must lie in (0, 1), got {lvl}")
    polylines = tuple(
        tl_feasible_polygon(reference, lvl, trace_step).vertices for lvl in levels
    )
    return ContourFamily(reference=reference, levels=levels, polylines=polylines)


def spatial_stats(
    points,
    reference: Box,
    levels,
    trace_step: float = DEFAULT_TRACE_STEP,
) -> dict:
    """Occupancy report of top-left points against the level boundaries.

    Returns the inside-fraction per level plus quadrant fractions relative
    to the reference's top-left corner (strict inequalities; boundary
    points fall in no quadrant).
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ParameterError(f"points must be an (n, 2) array, got shape {pts.shape}")
    if not np.isfinite(pts).all():
        raise ParameterError("points must be finite")
    n = pts.shape[0]
    px = np.ascontiguousarray(pts[:, 0])
    py = np.ascontiguousarray(pts[:, 1])
    level_fractions = {}
    for lvl in levels:
        poly = tl_feasible_polygon(reference, lvl, trace_step)
        inside = _kernels.impl.points_in_polygon_parity(px, py, poly.xs, poly.ys)
        level_fractions[float(lvl)] = float(inside.sum()) / n if n else 0.0
    x1, y1 = reference.top_left
    quadrants = {
        "inside": float(np.count_nonzero((px > x1) & (py > y1))) / n if n else 0.0,
        "outside": float(np.count_nonzero((px < x1) & (py < y1))) / n if n else 0.0,
        "x_only": float(np.count_nonzero((px > x1) & (py < y1))) / n if n else 0.0,
        "y_only": float(np.count_nonzero((px < x1) & (py > y1))) / n if n else 0.0,
    }
    return {
        "n_points": n,
        "reference": list(reference.as_tuple()),
        "inside_fraction_by_level": level_fractions,
        "quadrant_fractions": quadrants,
    }
