"""Brute-force oracles for validating feasible-space geometry and statistics.

The corner-region oracle marks grid points by completing each candidate
corner into a full box and evaluating IoU directly; it never touches the
region boundary equations, so agreement with the traced polygons is an
independent check, not a tautology.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ParameterError
from .feasible import BOTTOM_RIGHT, TOP_LEFT, FeasiblePolygon
from .geometry import Box

DEFAULT_GRID_PITCH = 0.005


@dataclass(frozen=True)
class GridSpec:
    """Regular evaluation grid; field[r, c] corresponds to (xs()[c], ys()[r])."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float
    pitch: float = DEFAULT_GRID_PITCH

    def __post_init__(self):
        if self.pitch <= 0.0:
            raise ParameterError(f"grid pitch must be positive, got {self.pitch}")
        if self.x_hi <= self.x_lo or self.y_hi <= self.y_lo:
            raise ParameterError("grid window must have positive extent")

    def xs(self):
        n = int(np.floor((self.x_hi - self.x_lo) / self.pitch)) + 1
        return self.x_lo + self.pitch * np.arange(n)

    def ys(self):
        n = int(np.floor((self.y_hi - self.y_lo) / self.pitch)) + 1
        return self.y_lo + self.pitch * np.arange(n)

    @classmethod
    def around_polygon(cls, polygon: FeasiblePolygon, margin=0.05, pitch=DEFAULT_GRID_PITCH):
        """Window covering the polygon's enclosing rectangle with a margin."""
        return cls(
            x_lo=float(polygon.xs.min()) - margin,
            x_hi=float(polygon.xs.max()) + margin,
            y_lo=float(polygon.ys.min()) - margin,
            y_hi=float(polygon.ys.max()) + margin,
            pitch=pitch,
        )


def brute_force_corner_region(b: Box, t, corner_kind, fixed_corner, grid: GridSpec):
    """Boolean field: grid corners whose completed box reaches IoU >= t.

    For the top-left kind, a grid point p completes to Box(p, fixed_corner);
    for bottom-right, to Box(fixed_corner, p). Points that cannot form a
    valid box are marked False.
    """
    if corner_kind not in (TOP_LEFT, BOTTOM_RIGHT):
        raise ParameterError(f"corner_kind must be {TOP_LEFT!r} or {BOTTOM_RIGHT!r}")
    fx, fy = float(fixed_corner[0]), float(fixed_corner[1])
    field = _kernels.impl.corner_iou_field(
        fx, fy, b.x1, b.y1, b.x2, b.y2, grid.xs(), grid.ys(), corner_kind == TOP_LEFT
    )
    return field >= t


def polygon_membership_grid(polygon: FeasiblePolygon, grid: GridSpec):
    """Even-odd membership of every grid point, rasterized by scanline."""
    return (
        _kernels.impl.scanline_grid(polygon.xs, polygon.ys, grid.xs(), grid.ys()) == 1
    )


@dataclass(frozen=True)
class DiscrepancyReport:
    """Where polygon membership and the brute-force oracle disagree."""

    total_disagreements: int
    interior_disagreements: int
    boundary_tolerance: float
    interior_points: tuple
    max_interior_distance: float

    @property
    def ok(self):
        return self.interior_disagreements == 0


def compare_polygon_to_oracle(
    polygon: FeasiblePolygon,
    oracle_field,
    grid: GridSpec,
    boundary_tolerance=None,
):
    """List grid points whose membership disagrees beyond the boundary band.

    Disagreements within boundary_tolerance (default 2 * trace_step) of the
    polygon boundary are attributable to the traced approximation and are
    excused; anything farther inside is a real discrepancy.
    """
    if boundary_tolerance is None:
        boundary_tolerance = 2.0 * polygon.trace_step
    member = polygon_membership_grid(polygon, grid)
    if member.shape != oracle_field.shape:
        raise ParameterError(
            f"grid shapes differ: {member.shape} vs {oracle_field.shape}"
        )
    diff = member != oracle_field
    total = int(diff.sum())
    if total == 0:
        return DiscrepancyReport(0, 0, boundary_tolerance, (), 0.0)
    gx = grid.xs()
    gy = grid.ys()
    rows, cols = np.nonzero(diff)
    interior = []
    max_d = 0.0
    tol2 = boundary_tolerance * boundary_tolerance
    for r, c in zip(rows, cols):
        d2 = _kernels.impl.pip_mindist2(gx[c], gy[r], polygon.xs, polygon.ys)
        if d2 > tol2:
            interior.append((float(gx[c]), float(gy[r])))
            max_d = max(max_d, float(np.sqrt(d2)))
    return DiscrepancyReport(
        total_disagreements=total,
        interior_disagreements=len(interior),
        boundary_tolerance=boundary_tolerance,
        interior_points=tuple(interior[:100]),
        max_interior_distance=max_d,
    )


def empirical_distribution_check(counts, expected_probs, tolerance):
    """Compare bin frequencies against a law with an absolute tolerance.

    Returns (ok, stats) where stats carries the per-bin frequencies, the
    largest absolute deviation, and the chi-square statistic over bins with
    nonzero expectation.
    """
    counts = np.asarray(counts, dtype=float)
    probs = np.asarray(expected_probs, dtype=float)
    if counts.shape != probs.shape:
        raise ParameterError(
            f"counts and expected_probs must align: {counts.shape} vs {probs.shape}"
        )
    n = counts.sum()
    if n <= 0:
        raise ParameterError("need at least one observation")
    freqs = counts / n
    errors = np.abs(freqs - probs)
    expected = probs * n
    nz = expected > 0
    chi2 = float(np.sum((counts[nz] - expected[nz]) ** 2 / expected[nz]))
    stats = {
        "n": int(n),
        "frequencies": freqs.tolist(),
        "max_abs_error": float(errors.max()),
        "chi_square": chi2,
        "dof": int(nz.sum() - 1),
    }
    ok = bool(errors.max() <= tolerance) and bool(
        np.all(counts[~nz] == 0)
    )
    return ok, stats
