"""Rejection sampling of points inside feasible polygons.

A proposal distribution draws candidate points over the polygon's
enclosing rectangle until one lands inside; the proposal therefore shapes
the spatial distribution of accepted points. The uniform proposal yields
points uniform over the polygon area.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .errors import ParameterError, SamplingError
from .feasible import FeasiblePolygon
from .geometry import Box

DEFAULT_ATTEMPT_BUDGET = 10_000

# must match the feasible-space membership slack so the two modules never
# disagree on accept/reject at the boundary
BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class UniformProposal:
    """Uniform density over the polygon's enclosing rectangle."""

    def draw(self, rng, polygon, rect):
        x = rng.uniform(rect[0], rect[2])
        y = rng.uniform(rect[1], rect[3])
        return x, y


@dataclass(frozen=True)
class GaussianProposal:
    """Gaussian centered on the polygon's anchor corner (an extension).

    sigma is sigma_scale times the rectangle half-extent per axis. The
    density is positive everywhere, so rejection sampling still terminates.
    """

    sigma_scale: float = 0.5
    center: tuple | None = None

    def draw(self, rng, polygon, rect):
        cx, cy = self.center if self.center is not None else polygon.anchor
        sx = self.sigma_scale * (rect[2] - rect[0]) / 2.0
        sy = self.sigma_scale * (rect[3] - rect[1]) / 2.0
        x = cx + sx * rng.standard_normal()
        y = cy + sy * rng.standard_normal()
        return x, y


@dataclass(frozen=True)
class CallableProposal:
    """Caller-supplied sampler fn(rng, polygon, rect) -> (x, y)."""

    fn: object

    def draw(self, rng, polygon, rect):
        return self.fn(rng, polygon, rect)


DEFAULT_PROPOSAL = UniformProposal()


def enclosing_rectangle(p: FeasiblePolygon):
    """Minimal axis-aligned rectangle containing all polygon vertices.

    A degenerate polygon has no rectangle; its single point is returned as
    a zero-area marker instead of a Box.
    """
    if p.degenerate:
        return (float(p.xs[0]), float(p.ys[0]))
    return Box(
        float(p.xs.min()), float(p.ys.min()), float(p.xs.max()), float(p.ys.max())
    )


def point_in_polygon(p: FeasiblePolygon, q, tol: float = BOUNDARY_TOL) -> bool:
    """Even-odd membership; points within tol of the boundary count as inside."""
    x, y = float(q[0]), float(q[1])
    if p.degenerate:
        dx = x - p.xs[0]
        dy = y - p.ys[0]
        return dx * dx + dy * dy <= tol * tol
    if _kernels.impl.pip_parity(x, y, p.xs, p.ys):
        return True
    return _kernels.impl.pip_mindist2(x, y, p.xs, p.ys) <= tol * tol


def sample_polygon_with_count(
    p: FeasiblePolygon,
    proposal=DEFAULT_PROPOSAL,
    rng=None,
    budget: int = DEFAULT_ATTEMPT_BUDGET,
):
    """Draw one point inside the polygon; returns ((x, y), proposals_used)."""
    if rng is None:
        raise ParameterError("sample_polygon requires a SeededRng")
    if p.degenerate:
        return (float(p.xs[0]), float(p.ys[0])), 0
    rect = enclosing_rectangle(p)
    rect = (rect.x1, rect.y1, rect.x2, rect.y2)
    impl = _kernels.impl
    for attempt in range(1, budget + 1):
        x, y = proposal.draw(rng, p, rect)
        # strict parity test: accepted points always satisfy point_in_polygon
        if (
            rect[0] <= x <= rect[2]
            and rect[1] <= y <= rect[3]
            and impl.pip_parity(x, y, p.xs, p.ys)
        ):
            return (x, y), attempt
    raise SamplingError(
        budget,
        f"no point accepted after {budget} proposals "
        f"(threshold {p.threshold}, {p.corner_kind} polygon with {len(p)} vertices)",
    )


def sample_polygon(
    p: FeasiblePolygon,
    proposal=DEFAULT_PROPOSAL,
    rng=None,
    budget: int = DEFAULT_ATTEMPT_BUDGET,
):
    """Draw one point inside the polygon under the given proposal."""
    point, _ = sample_polygon_with_count(p, proposal, rng, budget)
    return point
