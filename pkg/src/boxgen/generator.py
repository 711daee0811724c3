"""End-to-end generation of one box overlapping a reference at IoU >= T.

The top-left corner is sampled from its feasible polygon, then the
bottom-right corner from the polygon conditioned on that choice. Corner
order is randomized per draw: sampling bottom-right first is realized by
point-reflecting the frame through the reference center, which preserves
all extents and therefore IoU. Work happens on the unit-normalized frame,
so results are affine-equivariant in the reference box.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import GenerationError, ParameterError
from .feasible import DEFAULT_TRACE_STEP, br_feasible_polygon, tl_feasible_polygon
from .geometry import UNIT_BOX, Box, iou, normalize_to
from .sampling import DEFAULT_ATTEMPT_BUDGET, DEFAULT_PROPOSAL, sample_polygon_with_count

ORDER_TL_FIRST = "tl-first"
ORDER_BR_FIRST = "br-first"

MAX_THRESHOLD = 0.999
IOU_SLACK = 1e-4
MAX_REDRAWS = 5


@dataclass(frozen=True)
class GenerationRecord:
    """Provenance of one generated box."""

    reference: Box
    threshold: float
    order: str
    achieved_iou: float
    proposals_used: int


def generate_bb(
    b: Box,
    t: float,
    rng,
    proposal=DEFAULT_PROPOSAL,
    *,
    trace_step: float = DEFAULT_TRACE_STEP,
    budget: int = DEFAULT_ATTEMPT_BUDGET,
):
    """Generate one box with iou(b, result) >= t - 1e-4.

    Returns (box, GenerationRecord). The achieved IoU is re-verified
    against the reference; trace-approximation misses trigger a resample
    (up to 5 draws) before failing.
    """
    if not (0.0 < t <= MAX_THRESHOLD):
        raise ParameterError(
            f"threshold must lie in (0, {MAX_THRESHOLD}], got {t}"
        )
    m = normalize_to(b, UNIT_BOX)
    tl_poly = tl_feasible_polygon(UNIT_BOX, t, trace_step)
    last_achieved = None
    for _ in range(MAX_REDRAWS):
        order = ORDER_TL_FIRST if rng.random() < 0.5 else ORDER_BR_FIRST
        (tx, ty), n_tl = sample_polygon_with_count(tl_poly, proposal, rng, budget)
        br_poly = br_feasible_polygon(UNIT_BOX, t, (tx, ty), trace_step)
        (bx, by), n_br = sample_polygon_with_count(br_poly, proposal, rng, budget)
        if order == ORDER_BR_FIRST:
            # reflect through the unit-frame center (0.5, 0.5)
            coords = (1.0 - bx, 1.0 - by, 1.0 - tx, 1.0 - ty)
        else:
            coords = (tx, ty, bx, by)
        try:
            out = m.invert(Box(*coords))
        except ParameterError:
            continue
        achieved = iou(b, out)
        last_achieved = achieved
        if achieved >= t - IOU_SLACK:
            return out, GenerationRecord(
                reference=b,
                threshold=t,
                order=order,
                achieved_iou=achieved,
                proposals_used=n_tl + n_br,
            )
    raise GenerationError(
        f"verification failed after {MAX_REDRAWS} draws for threshold {t} "
        f"(last achieved IoU {last_achieved})"
    )


def generate_bb_batch(b, t, count, rng, proposal=DEFAULT_PROPOSAL, **kwargs):
    """Generate count boxes, each on its own child stream.

    Splitting gives every draw an independent, reproducible stream, so the
    batch can be regenerated draw-by-draw or in parallel.
    """
    if count < 0:
        raise ParameterError(f"count must be non-negative, got {count}")
    streams = rng.spawn(count)
    return [generate_bb(b, t, s, proposal, **kwargs) for s in streams]
