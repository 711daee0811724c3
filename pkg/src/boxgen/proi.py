"""Positive-RoI generation with balanced classes and a target IoU distribution.

The RoI budget is split evenly across foreground categories, then evenly
across the instances of each category; every allocated slot receives a
target IoU drawn from a multinomial over bin bases, and the box generator
produces one RoI per slot.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GenerationError, ParameterError
from .feasible import DEFAULT_TRACE_STEP
from .generator import generate_bb
from .geometry import Box
from .sampling import DEFAULT_ATTEMPT_BUDGET, DEFAULT_PROPOSAL

DEFAULT_PSI = (0.5, 0.6, 0.7, 0.8, 0.9)
DEFAULT_CLIP_MAX = 0.95
DEFAULT_ROI_NUM = 32

# Bin weights of the named RoI sources; rows are normalized at
# construction (the left-skew row sums to 1.05 before normalization).
PRESET_WEIGHTS = {
    "right-skew": (0.02, 0.10, 0.20, 0.30, 0.38),
    "balanced": (0.33, 0.17, 0.18, 0.17, 0.15),
    "left-skew": (0.73, 0.12, 0.15, 0.05, 0.0),
    "balanced-0.6": (0.0, 0.38, 0.20, 0.22, 0.20),
    "balanced-0.7": (0.0, 0.0, 0.48, 0.25, 0.27),
    "balanced-0.8": (0.0, 0.0, 0.0, 0.64, 0.36),
    "balanced-0.9": (0.0, 0.0, 0.0, 0.0, 1.0),
}
PRESET_ALIASES = {"balanced-0.5": "balanced"}


@dataclass(frozen=True)
class GroundTruth:
    """One labeled reference box."""

    box: Box
    category_id: int
    instance_id: int

    def __post_init__(self):
        if self.category_id < 1:
            raise ParameterError(
                f"category_id must be a positive integer, got {self.category_id}"
            )


class GroundTruthSet:
    """Labeled reference boxes forming one generation batch."""

    def __init__(self, items):
        self.items = tuple(items)
        seen = set()
        for gt in self.items:
            if gt.instance_id in seen:
                raise ParameterError(f"duplicate instance_id {gt.instance_id}")
            seen.add(gt.instance_id)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    @property
    def categories(self):
        return sorted({gt.category_id for gt in self.items})

    def by_instance(self):
        return {gt.instance_id: gt for gt in self.items}

    @classmethod
    def from_boxes(cls, boxes, category_ids):
        return cls(
            GroundTruth(box=b, category_id=int(c), instance_id=i)
            for i, (b, c) in enumerate(zip(boxes, category_ids))
        )


@dataclass(frozen=True)
class IoUDistributionSpec:
    """Bin bases plus a multinomial over them governing target IoUs."""

    psi: tuple = DEFAULT_PSI
    weights: tuple = PRESET_WEIGHTS["balanced"]
    clip_max: float = DEFAULT_CLIP_MAX

    def __post_init__(self):
        if len(self.weights) != len(self.psi):
            raise ParameterError(
                f"need one weight per bin: {len(self.psi)} bins, "
                f"{len(self.weights)} weights"
            )
        if any(not (0.0 < p < 1.0) for p in self.psi) or any(
            self.psi[i] >= self.psi[i + 1] for i in range(len(self.psi) - 1)
        ):
            raise ParameterError(f"psi must be strictly ascending in (0, 1): {self.psi}")
        if self.clip_max <= self.psi[-1] or self.clip_max >= 1.0:
            raise ParameterError(
                f"clip_max must lie in (psi[-1], 1), got {self.clip_max}"
            )
        if any(w < 0.0 for w in self.weights):
            raise ParameterError(f"weights must be non-negative: {self.weights}")
        total = math.fsum(self.weights)
        if abs(total - 1.0) > 1e-9:
            raise ParameterError(
                f"weights must sum to 1 within 1e-9, got {total!r}"
            )

    @classmethod
    def from_preset(cls, name, psi=DEFAULT_PSI, clip_max=DEFAULT_CLIP_MAX):
        key = PRESET_ALIASES.get(name, name)
        if key not in PRESET_WEIGHTS:
            known = sorted(PRESET_WEIGHTS) + sorted(PRESET_ALIASES)
            raise ParameterError(f"unknown preset {name!r}; known: {known}")
        raw = PRESET_WEIGHTS[key]
        total = math.fsum(raw)
        return cls(psi=psi, weights=tuple(w / total for w in raw), clip_max=clip_max)

    @property
    def bin_edges(self):
        return tuple(self.psi) + (self.clip_max,)


@dataclass(frozen=True)
class AllocationPlan:
    """Per-instance RoI counts; entries are (instance_id, category_id, count)."""

    entries: tuple
    total: int

    def per_category(self):
        out = {}
        for _, cat, count in self.entries:
            out[cat] = out.get(cat, 0) + count
        return out

    def slots(self):
        """One (instance_id, category_id) per RoI to generate, in plan order."""
        for inst, cat, count in self.entries:
            for _ in range(count):
                yield inst, cat


@dataclass(frozen=True)
class GeneratedRoI:
    """Output box with provenance back to its ground truth."""

    box: Box
    gt_instance_id: int
    category_id: int
    target_iou: float
    achieved_iou: float


def fg_balanced_roi_alloc(gts: GroundTruthSet, roi_num: int) -> AllocationPlan:
    """Split roi_num evenly over categories, then over instances per category.

    Remainders go round-robin over categories in ascending category_id and
    over instances in input order, so the split is deterministic and
    per-category totals differ by at most one.
    """
    if len(gts) == 0:
        raise ParameterError("cannot allocate RoIs for an empty ground-truth set")
    if roi_num < 1:
        raise ParameterError(f"roi_num must be >= 1, got {roi_num}")
    categories = gts.categories
    ncat = len(categories)
    base, rem = divmod(roi_num, ncat)
    cat_budget = {
        cat: base + (1 if i < rem else 0) for i, cat in enumerate(categories)
    }
    entries = []
    for cat in categories:
        members = [gt for gt in gts if gt.category_id == cat]
        share, extra = divmod(cat_budget[cat], len(members))
        for j, gt in enumerate(members):
            entries.append(
                (gt.instance_id, cat, share + (1 if j < extra else 0))
            )
    return AllocationPlan(entries=tuple(entries), total=roi_num)


def assign_target_ious(plan: AllocationPlan, spec: IoUDistributionSpec, rng):
    """Draw one target IoU per allocated slot and shuffle before pairing.

    Each slot samples a bin from the weights, then a uniform value inside
    that bin (the last bin ends at clip_max); targets are clipped at
    clip_max and the whole list is shuffled across the batch before being
    associated with instances.
    """
    slots = list(plan.slots())
    n = len(slots)
    edges = spec.bin_edges
    cumulative = np.cumsum(np.asarray(spec.weights, dtype=float))
    targets = np.empty(n)
    for i in range(n):
        k = rng.weighted_index(cumulative)
        targets[i] = rng.uniform(edges[k], edges[k + 1])
    targets = np.minimum(targets, spec.clip_max)
    perm = rng.permutation(n)
    targets = targets[perm]
    return [(slots[i][0], float(targets[i])) for i in range(n)]


def gen_rois(
    gts: GroundTruthSet,
    plan: AllocationPlan,
    spec: IoUDistributionSpec,
    rng,
    *,
    proposal=DEFAULT_PROPOSAL,
    trace_step: float = DEFAULT_TRACE_STEP,
    budget: int = DEFAULT_ATTEMPT_BUDGET,
):
    """Generate one RoI per allocated slot via the box generator.

    Target IoUs are assigned on the caller's stream; each slot then draws
    from its own child stream, so slots are independent and the batch is
    reproducible regardless of generation order.
    """
    by_instance = gts.by_instance()
    for inst, _cat, _count in plan.entries:
        if inst not in by_instance:
            raise ParameterError(f"plan references unknown instance_id {inst}")
    pairs = assign_target_ious(plan, spec, rng)
    slot_cats = [cat for _, cat in plan.slots()]
    streams = rng.spawn(len(pairs))
    rois = []
    for (inst, target), cat, stream in zip(pairs, slot_cats, streams):
        gt = by_instance[inst]
        try:
            box, record = generate_bb(
                gt.box, target, stream, proposal,
                trace_step=trace_step, budget=budget,
            )
        except GenerationError as exc:
            raise GenerationError(
                f"generation failed for instance {inst} (category {cat}): {exc}"
            ) from exc
        rois.append(
            GeneratedRoI(
                box=box,
                gt_instance_id=inst,
                category_id=cat,
                target_iou=target,
                achieved_iou=record.achieved_iou,
            )
        )
    return rois


def generate_proi(
    gts: GroundTruthSet,
    spec: IoUDistributionSpec,
    roi_num: int,
    rng,
    *,
    proposal=DEFAULT_PROPOSAL,
    trace_step: float = DEFAULT_TRACE_STEP,
    budget: int = DEFAULT_ATTEMPT_BUDGET,
):
    """Allocate, assign targets, and generate the full positive-RoI set."""
    if roi_num == 0:
        return []
    plan = fg_balanced_roi_alloc(gts, roi_num)
    return gen_rois(
        gts, plan, spec, rng,
        proposal=proposal, trace_step=trace_step, budget=budget,
    )
