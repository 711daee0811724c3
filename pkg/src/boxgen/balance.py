"""Foreground-balanced sampling and hard-positive selection over labeled RoIs.

OFB sampling weights every RoI by 1/(C * k_c) so each category carries the
same expected mass regardless of instance counts. OHPM over-generates a
candidate pool, scores it with an injected hardness function, prunes with
NMS, and keeps the highest-scoring survivors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ParameterError
from .geometry import Box
from .proi import IoUDistributionSpec, generate_proi

DEFAULT_NMS_IOU = 0.7


@dataclass(frozen=True)
class LabeledRoI:
    """RoI with a category and a non-negative hardness score."""

    box: Box
    category_id: int
    score: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.score):
            raise ParameterError(f"score must be finite, got {self.score}")


@dataclass(frozen=True)
class OfbWeights:
    """Per-RoI probabilities 1/(C * k_c); they sum to 1 by construction."""

    probabilities: np.ndarray
    category_counts: dict


def ofb_weights(rois) -> OfbWeights:
    """Foreground-balanced multinomial weights over the given RoIs."""
    if len(rois) == 0:
        raise ParameterError("cannot weight an empty RoI list")
    counts = {}
    for r in rois:
        counts[r.category_id] = counts.get(r.category_id, 0) + 1
    c = len(counts)
    probs = np.array([1.0 / (c * counts[r.category_id]) for r in rois])
    return OfbWeights(probabilities=probs, category_counts=counts)


def ofb_sample(rois, n, rng, with_replacement: bool = True):
    """Multinomial draw of n RoIs under the foreground-balanced weights.

    Without replacement the draw is sequential with renormalization, which
    requires n <= len(rois).
    """
    if n < 1:
        raise ParameterError(f"sample size must be >= 1, got {n}")
    if not with_replacement and n > len(rois):
        raise ParameterError(
            f"cannot draw {n} without replacement from {len(rois)} RoIs"
        )
    weights = ofb_weights(rois).probabilities
    if with_replacement:
        cumulative = np.cumsum(weights)
        return [rois[rng.weighted_index(cumulative)] for _ in range(n)]
    remaining = weights.copy()
    out = []
    for _ in range(n):
        cumulative = np.cumsum(remaining)
        idx = rng.weighted_index(cumulative)
        out.append(rois[idx])
        remaining[idx] = 0.0
    return out


def nms(candidates, iou_threshold: float = DEFAULT_NMS_IOU):
    """Greedy descending-score suppression; ties break by input index.

    A candidate is dropped when its IoU with any already kept box reaches
    the threshold, so the kept set is an antichain under that relation.
    """
    if not (0.0 < iou_threshold <= 1.0):
        raise ParameterError(f"iou_threshold must lie in (0, 1], got {iou_threshold}")
    n = len(candidates)
    if n == 0:
        return []
    boxes = np.array([c.box.as_tuple() for c in candidates])
    scores = np.array([c.score for c in candidates])
    order = np.lexsort((np.arange(n), -scores))
    keep = []
    kept_boxes = np.empty((0, 4))
    for idx in order:
        bx1, by1, bx2, by2 = boxes[idx]
        if kept_boxes.shape[0]:
            overlaps = _kernels.impl.iou_one_vs_many(bx1, by1, bx2, by2, kept_boxes)
            if np.any(overlaps >= iou_threshold):
                continue
        keep.append(int(idx))
        kept_boxes = np.vstack([kept_boxes, boxes[idx]])
    return [candidates[i] for i in keep]


def default_hardness(roi) -> float:
    """Hardness proxy when no external score is injected: 1 - achieved IoU."""
    return 1.0 - roi.achieved_iou


def ohpm_select(
    gts,
    spec: IoUDistributionSpec,
    pool_size: int,
    keep: int,
    rng,
    scorer=default_hardness,
    nms_iou: float = DEFAULT_NMS_IOU,
    **gen_kwargs,
):
    """Over-generate, score, NMS-prune, and keep the hardest positives.

    Generates pool_size RoIs, scores each with the injected scorer, runs
    greedy NMS on the scores, and returns the keep highest-scoring
    survivors (fewer if NMS leaves fewer).
    """
    if keep < 1 or pool_size < keep:
        raise ParameterError(
            f"need pool_size >= keep >= 1, got pool_size={pool_size}, keep={keep}"
        )
    pool = generate_proi(gts, spec, pool_size, rng, **gen_kwargs)
    labeled = [
        LabeledRoI(box=r.box, category_id=r.category_id, score=float(scorer(r)))
        for r in pool
    ]
    survivors = nms(labeled, nms_iou)
    index_of = {id(l): i for i, l in enumerate(labeled)}
    return [pool[index_of[id(l)]] for l in survivors[:keep]]
