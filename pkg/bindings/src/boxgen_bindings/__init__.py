"""Flat-array bridge to the boxgen generators for training pipelines.

Every entry point marshals numpy arrays into boxgen's domain types, calls
the library, and flattens the result back; no generation logic lives here.
Seeded calls are bit-identical to native library calls with the same seed.
Errors raised by the library (all ValueError/RuntimeError subclasses)
propagate unchanged with their original messages.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from boxgen import (
    Box,
    GroundTruthSet,
    IoUDistributionSpec,
    LabeledRoI,
    ParameterError,
    SeededRng,
    generate_bb_batch,
    generate_proi,
    ofb_sample,
    ohpm_select,
)

__version__ = "0.1.0"

__all__ = [
    "BoxedBatch",
    "bridge_generate_bb",
    "bridge_generate_proi",
    "bridge_ofb_sample",
    "bridge_ohpm_select",
]


@dataclass(frozen=True, eq=False)
class BoxedBatch:
    """RoI batch as parallel flat arrays for cheap boundary crossing."""

    coords: np.ndarray        # (n, 4) float64, x1 y1 x2 y2 rows
    category_ids: np.ndarray  # (n,) int64
    target_ious: np.ndarray   # (n,) float64
    achieved_ious: np.ndarray  # (n,) float64

    def __post_init__(self):
        n = self.coords.shape[0]
        if self.coords.ndim != 2 or self.coords.shape[1] != 4:
            raise ParameterError(f"coords must be (n, 4), got {self.coords.shape}")
        for name in ("category_ids", "target_ious", "achieved_ious"):
            arr = getattr(self, name)
            if arr.shape != (n,):
                raise ParameterError(f"{name} must have shape ({n},), got {arr.shape}")

    def __len__(self):
        return self.coords.shape[0]


def _empty_batch():
    return BoxedBatch(
        coords=np.empty((0, 4)),
        category_ids=np.empty(0, dtype=np.int64),
        target_ious=np.empty(0),
        achieved_ious=np.empty(0),
    )


def _rois_to_batch(rois):
    if not rois:
        return _empty_batch()
    return BoxedBatch(
        coords=np.array([r.box.as_tuple() for r in rois]),
        category_ids=np.array([r.category_id for r in rois], dtype=np.int64),
        target_ious=np.array([r.target_iou for r in rois]),
        achieved_ious=np.array([r.achieved_iou for r in rois]),
    )


def _gts_from_arrays(gt_coords, gt_category_ids):
    gt_coords = np.asarray(gt_coords, dtype=float)
    gt_category_ids = np.asarray(gt_category_ids)
    if gt_coords.ndim != 2 or gt_coords.shape[1] != 4:
        raise ParameterError(f"gt_coords must be (m, 4), got {gt_coords.shape}")
    if gt_category_ids.shape != (gt_coords.shape[0],):
        raise ParameterError(
            f"gt_category_ids must have shape ({gt_coords.shape[0]},), "
            f"got {gt_category_ids.shape}"
        )
    boxes = [Box(*row) for row in gt_coords]
    return GroundTruthSet.from_boxes(boxes, gt_category_ids.tolist())


def _spec_from_weights(weights):
    if isinstance(weights, str):
        return IoUDistributionSpec.from_preset(weights)
    return IoUDistributionSpec(weights=tuple(float(w) for w in weights))


def bridge_generate_proi(gt_coords, gt_category_ids, weights, roi_num, seed):
    """Flat-array front for generate_proi; bit-identical to the native call.

    weights is either a preset name or five bin weights summing to 1.
    """
    gts = _gts_from_arrays(gt_coords, gt_category_ids)
    spec = _spec_from_weights(weights)
    rois = generate_proi(gts, spec, int(roi_num), SeededRng(int(seed)))
    return _rois_to_batch(rois)


def bridge_generate_bb(ref, t, count, seed):
    """Flat-array front for batched generate_bb on one reference box."""
    ref = np.asarray(ref, dtype=float)
    if ref.shape != (4,):
        raise ParameterError(f"ref must be a 4-vector, got shape {ref.shape}")
    results = generate_bb_batch(Box(*ref), float(t), int(count), SeededRng(int(seed)))
    if not results:
        return _empty_batch()
    return BoxedBatch(
        coords=np.array([b.as_tuple() for b, _ in results]),
        category_ids=np.zeros(len(results), dtype=np.int64),
        target_ious=np.full(len(results), float(t)),
        achieved_ious=np.array([r.achieved_iou for _, r in results]),
    )


def bridge_ofb_sample(coords, category_ids, n, seed, with_replacement=True):
    """Foreground-balanced draw over flat arrays; returns selected indices."""
    coords = np.asarray(coords, dtype=float)
    category_ids = np.asarray(category_ids)
    rois = [
        LabeledRoI(box=Box(*row), category_id=int(c))
        for row, c in zip(coords, category_ids)
    ]
    index_of = {id(r): i for i, r in enumerate(rois)}
    picked = ofb_sample(rois, int(n), SeededRng(int(seed)), with_replacement)
    return np.array([index_of[id(r)] for r in picked], dtype=np.int64)


def bridge_ohpm_select(
    gt_coords, gt_category_ids, weights, pool_size, keep, seed, nms_iou=0.7,
    scores=None,
):
    """Flat-array front for ohpm_select.

    scores, when given, must hold one externally computed hardness value
    per pool candidate (in generation order); otherwise the default
    1 - achieved IoU scorer applies.
    """
    gts = _gts_from_arrays(gt_coords, gt_category_ids)
    spec = _spec_from_weights(weights)
    if scores is None:
        picked = ohpm_select(
            gts, spec, int(pool_size), int(keep), SeededRng(int(seed)),
            nms_iou=float(nms_iou),
        )
    else:
        scores = np.asarray(scores, dtype=float)
        if scores.shape != (int(pool_size),):
            raise ParameterError(
                f"scores must have shape ({pool_size},), got {scores.shape}"
            )
        counter = iter(range(int(pool_size)))
        picked = ohpm_select(
            gts, spec, int(pool_size), int(keep), SeededRng(int(seed)),
            scorer=lambda roi: float(scores[next(counter)]),
            nms_iou=float(nms_iou),
        )
    return _rois_to_batch(picked)
