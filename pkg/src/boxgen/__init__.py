"""boxgen: IoU-constrained box generation and balanced positive-RoI sampling.

Given a reference box and an IoU threshold T, the generator samples a
random box guaranteed to overlap the reference at IoU >= T by drawing its
corners from traced feasible-region polygons. On top of that primitive sit
a class-balanced positive-RoI generator with a controllable target-IoU
distribution, foreground-balanced (OFB) sampling, hard-positive mining
(OHPM), and distribution-analysis tooling.
"""

__version__ = "0.1.0"

from .balance import (
    LabeledRoI,
    OfbWeights,
    default_hardness,
    nms,
    ofb_sample,
    ofb_weights,
    ohpm_select,
)
from .errors import (
    BoxgenError,
    DataError,
    GenerationError,
    ParameterError,
    SamplingError,
)
from .feasible import (
    BRContext,
    DEFAULT_TRACE_STEP,
    FeasiblePolygon,
    br_feasible_polygon,
    tl_feasible_polygon,
    trace_region_boundary,
)
from .generator import (
    GenerationRecord,
    generate_bb,
    generate_bb_batch,
)
from .geometry import (
    UNIT_BOX,
    AffineMap,
    Box,
    area,
    intersection,
    iou,
    normalize_to,
    reflect_about_center,
)
from .proi import (
    AllocationPlan,
    GeneratedRoI,
    GroundTruth,
    GroundTruthSet,
    IoUDistributionSpec,
    PRESET_WEIGHTS,
    assign_target_ious,
    fg_balanced_roi_alloc,
    gen_rois,
    generate_proi,
)
from .rng import SeededRng
from .sampling import (
    CallableProposal,
    GaussianProposal,
    UniformProposal,
    enclosing_rectangle,
    point_in_polygon,
    sample_polygon,
    sample_polygon_with_count,
)
from .analysis import (
    ContourFamily,
    IoUHistogram,
    boundary_contours,
    iou_histogram,
    spatial_stats,
)

__all__ = [
    "AffineMap",
    "AllocationPlan",
    "BRContext",
    "Box",
    "BoxgenError",
    "CallableProposal",
    "ContourFamily",
    "DEFAULT_TRACE_STEP",
    "DataError",
    "FeasiblePolygon",
    "GaussianProposal",
    "GeneratedRoI",
    "GenerationError",
    "GenerationRecord",
    "GroundTruth",
    "GroundTruthSet",
    "IoUDistributionSpec",
    "IoUHistogram",
    "LabeledRoI",
    "OfbWeights",
    "PRESET_WEIGHTS",
    "ParameterError",
    "SamplingError",
    "SeededRng",
    "UNIT_BOX",
    "UniformProposal",
    "area",
    "assign_target_ious",
    "boundary_contours",
    "br_feasible_polygon",
    "default_hardness",
    "enclosing_rectangle",
    "fg_balanced_roi_alloc",
    "gen_rois",
    "generate_bb",
    "generate_bb_batch",
    "generate_proi",
    "intersection",
    "iou",
    "iou_histogram",
    "nms",
    "normalize_to",
    "ofb_sample",
    "ofb_weights",
    "ohpm_select",
    "point_in_polygon",
    "reflect_about_center",
    "sample_polygon",
    "sample_polygon_with_count",
    "spatial_stats",
    "tl_feasible_polygon",
    "trace_region_boundary",
]
