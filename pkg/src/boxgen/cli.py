"""Command-line interface.

Every generating subcommand requires an explicit --seed, and identical
invocations over identical inputs produce byte-identical outputs. Exit
codes: 0 success, 2 usage/parameter error, 3 data error, 4 generation
failure.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__, io
from .analysis import boundary_contours, iou_histogram, spatial_stats
from .balance import default_hardness, ofb_sample, ohpm_select
from .errors import DataError, GenerationError, ParameterError, SamplingError
from .feasible import DEFAULT_TRACE_STEP, br_feasible_polygon, tl_feasible_polygon
from .generator import generate_bb_batch
from .geometry import Box
from .oracle import (
    GridSpec,
    brute_force_corner_region,
    compare_polygon_to_oracle,
)
from .proi import PRESET_ALIASES, PRESET_WEIGHTS, IoUDistributionSpec, generate_proi
from .rng import SeededRng
from .sampling import (
    DEFAULT_ATTEMPT_BUDGET,
    DEFAULT_PROPOSAL,
    GaussianProposal,
    sample_polygon,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_GENERATION = 4


def _parse_box(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise ParameterError(f"expected x1,y1,x2,y2, got {text!r}")
    return Box(*(float(p) for p in parts))


def _parse_levels(text):
    return tuple(float(p) for p in text.split(","))


def _parse_weights(text):
    vals = tuple(float(p) for p in text.split(","))
    return IoUDistributionSpec(weights=vals)


def _spec_from_args(args):
    if args.weights is not None:
        if args.preset is not None:
            raise ParameterError("--preset and --weights are mutually exclusive")
        return _parse_weights(args.weights)
    preset = args.preset if args.preset is not None else "balanced"
    return IoUDistributionSpec.from_preset(preset)


def _proposal_from_args(args):
    if getattr(args, "proposal", "uniform") == "gaussian":
        return GaussianProposal()
    return DEFAULT_PROPOSAL


def _single_image_gts(path, fmt, image_id):
    per_image = io.load_ground_truths(path, fmt)
    if not per_image:
        raise DataError(f"{path}: no ground truths to generate from")
    if image_id is not None:
        if image_id not in per_image:
            raise DataError(f"{path}: image id {image_id} not present")
        return per_image[image_id]
    if len(per_image) > 1:
        raise ParameterError(
            f"{path} contains {len(per_image)} images; select one with --image-id"
        )
    return next(iter(per_image.values()))


def _sidecar(args, command, out):
    if out:
        params = {
            k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None
        }
        io.write_config_sidecar(out, command, params)


def _cmd_gen_bb(args):
    ref = _parse_box(args.ref)
    rng = SeededRng(args.seed)
    results = generate_bb_batch(
        ref,
        args.iou,
        args.count,
        rng,
        _proposal_from_args(args),
        trace_step=args.trace_step,
        budget=args.budget,
    )
    if args.out:
        io.write_generated_boxes(results, args.out)
        _sidecar(args, "gen-bb", args.out)
    else:
        for box, record in results:
            print(
                json.dumps(
                    {
                        "box": io._box_json(box),
                        "achieved_iou": io.quantize(record.achieved_iou),
                        "order": record.order,
                    },
                    separators=(", ", ": "),
                )
            )
    return EXIT_OK


def _cmd_gen_proi(args):
    gts = _single_image_gts(args.gt, args.format, args.image_id)
    spec = _spec_from_args(args)
    rng = SeededRng(args.seed)
    rois = generate_proi(
        gts,
        spec,
        args.roi_num,
        rng,
        proposal=_proposal_from_args(args),
        trace_step=args.trace_step,
        budget=args.budget,
    )
    io.write_rois(rois, args.out)
    _sidecar(args, "gen-proi", args.out)
    return EXIT_OK


def _cmd_feasible_space(args):
    ref = _parse_box(args.ref)
    levels = _parse_levels(args.levels)
    if args.corner == "br":
        if args.tl is None:
            raise ParameterError("--corner br requires --tl x,y")
        tl = tuple(float(p) for p in args.tl.split(","))
        polys = [
            br_feasible_polygon(ref, lvl, tl, args.trace_step) for lvl in levels
        ]
        doc = {
            "reference": list(ref.as_tuple()),
            "contours": [
                {
                    "iou_level": lvl,
                    "vertices": [
                        [io.quantize(x), io.quantize(y)] for x, y in p.vertices
                    ],
                }
                for lvl, p in zip(levels, polys)
            ],
        }
        text = json.dumps(doc, separators=(", ", ": ")) + "\n"
        if args.out:
            io._atomic_write(args.out, text)
            _sidecar(args, "feasible-space", args.out)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    family = boundary_contours(ref, levels, args.trace_step)
    if args.out:
        io.write_contours_json(family, args.out)
        _sidecar(args, "feasible-space", args.out)
    else:
        doc = family.to_json_dict()
        for contour in doc["contours"]:
            contour["vertices"] = [
                [io.quantize(x), io.quantize(y)] for x, y in contour["vertices"]
            ]
        sys.stdout.write(json.dumps(doc, separators=(", ", ": ")) + "\n")
    return EXIT_OK


def _cmd_iou_hist(args):
    rng = SeededRng(args.seed)
    hist = iou_histogram(
        args.source, args.n, rng, trace_step=args.trace_step, budget=args.budget
    )
    if args.out:
        io.write_histogram_csv(hist, args.out)
        _sidecar(args, "iou-hist", args.out)
    else:
        for lo, hi, count, density in hist.rows():
            print(f"{lo:.9g},{hi:.9g},{count},{density:.9g}")
    return EXIT_OK


def _cmd_ofb_sample(args):
    rois = io.read_labeled_rois(args.rois)
    rng = SeededRng(args.seed)
    picked = ofb_sample(rois, args.n, rng, with_replacement=not args.no_replacement)
    if args.out:
        io.write_labeled_rois(picked, args.out)
        _sidecar(args, "ofb-sample", args.out)
    else:
        for r in picked:
            print(
                json.dumps(
                    {
                        "box": io._box_json(r.box),
                        "category_id": r.category_id,
                        "score": io.quantize(r.score),
                    },
                    separators=(", ", ": "),
                )
            )
    return EXIT_OK


def _cmd_ohpm(args):
    gts = _single_image_gts(args.gt, args.format, args.image_id)
    spec = _spec_from_args(args)
    rng = SeededRng(args.seed)
    if args.scores:
        scores = io.read_scores(args.scores)
        if len(scores) < args.pool:
            raise DataError(
                f"{args.scores}: need {args.pool} scores, found {len(scores)}"
            )
        counter = iter(range(args.pool))
        scorer = lambda roi: scores[next(counter)]  # noqa: E731
    else:
        scorer = default_hardness
    picked = ohpm_select(
        gts,
        spec,
        args.pool,
        args.keep,
        rng,
        scorer=scorer,
        nms_iou=args.nms_iou,
        trace_step=args.trace_step,
        budget=args.budget,
    )
    io.write_rois(picked, args.out)
    _sidecar(args, "ohpm", args.out)
    return EXIT_OK


def _cmd_spatial_stats(args):
    ref = _parse_box(args.ref)
    pts = io.read_points_csv(args.points)
    report = spatial_stats(
        np.asarray(pts, dtype=float).reshape(-1, 2),
        ref,
        _parse_levels(args.levels),
        args.trace_step,
    )
    if args.out:
        io.write_json_report(report, args.out)
        _sidecar(args, "spatial-stats", args.out)
    else:
        sys.stdout.write(json.dumps(report, separators=(", ", ": ")) + "\n")
    return EXIT_OK


def _cmd_verify(args):
    rng = SeededRng(args.seed)
    failures = 0
    for i in range(args.pairs):
        x1 = rng.uniform(-0.5, 0.5)
        y1 = rng.uniform(-0.5, 0.5)
        b = Box(x1, y1, x1 + rng.uniform(0.2, 1.5), y1 + rng.uniform(0.2, 1.5))
        t = rng.uniform(0.45, 0.92)
        poly = tl_feasible_polygon(b, t, args.trace_step)
        grid = GridSpec.around_polygon(poly, pitch=args.pitch)
        field = brute_force_corner_region(b, t, "top-left", b.bottom_right, grid)
        report = compare_polygon_to_oracle(poly, field, grid)
        status = "ok" if report.ok else "FAIL"
        if not report.ok:
            failures += 1
        print(
            f"pair {i}: t={t:.3f} tl-space {status} "
            f"({report.total_disagreements} near-boundary, "
            f"{report.interior_disagreements} interior)"
        )
        tl_pt = sample_polygon(poly, DEFAULT_PROPOSAL, rng)
        brp = br_feasible_polygon(b, t, tl_pt, args.trace_step)
        if brp.degenerate:
            print(f"pair {i}: t={t:.3f} br-space degenerate (skipped)")
            continue
        grid_b = GridSpec.around_polygon(brp, pitch=args.pitch)
        field_b = brute_force_corner_region(b, t, "bottom-right", tl_pt, grid_b)
        report_b = compare_polygon_to_oracle(brp, field_b, grid_b)
        status = "ok" if report_b.ok else "FAIL"
        if not report_b.ok:
            failures += 1
        print(
            f"pair {i}: t={t:.3f} br-space {status} "
            f"({report_b.total_disagreements} near-boundary, "
            f"{report_b.interior_disagreements} interior)"
        )
    print(f"verify: {failures} failing checks over {args.pairs} pairs")
    return EXIT_OK if failures == 0 else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="boxgen",
        description="Generate IoU-constrained boxes and balanced positive RoI sets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_trace_step(p):
        p.add_argument(
            "--trace-step",
            type=float,
            default=DEFAULT_TRACE_STEP,
            help="boundary sweep precision on the unit frame (default 1e-4)",
        )

    def add_budget(p):
        p.add_argument(
            "--budget",
            type=int,
            default=DEFAULT_ATTEMPT_BUDGET,
            help="rejection-sampling proposal budget per corner (default 10000)",
        )

    p = sub.add_parser("gen-bb", help="generate boxes with IoU >= T to a reference")
    p.add_argument("--ref", required=True, help="reference box x1,y1,x2,y2")
    p.add_argument("--iou", type=float, required=True, help="IoU threshold T")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--proposal", choices=["uniform", "gaussian"], default="uniform")
    p.add_argument("--out")
    add_trace_step(p)
    add_budget(p)
    p.set_defaults(func=_cmd_gen_bb)

    p = sub.add_parser("gen-proi", help="generate a balanced positive-RoI set")
    p.add_argument("--gt", required=True, help="annotation file (COCO JSON or CSV)")
    p.add_argument("--format", choices=["auto", "coco", "csv"], default="auto")
    p.add_argument("--image-id", type=int, default=None)
    p.add_argument("--preset", choices=sorted(PRESET_WEIGHTS) + sorted(PRESET_ALIASES))
    p.add_argument("--weights", help="five comma-separated bin weights")
    p.add_argument("--roi-num", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--proposal", choices=["uniform", "gaussian"], default="uniform")
    p.add_argument("--out", required=True)
    add_trace_step(p)
    add_budget(p)
    p.set_defaults(func=_cmd_gen_proi)

    p = sub.add_parser("feasible-space", help="export feasible-boundary polylines")
    p.add_argument("--ref", required=True)
    p.add_argument("--levels", required=True, help="comma-separated IoU levels")
    p.add_argument("--corner", choices=["tl", "br"], default="tl")
    p.add_argument("--tl", help="fixed top-left point x,y (for --corner br)")
    p.add_argument("--out")
    add_trace_step(p)
    p.set_defaults(func=_cmd_feasible_space)

    p = sub.add_parser("iou-hist", help="achieved-IoU histogram of an RoI source")
    p.add_argument(
        "--source",
        required=True,
        help="preset name or base:T (e.g. balanced, base:0.5)",
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    add_trace_step(p)
    add_budget(p)
    p.set_defaults(func=_cmd_iou_hist)

    p = sub.add_parser("ofb-sample", help="foreground-balanced multinomial sampling")
    p.add_argument("--rois", required=True, help="JSON Lines RoI file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--no-replacement", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_ofb_sample)

    p = sub.add_parser("ohpm", help="online hard positive mining")
    p.add_argument("--gt", required=True)
    p.add_argument("--format", choices=["auto", "coco", "csv"], default="auto")
    p.add_argument("--image-id", type=int, default=None)
    p.add_argument("--preset", choices=sorted(PRESET_WEIGHTS) + sorted(PRESET_ALIASES))
    p.add_argument("--weights")
    p.add_argument("--pool", type=int, default=128)
    p.add_argument("--keep", type=int, default=32)
    p.add_argument("--nms-iou", type=float, default=0.7)
    p.add_argument("--scores", help="file with one external score per pool RoI")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    add_trace_step(p)
    add_budget(p)
    p.set_defaults(func=_cmd_ohpm)

    p = sub.add_parser("spatial-stats", help="occupancy of TL points vs boundaries")
    p.add_argument("--points", required=True, help="CSV of x,y points")
    p.add_argument("--ref", required=True)
    p.add_argument("--levels", required=True)
    p.add_argument("--out")
    add_trace_step(p)
    p.set_defaults(func=_cmd_spatial_stats)

    p = sub.add_parser("verify", help="audit traced polygons against the oracle")
    p.add_argument("--pairs", type=int, default=5)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pitch", type=float, default=0.005)
    add_trace_step(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (GenerationError, SamplingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERATION


if __name__ == "__main__":
    sys.exit(main())
