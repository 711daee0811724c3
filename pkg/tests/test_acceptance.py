"""Acceptance suite: one test per release criterion, at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL line
per criterion. The heavy draw sets (100K boxes per threshold) are shared
across criteria through a module-scoped fixture.
"""
import numpy as np
import pytest

from boxgen import (
    AffineMap,
    Box,
    GroundTruth,
    GroundTruthSet,
    IoUDistributionSpec,
    LabeledRoI,
    SeededRng,
    UNIT_BOX,
    boundary_contours,
    fg_balanced_roi_alloc,
    generate_bb_batch,
    iou,
    iou_histogram,
    ofb_sample,
    point_in_polygon,
    sample_polygon,
    tl_feasible_polygon,
)
from boxgen._kernels import impl as K
from boxgen.cli import main
from boxgen.feasible import BOTTOM_RIGHT, TOP_LEFT, br_feasible_polygon
from boxgen.oracle import GridSpec, brute_force_corner_region, compare_polygon_to_oracle
from boxgen.proi import PRESET_WEIGHTS, assign_target_ious

THRESHOLDS = (0.5, 0.6, 0.7, 0.8, 0.9)
N_DRAWS = 100_000
IOU_SLACK = 1e-4


def report(criterion, ok, detail=""):
    print(f"\n[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    assert ok, f"{criterion}: {detail}"


@pytest.fixture(scope="module")
def unit_draws():
    """100K generated boxes per threshold on the unit reference."""
    out = {}
    for i, t in enumerate(THRESHOLDS):
        results = generate_bb_batch(UNIT_BOX, t, N_DRAWS, SeededRng(1000 + i))
        boxes = np.array([b.as_tuple() for b, _ in results])
        achieved = K.iou_one_vs_many(0.0, 0.0, 1.0, 1.0, boxes)
        out[t] = (boxes, achieved)
    return out


def test_c01_iou_contract(unit_draws):
    violations = {}
    for t in THRESHOLDS:
        _, achieved = unit_draws[t]
        violations[t] = int(np.count_nonzero(achieved < t - IOU_SLACK))
    ok = all(v == 0 for v in violations.values())
    report(
        "C01 IoU contract",
        ok,
        f"{N_DRAWS} draws per t in {THRESHOLDS}, violations {violations}",
    )


def test_c02_iou_invariance():
    gen = np.random.default_rng(2024)
    worst_scale = 0.0
    worst_shift = 0.0
    for _ in range(10_000):
        x1, y1, u1, v1 = gen.uniform(-10, 10, 4)
        b = Box(x1, y1, x1 + gen.uniform(0.01, 5), y1 + gen.uniform(0.01, 5))
        c = Box(u1, v1, u1 + gen.uniform(0.01, 5), v1 + gen.uniform(0.01, 5))
        base = iou(b, c)
        kx, ky = gen.uniform(0.05, 20, 2)
        dx, dy = gen.uniform(-100, 100, 2)
        ms = AffineMap(kx, ky, 0.0, 0.0)
        mt = AffineMap(1.0, 1.0, dx, dy)
        worst_scale = max(worst_scale, abs(iou(ms.apply(b), ms.apply(c)) - base))
        worst_shift = max(worst_shift, abs(iou(mt.apply(b), mt.apply(c)) - base))
    ok = worst_scale <= 1e-9 and worst_shift <= 1e-9
    report(
        "C02 IoU invariance",
        ok,
        f"10K tuples, max scale err {worst_scale:.2e}, max shift err {worst_shift:.2e}",
    )


def test_c03_oracle_equivalence():
    rng = SeededRng(3000)
    interior = 0
    checked = 0
    for _ in range(50):
        x1 = rng.uniform(-0.5, 0.5)
        y1 = rng.uniform(-0.5, 0.5)
        b = Box(x1, y1, x1 + rng.uniform(0.2, 1.5), y1 + rng.uniform(0.2, 1.5))
        t = rng.uniform(0.45, 0.92)
        tl_poly = tl_feasible_polygon(b, t)
        grid = GridSpec.around_polygon(tl_poly)
        field = brute_force_corner_region(b, t, TOP_LEFT, b.bottom_right, grid)
        rep = compare_polygon_to_oracle(tl_poly, field, grid)
        interior += rep.interior_disagreements
        checked += 1
        tl_pt = sample_polygon(tl_poly, rng=rng)
        br_poly = br_feasible_polygon(b, t, tl_pt)
        if br_poly.degenerate:
            continue
        grid_b = GridSpec.around_polygon(br_poly)
        field_b = brute_force_corner_region(b, t, BOTTOM_RIGHT, tl_pt, grid_b)
        rep_b = compare_polygon_to_oracle(br_poly, field_b, grid_b)
        interior += rep_b.interior_disagreements
        checked += 1
    ok = interior == 0
    report(
        "C03 oracle equivalence",
        ok,
        f"50 (b, t) pairs, {checked} polygon checks, {interior} interior disagreements",
    )


def test_c04_contour_family():
    ref = Box(0.3, 0.3, 0.6, 0.6)
    levels = (0.5, 0.6, 0.7, 0.8, 0.9)
    fam1 = boundary_contours(ref, levels)
    fam2 = boundary_contours(ref, levels)
    areas = fam1.areas()
    decreasing = all(a > b for a, b in zip(areas, areas[1:]))
    nested = True
    for lo_idx in range(len(levels) - 1):
        outer = tl_feasible_polygon(ref, levels[lo_idx])
        inner = fam1.polylines[lo_idx + 1]
        for x, y in inner[:: max(len(inner) // 100, 1)]:
            if not point_in_polygon(outer, (x, y)):
                nested = False
    identical = all(
        np.array_equal(p1, p2) for p1, p2 in zip(fam1.polylines, fam2.polylines)
    )
    ok = decreasing and nested and identical
    report(
        "C04 contour family",
        ok,
        f"areas {[f'{a:.4f}' for a in areas]}, nested={nested}, bit-identical={identical}",
    )


def test_c05_source_histogram_shape(unit_draws):
    # base IoU=0.5: histogram of achieved IoUs over the five bin bases
    _, achieved = unit_draws[0.5]
    edges = np.array([0.5, 0.6, 0.7, 0.8, 0.9, 0.95])
    idx = np.clip(np.searchsorted(edges, achieved, side="right") - 1, 0, 4)
    counts = np.bincount(idx, minlength=5)
    monotone = all(counts[i] > counts[i + 1] for i in range(4))
    ratio_ok = counts[0] >= 3 * max(counts[4], 1)
    rs = iou_histogram("right-skew", N_DRAWS, SeededRng(1100))
    ls = iou_histogram("left-skew", N_DRAWS, SeededRng(1101))

    def mass_above(hist, lo):
        e = np.array(hist.edges[:-1])
        return hist.counts[e >= lo].sum() / hist.sample_size

    skew_ok = mass_above(rs, 0.8) > mass_above(ls, 0.8)
    ok = monotone and ratio_ok and skew_ok
    report(
        "C05 source histogram shape",
        ok,
        f"base-0.5 counts {counts.tolist()}, "
        f"right-skew mass>=0.8 {mass_above(rs, 0.8):.3f} vs left-skew {mass_above(ls, 0.8):.3f}",
    )


def test_c06_multinomial_fidelity():
    gts = GroundTruthSet([GroundTruth(box=UNIT_BOX, category_id=1, instance_id=0)])
    plan = fg_balanced_roi_alloc(gts, N_DRAWS)
    worst = {}
    for i, name in enumerate(sorted(PRESET_WEIGHTS)):
        spec = IoUDistributionSpec.from_preset(name)
        pairs = assign_target_ious(plan, spec, SeededRng(1200 + i))
        targets = np.array([t for _, t in pairs])
        edges = np.array(spec.bin_edges)
        idx = np.clip(np.searchsorted(edges, targets, side="right") - 1, 0, 4)
        freqs = np.bincount(idx, minlength=5) / N_DRAWS
        worst[name] = float(np.abs(freqs - np.array(spec.weights)).max())
    ok = all(v <= 0.01 for v in worst.values())
    report(
        "C06 multinomial fidelity",
        ok,
        "max |freq - weight| per preset: "
        + ", ".join(f"{k}={v:.4f}" for k, v in worst.items()),
    )


def test_c07_allocation():
    # 4 + 2 + 2 + 1 instances over four categories, 32 RoIs
    boxes = [Box(0.1 * i, 0.0, 0.1 * i + 0.05, 0.05) for i in range(9)]
    cats = [1, 1, 1, 1, 2, 2, 3, 3, 4]
    gts = GroundTruthSet(
        GroundTruth(box=b, category_id=c, instance_id=i)
        for i, (b, c) in enumerate(zip(boxes, cats))
    )
    plan = fg_balanced_roi_alloc(gts, 32)
    per_cat = plan.per_category()
    ok = per_cat == {1: 8, 2: 8, 3: 8, 4: 8} and plan.total == 32
    report("C07 allocation", ok, f"per-category counts {per_cat}")


def test_c08_ofb_frequencies():
    rois = []
    for cat, k in ((1, 9), (2, 3), (3, 1)):
        for i in range(k):
            x = cat * 10.0 + i
            rois.append(LabeledRoI(box=Box(x, 0, x + 1, 1), category_id=cat))
    picked = ofb_sample(rois, 300_000, SeededRng(1300))
    freq = {c: 0 for c in (1, 2, 3)}
    for r in picked:
        freq[r.category_id] += 1
    errs = {c: abs(freq[c] / 300_000 - 1 / 3) for c in freq}
    ok = all(e <= 0.01 for e in errs.values())
    report(
        "C08 OFB frequencies",
        ok,
        "per-category |freq - 1/3|: "
        + ", ".join(f"{c}={e:.4f}" for c, e in errs.items()),
    )


def test_c09_isotropy(unit_draws):
    boxes, _ = unit_draws[0.5]
    cx = (boxes[:, 0] + boxes[:, 2]) / 2.0 - 0.5
    cy = (boxes[:, 1] + boxes[:, 3]) / 2.0 - 0.5
    ok = abs(cx.mean()) <= 0.01 and abs(cy.mean()) <= 0.01
    report(
        "C09 isotropy",
        ok,
        f"mean center offset ({cx.mean():+.5f}, {cy.mean():+.5f}) over {N_DRAWS} draws",
    )


def test_c10_cli_determinism(tmp_path):
    gt = tmp_path / "gts.csv"
    gt.write_text("0.3,0.3,0.6,0.6,cat=1\n0.1,0.1,0.5,0.4,cat=2\n")
    digests = []
    for name in ("a", "b"):
        out = tmp_path / f"bb-{name}.jsonl"
        assert main([
            "gen-bb", "--ref", "0.2,0.1,0.9,0.8", "--iou", "0.6",
            "--count", "100", "--seed", "424242", "--out", str(out),
        ]) == 0
        digests.append(out.read_bytes())
    bb_ok = digests[0] == digests[1]
    digests = []
    for name in ("c", "d"):
        out = tmp_path / f"proi-{name}.jsonl"
        assert main([
            "gen-proi", "--gt", str(gt), "--preset", "balanced",
            "--roi-num", "32", "--seed", "31337", "--out", str(out),
        ]) == 0
        digests.append(out.read_bytes())
    proi_ok = digests[0] == digests[1]
    ok = bb_ok and proi_ok
    report(
        "C10 CLI determinism",
        ok,
        f"gen-bb byte-identical={bb_ok}, gen-proi byte-identical={proi_ok}",
    )


def test_c11_detector_results_out_of_scope():
    # Detector training metrics (mAP, moLRP) require GPU training of a
    # two-stage detector and are explicitly not reproduced; the property
    # suites above substitute for them.
    report(
        "C11 non-reproducibility note",
        True,
        "detector mAP/moLRP tables are out of scope; property suites substitute",
    )
