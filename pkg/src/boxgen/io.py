"""Annotation ingestion and output serialization.

Inputs: COCO-style JSON or a simple CSV of corner-format boxes. Outputs:
JSON Lines for RoIs, CSV for histograms, JSON for polylines and reports.
Coordinates are serialized with 9 significant digits; identical data
always produces identical bytes.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile

from .balance import LabeledRoI
from .errors import DataError, ParameterError
from .geometry import Box
from .proi import GeneratedRoI, GroundTruth, GroundTruthSet

log = logging.getLogger(__name__)


def quantize(x):
    """Round a float to 9 significant digits (stable under re-serialization)."""
    return float(f"{float(x):.9g}")


def _atomic_write(path, text):
    """Write via a temp file and rename, so failures leave no partial output."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".boxgen-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _box_json(b: Box):
    return [quantize(b.x1), quantize(b.y1), quantize(b.x2), quantize(b.y2)]


# ---------------------------------------------------------------------------
# ground-truth ingestion

def load_ground_truths(path, fmt="auto"):
    """Parse an annotation file into per-image ground-truth sets.

    Returns {image_id: GroundTruthSet}. COCO bboxes are converted from
    (x, y, w, h) to corner format; boxes without positive extent are
    rejected with the offending annotation identified.
    """
    if fmt == "auto":
        fmt = "coco" if str(path).endswith(".json") else "csv"
    if fmt == "coco":
        return _load_coco(path)
    if fmt == "csv":
        return _load_csv(path)
    raise ParameterError(f"unknown annotation format {fmt!r}")


def _load_coco(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or "annotations" not in doc:
        raise DataError(f"{path}: expected a COCO-style object with 'annotations'")
    image_ids = {img["id"] for img in doc.get("images", [])}
    per_image = {}
    for counter, ann in enumerate(doc["annotations"]):
        ann_id = ann.get("id", counter)
        image_id = ann.get("image_id")
        if image_ids and image_id not in image_ids:
            raise DataError(
                f"{path}: annotation {ann_id} references unknown image {image_id}"
            )
        bbox = ann.get("bbox")
        if not bbox or len(bbox) != 4:
            raise DataError(f"{path}: annotation {ann_id} has no valid bbox")
        x, y, w, h = (float(v) for v in bbox)
        if w <= 0 or h <= 0:
            raise DataError(
                f"{path}: annotation {ann_id} has non-positive extent "
                f"(w={w}, h={h})"
            )
        category = int(ann.get("category_id", 0))
        if category < 1:
            raise DataError(
                f"{path}: annotation {ann_id} has invalid category_id {category}"
            )
        per_image.setdefault(image_id, []).append(
            GroundTruth(
                box=Box.from_xywh(x, y, w, h),
                category_id=category,
                instance_id=int(ann_id) if isinstance(ann_id, int) else counter,
            )
        )
    if not per_image:
        log.warning("%s: no annotations found", path)
    try:
        return {img: GroundTruthSet(items) for img, items in per_image.items()}
    except ParameterError as exc:
        raise DataError(f"{path}: {exc}") from exc


def _load_csv(path):
    """Rows "x1,y1,x2,y2,cat=K" (or plain K); one implicit image with id 0."""
    items = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 5:
                raise DataError(
                    f"{path}:{lineno}: expected 5 fields x1,y1,x2,y2,cat, got {len(parts)}"
                )
            try:
                coords = [float(v) for v in parts[:4]]
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: bad coordinate: {exc}") from exc
            cat_field = parts[4]
            if cat_field.startswith("cat="):
                cat_field = cat_field[4:]
            try:
                category = int(cat_field)
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: bad category: {exc}") from exc
            try:
                box = Box(*coords)
            except ParameterError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
            if category < 1:
                raise DataError(f"{path}:{lineno}: category must be >= 1")
            items.append(
                GroundTruth(box=box, category_id=category, instance_id=len(items))
            )
    if not items:
        log.warning("%s: no annotations found", path)
        return {}
    return {0: GroundTruthSet(items)}


# ---------------------------------------------------------------------------
# RoI serialization

def roi_to_json(roi: GeneratedRoI):
    return json.dumps(
        {
            "box": _box_json(roi.box),
            "gt_instance_id": roi.gt_instance_id,
            "category_id": roi.category_id,
            "target_iou": quantize(roi.target_iou),
            "achieved_iou": quantize(roi.achieved_iou),
        },
        separators=(", ", ": "),
    )


def write_rois(rois, path):
    """JSON Lines, one RoI per line with stable field order."""
    _atomic_write(path, "".join(roi_to_json(r) + "\n" for r in rois))


def read_rois(path):
    out = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
                out.append(
                    GeneratedRoI(
                        box=Box(*doc["box"]),
                        gt_instance_id=int(doc["gt_instance_id"]),
                        category_id=int(doc["category_id"]),
                        target_iou=float(doc["target_iou"]),
                        achieved_iou=float(doc["achieved_iou"]),
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError, ParameterError) as exc:
                raise DataError(f"{path}:{lineno}: bad RoI record: {exc}") from exc
    return out


def write_generated_boxes(results, path):
    """JSON Lines for raw generator output: (box, record) pairs."""
    lines = []
    for box, record in results:
        lines.append(
            json.dumps(
                {
                    "box": _box_json(box),
                    "achieved_iou": quantize(record.achieved_iou),
                    "order": record.order,
                },
                separators=(", ", ": "),
            )
            + "\n"
        )
    _atomic_write(path, "".join(lines))


def read_labeled_rois(path):
    """Read RoIs with an optional score field (defaults to 0.0)."""
    out = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
                out.append(
                    LabeledRoI(
                        box=Box(*doc["box"]),
                        category_id=int(doc["category_id"]),
                        score=float(doc.get("score", 0.0)),
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError, ParameterError) as exc:
                raise DataError(f"{path}:{lineno}: bad RoI record: {exc}") from exc
    return out


def write_labeled_rois(rois, path):
    lines = []
    for r in rois:
        lines.append(
            json.dumps(
                {
                    "box": _box_json(r.box),
                    "category_id": r.category_id,
                    "score": quantize(r.score),
                },
                separators=(", ", ": "),
            )
            + "\n"
        )
    _atomic_write(path, "".join(lines))


# ---------------------------------------------------------------------------
# analysis outputs

def write_histogram_csv(hist, path):
    lines = [f"# source={hist.source} n={hist.sample_size}\n"]
    lines.append("bin_lo,bin_hi,count,density\n")
    for lo, hi, count, density in hist.rows():
        lines.append(f"{lo:.9g},{hi:.9g},{count},{density:.9g}\n")
    _atomic_write(path, "".join(lines))


def write_contours_json(family, path):
    doc = family.to_json_dict()
    for contour in doc["contours"]:
        contour["vertices"] = [
            [quantize(x), quantize(y)] for x, y in contour["vertices"]
        ]
    _atomic_write(path, json.dumps(doc, separators=(", ", ": ")) + "\n")


def write_json_report(report, path):
    _atomic_write(path, json.dumps(report, separators=(", ", ": ")) + "\n")


def read_points_csv(path):
    """Two-column CSV of x,y points."""
    pts = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise DataError(f"{path}:{lineno}: expected 2 fields x,y")
            try:
                pts.append((float(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: bad coordinate: {exc}") from exc
    return pts


def read_scores(path):
    """One score per line, matching the candidate pool order."""
    scores = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                scores.append(float(line))
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: bad score: {exc}") from exc
    return scores


def write_config_sidecar(out_path, command, params):
    """Echo the resolved run configuration next to the output for provenance."""
    doc = {"command": command, "params": params}
    _atomic_write(
        str(out_path) + ".config.json", json.dumps(doc, separators=(", ", ": ")) + "\n"
    )
