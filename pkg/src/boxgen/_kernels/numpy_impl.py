"""Vectorized numpy implementations of the hot kernels.

This is the fallback backend; numba_impl mirrors every function with the
same arithmetic expressions so both backends produce bit-identical values.
Keep formula spelling in sync between the two files.
"""
import numpy as np

_TINY = 1e-12


def sweep(lo, hi, step):
    """Sample points lo, lo+step, ... plus the exact endpoint hi."""
    span = hi - lo
    if span <= 0.0:
        return np.array([lo])
    n = int(np.ceil(span / step))
    out = np.empty(n + 1)
    out[:n] = lo + step * np.arange(n)
    out[n] = hi
    return out


def tl_region_curve(region, x1, y1, x2, y2, t, step):
    """Level curve IoU == t for one quadrant of the top-left corner space.

    The bottom-right corner is held at (x2, y2). Returns (xs, ys, skipped)
    in natural ascending-sweep order.
    """
    a = (x2 - x1) * (y2 - y1)
    if region == 1:
        xs = sweep(x1, x2 - (x2 - x1) * t, step)
        c = (x2 - xs) * (y2 - y1)
        ys = y2 - (c / t + c - a) / (x2 - xs)
    elif region == 2:
        ys = sweep(y1, y2 - a * t / (x2 - x1), step)
        xs = x2 - t * a / (y2 - ys)
    elif region == 3:
        ys = sweep(y1, y2 - a * t / (x2 - x1), step)
        c = (x2 - x1) * (y2 - ys)
        xs = x2 - (c / t - a + c) / (y2 - ys)
    elif region == 4:
        ys = sweep((y2 * (t - 1.0) + y1) / t, y1, step)
        xs = x2 - a / (t * (y2 - ys))
    else:
        raise ValueError("region must be 1..4")
    return xs, ys, 0


def br_region_curve(region, x1, y1, x2, y2, tlx, tly, t, step):
    """Level curve IoU == t for one quadrant of the bottom-right corner space.

    The top-left corner is held at (tlx, tly). Returns (xs, ys, skipped);
    sweep points with a vanishing denominator are dropped and counted.
    """
    a = (x2 - x1) * (y2 - y1)
    al = max(tlx, x1)
    be = max(tly, y1)
    cc = (x2 - al) * (y2 - be)
    amax = cc / t + cc - a
    if region == 1:
        ymin = (t * a + (t + 1.0) * be * (x2 - al) - t * tly * (x2 - tlx)) / (
            (t + 1.0) * (x2 - al) - t * (x2 - tlx)
        )
        ys = sweep(ymin, y2, step)
        c = (x2 - al) * (ys - be)
        den = ys - tly
        xs = tlx + (c / t + c - a) / den
    elif region == 2:
        xs = sweep(x2, tlx + amax / (y2 - tly), step)
        den = xs - tlx
        ys = tly + amax / den
    elif region == 3:
        ys = sweep(y2, tly + amax / (x2 - tlx), step)
        den = (t + 1.0) * (y2 - be) - t * (ys - tly)
        xs = (t * a + (t + 1.0) * al * (y2 - be) - t * tlx * (ys - tly)) / den
    elif region == 4:
        xmin = (t * a + (t + 1.0) * al * (y2 - be) - t * tlx * (y2 - tly)) / (
            (t + 1.0) * (y2 - be) - t * (y2 - tly)
        )
        xs = sweep(xmin, x2, step)
        den = (t + 1.0) * (xs - al) - t * (xs - tlx)
        ys = (t * a + (t + 1.0) * be * (xs - al) - t * tly * (xs - tlx)) / den
    else:
        raise ValueError("region must be 1..4")
    ok = np.abs(den) > _TINY
    ok &= np.isfinite(xs) & np.isfinite(ys)
    skipped = int(ok.size - np.count_nonzero(ok))
    if skipped:
        xs = xs[ok]
        ys = ys[ok]
    return xs, ys, skipped


def pip_parity(px, py, xs, ys):
    """Even-odd ray-crossing membership of one point in a closed polygon."""
    n = xs.shape[0]
    if n < 3:
        return False
    x2 = np.roll(xs, -1)
    y2 = np.roll(ys, -1)
    mask = (ys > py) != (y2 > py)
    if not mask.any():
        return False
    with np.errstate(divide="ignore", invalid="ignore"):
        xc = xs[mask] + (py - ys[mask]) * (x2[mask] - xs[mask]) / (y2[mask] - ys[mask])
    return bool(np.count_nonzero(px < xc) & 1)


def pip_mindist2(px, py, xs, ys):
    """Squared distance from a point to the polygon boundary polyline."""
    x2 = np.roll(xs, -1)
    y2 = np.roll(ys, -1)
    dx = x2 - xs
    dy = y2 - ys
    l2 = dx * dx + dy * dy
    with np.errstate(divide="ignore", invalid="ignore"):
        s = ((px - xs) * dx + (py - ys) * dy) / l2
    s = np.where(l2 > 0.0, np.clip(s, 0.0, 1.0), 0.0)
    ex = xs + s * dx - px
    ey = ys + s * dy - py
    return float(np.min(ex * ex + ey * ey))


def points_in_polygon_parity(px, py, xs, ys):
    """Even-odd membership for many points at once.

    Edges interact only with points inside their y-interval, found through
    one sort of the query points, so cost is O((m + n) log m + pairs).
    """
    m = px.shape[0]
    parity = np.zeros(m, dtype=np.uint8)
    n = xs.shape[0]
    if n < 3 or m == 0:
        return parity
    order = np.argsort(py)
    py_sorted = py[order]
    ex2 = np.roll(xs, -1)
    ey2 = np.roll(ys, -1)
    ylo = np.minimum(ys, ey2)
    yhi = np.maximum(ys, ey2)
    lo = np.searchsorted(py_sorted, ylo, side="left")
    hi = np.searchsorted(py_sorted, yhi, side="left")
    counts = hi - lo
    total = int(counts.sum())
    if total == 0:
        return parity
    e_idx = np.repeat(np.arange(n), counts)
    starts = np.cumsum(counts) - counts
    flat = np.arange(total) - np.repeat(starts, counts) + np.repeat(lo, counts)
    p_idx = order[flat]
    x1e = xs[e_idx]
    y1e = ys[e_idx]
    xc = x1e + (py[p_idx] - y1e) * (ex2[e_idx] - x1e) / (ey2[e_idx] - y1e)
    crossing = px[p_idx] < xc
    np.bitwise_xor.at(parity, p_idx[crossing], np.uint8(1))
    return parity


def scanline_grid(xs, ys, gx, gy):
    """Polygon membership rasterized on a regular grid; out[r, c] ~ (gx[c], gy[r])."""
    nx = gx.shape[0]
    ny = gy.shape[0]
    out = np.zeros((ny, nx), dtype=np.uint8)
    if xs.shape[0] < 3:
        return out
    ex2 = np.roll(xs, -1)
    ey2 = np.roll(ys, -1)
    for r in range(ny):
        pyv = gy[r]
        mask = (ys > pyv) != (ey2 > pyv)
        if not mask.any():
            continue
        xc = xs[mask] + (pyv - ys[mask]) * (ex2[mask] - xs[mask]) / (ey2[mask] - ys[mask])
        xc.sort()
        idx = np.searchsorted(xc, gx, side="right")
        out[r] = ((xc.shape[0] - idx) & 1).astype(np.uint8)
    return out


def iou_one_vs_many(bx1, by1, bx2, by2, boxes):
    """IoU of one box against each row of an (n, 4) array."""
    iw = np.minimum(bx2, boxes[:, 2]) - np.maximum(bx1, boxes[:, 0])
    ih = np.minimum(by2, boxes[:, 3]) - np.maximum(by1, boxes[:, 1])
    iw = np.maximum(iw, 0.0)
    ih = np.maximum(ih, 0.0)
    inter = iw * ih
    a = (bx2 - bx1) * (by2 - by1)
    ab = (boxes[:, 2] - boxes[:, 0]) * (boxes[:, 3] - boxes[:, 1])
    out = np.zeros(boxes.shape[0])
    pos = inter > 0.0
    out[pos] = inter[pos] / (a + ab[pos] - inter[pos])
    return out


def corner_iou_field(fx, fy, x1, y1, x2, y2, gx, gy, tl_kind):
    """IoU of corner-completed boxes against [x1,y1,x2,y2] over a grid.

    tl_kind=True: candidate box is [gx, gy, fx, fy]; otherwise [fx, fy, gx, gy].
    Grid points that do not form a valid box get IoU 0.
    """
    cx = gx[np.newaxis, :]
    cy = gy[:, np.newaxis]
    if tl_kind:
        bx1, by1 = cx, cy
        bx2 = np.full_like(cx, fx)
        by2 = np.full_like(cy, fy)
    else:
        bx1 = np.full_like(cx, fx)
        by1 = np.full_like(cy, fy)
        bx2, by2 = cx, cy
    valid = (bx1 < bx2) & (by1 < by2)
    iw = np.minimum(x2, bx2) - np.maximum(x1, bx1)
    ih = np.minimum(y2, by2) - np.maximum(y1, by1)
    iw = np.maximum(iw, 0.0)
    ih = np.maximum(ih, 0.0)
    inter = iw * ih
    a = (x2 - x1) * (y2 - y1)
    ab = (bx2 - bx1) * (by2 - by1)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = inter / (a + ab - inter)
    return np.where(valid & (inter > 0.0), vals, 0.0)


def shoelace_signed_area(xs, ys):
    """Signed polygon area; positive for counterclockwise vertex order."""
    return 0.5 * float(np.sum(xs * np.roll(ys, -1) - np.roll(xs, -1) * ys))
