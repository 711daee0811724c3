"""Numba-compiled implementations of the hot kernels.

Mirrors numpy_impl function for function with identical arithmetic
expressions (fastmath stays off), so results are bit-identical across the
two backends. error_model="numpy" keeps IEEE division semantics.
"""
import numpy as np
from numba import njit

_TINY = 1e-12

_JIT = {"cache": True, "error_model": "numpy"}


@njit(**_JIT)
def sweep(lo, hi, step):
    span = hi - lo
    if span <= 0.0:
        out = np.empty(1)
        out[0] = lo
        return out
    n = int(np.ceil(span / step))
    out = np.empty(n + 1)
    for i in range(n):
        out[i] = lo + step * i
    out[n] = hi
    return out


@njit(**_JIT)
def tl_region_curve(region, x1, y1, x2, y2, t, step):
    a = (x2 - x1) * (y2 - y1)
    if region == 1:
        xs = sweep(x1, x2 - (x2 - x1) * t, step)
        n = xs.shape[0]
        ys = np.empty(n)
        for i in range(n):
            c = (x2 - xs[i]) * (y2 - y1)
            ys[i] = y2 - (c / t + c - a) / (x2 - xs[i])
    elif region == 2:
        ys = sweep(y1, y2 - a * t / (x2 - x1), step)
        n = ys.shape[0]
        xs = np.empty(n)
        for i in range(n):
            xs[i] = x2 - t * a / (y2 - ys[i])
    elif region == 3:
        ys = sweep(y1, y2 - a * t / (x2 - x1), step)
        n = ys.shape[0]
        xs = np.empty(n)
        for i in range(n):
            c = (x2 - x1) * (y2 - ys[i])
            xs[i] = x2 - (c / t - a + c) / (y2 - ys[i])
    else:
        ys = sweep((y2 * (t - 1.0) + y1) / t, y1, step)
        n = ys.shape[0]
        xs = np.empty(n)
        for i in range(n):
            xs[i] = x2 - a / (t * (y2 - ys[i]))
    return xs, ys, 0


@njit(**_JIT)
def br_region_curve(region, x1, y1, x2, y2, tlx, tly, t, step):
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
        n = ys.shape[0]
        xs = np.empty(n)
        den = np.empty(n)
        for i in range(n):
            c = (x2 - al) * (ys[i] - be)
            den[i] = ys[i] - tly
            xs[i] = tlx + (c / t + c - a) / den[i]
    elif region == 2:
        xs = sweep(x2, tlx + amax / (y2 - tly), step)
        n = xs.shape[0]
        ys = np.empty(n)
        den = np.empty(n)
        for i in range(n):
            den[i] = xs[i] - tlx
            ys[i] = tly + amax / den[i]
    elif region == 3:
        ys = sweep(y2, tly + amax / (x2 - tlx), step)
        n = ys.shape[0]
        xs = np.empty(n)
        den = np.empty(n)
        for i in range(n):
            den[i] = (t + 1.0) * (y2 - be) - t * (ys[i] - tly)
            xs[i] = (t * a + (t + 1.0) * al * (y2 - be) - t * tlx * (ys[i] - tly)) / den[i]
    else:
        xmin = (t * a + (t + 1.0) * al * (y2 - be) - t * tlx * (y2 - tly)) / (
            (t + 1.0) * (y2 - be) - t * (y2 - tly)
        )
        xs = sweep(xmin, x2, step)
        n = xs.shape[0]
        ys = np.empty(n)
        den = np.empty(n)
        for i in range(n):
            den[i] = (t + 1.0) * (xs[i] - al) - t * (xs[i] - tlx)
            ys[i] = (t * a + (t + 1.0) * be * (xs[i] - al) - t * tly * (xs[i] - tlx)) / den[i]
    n = xs.shape[0]
    keep = 0
    for i in range(n):
        if abs(den[i]) > _TINY and np.isfinite(xs[i]) and np.isfinite(ys[i]):
            keep += 1
    skipped = n - keep
    if skipped == 0:
        return xs, ys, 0
    ox = np.empty(keep)
    oy = np.empty(keep)
    k = 0
    for i in range(n):
        if abs(den[i]) > _TINY and np.isfinite(xs[i]) and np.isfinite(ys[i]):
            ox[k] = xs[i]
            oy[k] = ys[i]
            k += 1
    return ox, oy, skipped


@njit(**_JIT)
def pip_parity(px, py, xs, ys):
    n = xs.shape[0]
    if n < 3:
        return False
    inside = False
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        yi = ys[i]
        yj = ys[j]
        if (yi > py) != (yj > py):
            xc = xs[i] + (py - yi) * (xs[j] - xs[i]) / (yj - yi)
            if px < xc:
                inside = not inside
    return inside


@njit(**_JIT)
def pip_mindist2(px, py, xs, ys):
    n = xs.shape[0]
    best = np.inf
    j = n - 1
    for i in range(n):
        dx = xs[i] - xs[j]
        dy = ys[i] - ys[j]
        l2 = dx * dx + dy * dy
        if l2 > 0.0:
            s = ((px - xs[j]) * dx + (py - ys[j]) * dy) / l2
            if s < 0.0:
                s = 0.0
            elif s > 1.0:
                s = 1.0
        else:
            s = 0.0
        ex = xs[j] + s * dx - px
        ey = ys[j] + s * dy - py
        d2 = ex * ex + ey * ey
        if d2 < best:
            best = d2
        j = i
    return best


@njit(**_JIT)
def points_in_polygon_parity(px, py, xs, ys):
    m = px.shape[0]
    parity = np.zeros(m, dtype=np.uint8)
    n = xs.shape[0]
    if n < 3 or m == 0:
        return parity
    order = np.argsort(py)
    py_sorted = py[order]
    for e in range(n):
        j = e + 1
        if j == n:
            j = 0
        y1e = ys[e]
        y2e = ys[j]
        ylo = min(y1e, y2e)
        yhi = max(y1e, y2e)
        lo = np.searchsorted(py_sorted, ylo, side="left")
        hi = np.searchsorted(py_sorted, yhi, side="left")
        if hi <= lo:
            continue
        x1e = xs[e]
        dxe = xs[j] - x1e
        dye = y2e - y1e
        for k in range(lo, hi):
            p = order[k]
            xc = x1e + (py[p] - y1e) * dxe / dye
            if px[p] < xc:
                parity[p] ^= np.uint8(1)
    return parity


@njit(**_JIT)
def scanline_grid(xs, ys, gx, gy):
    nx = gx.shape[0]
    ny = gy.shape[0]
    out = np.zeros((ny, nx), dtype=np.uint8)
    n = xs.shape[0]
    if n < 3:
        return out
    buf = np.empty(n)
    for r in range(ny):
        pyv = gy[r]
        cnt = 0
        for i in range(n):
            j = i + 1
            if j == n:
                j = 0
            yi = ys[i]
            yj = ys[j]
            if (yi > pyv) != (yj > pyv):
                buf[cnt] = xs[i] + (pyv - yi) * (xs[j] - xs[i]) / (yj - yi)
                cnt += 1
        if cnt == 0:
            continue
        xc = np.sort(buf[:cnt])
        idx = np.searchsorted(xc, gx, side="right")
        for c in range(nx):
            out[r, c] = np.uint8((cnt - idx[c]) & 1)
    return out


@njit(**_JIT)
def iou_one_vs_many(bx1, by1, bx2, by2, boxes):
    n = boxes.shape[0]
    out = np.zeros(n)
    a = (bx2 - bx1) * (by2 - by1)
    for i in range(n):
        iw = min(bx2, boxes[i, 2]) - max(bx1, boxes[i, 0])
        ih = min(by2, boxes[i, 3]) - max(by1, boxes[i, 1])
        if iw > 0.0 and ih > 0.0:
            inter = iw * ih
            if inter > 0.0:
                ab = (boxes[i, 2] - boxes[i, 0]) * (boxes[i, 3] - boxes[i, 1])
                out[i] = inter / (a + ab - inter)
    return out


@njit(**_JIT)
def corner_iou_field(fx, fy, x1, y1, x2, y2, gx, gy, tl_kind):
    nx = gx.shape[0]
    ny = gy.shape[0]
    out = np.zeros((ny, nx))
    a = (x2 - x1) * (y2 - y1)
    for r in range(ny):
        for c in range(nx):
            if tl_kind:
                bx1 = gx[c]
                by1 = gy[r]
                bx2 = fx
                by2 = fy
            else:
                bx1 = fx
                by1 = fy
                bx2 = gx[c]
                by2 = gy[r]
            if bx1 < bx2 and by1 < by2:
                iw = min(x2, bx2) - max(x1, bx1)
                ih = min(y2, by2) - max(y1, by1)
                if iw < 0.0:
                    iw = 0.0
                if ih < 0.0:
                    ih = 0.0
                inter = iw * ih
                if inter > 0.0:
                    ab = (bx2 - bx1) * (by2 - by1)
                    out[r, c] = inter / (a + ab - inter)
    return out


@njit(**_JIT)
def shoelace_signed_area(xs, ys):
    n = xs.shape[0]
    s = 0.0
    j = n - 1
    for i in range(n):
        s += xs[j] * ys[i] - xs[i] * ys[j]
        j = i
    return 0.5 * s
