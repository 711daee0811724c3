"""Benchmark the numba kernels against the pure-numpy fallback.

Times every hot kernel on representative workloads plus one end-to-end
generation run per backend. Run from the repository root:

    python3 benchmarks/bench_backends.py
"""
import time

import numpy as np

from boxgen import Box, SeededRng, UNIT_BOX, generate_bb_batch
from boxgen import _kernels, feasible
from boxgen._kernels import numpy_impl

if _kernels.NUMBA_AVAILABLE:
    from boxgen._kernels import numba_impl
else:
    numba_impl = None
    print("numba unavailable; benchmarking the numpy backend only\n")


def timeit(fn, *args, repeat=20):
    fn(*args)  # warmup (and JIT compile on the numba side)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels():
    poly = feasible.tl_feasible_polygon(UNIT_BOX, 0.5)
    xs, ys = poly.xs, poly.ys
    gen = np.random.default_rng(0)
    px = gen.uniform(-1.2, 0.7, 10_000)
    py = gen.uniform(-1.2, 0.7, 10_000)
    gx = np.linspace(-1.2, 0.7, 381)
    gy = np.linspace(-1.2, 0.7, 381)
    boxes = np.empty((1000, 4))
    boxes[:, 0] = gen.uniform(-1, 0.5, 1000)
    boxes[:, 1] = gen.uniform(-1, 0.5, 1000)
    boxes[:, 2] = boxes[:, 0] + gen.uniform(0.1, 1.5, 1000)
    boxes[:, 3] = boxes[:, 1] + gen.uniform(0.1, 1.5, 1000)

    cases = [
        ("tl_region_curve (t=0.5)",
         lambda impl: impl.tl_region_curve(3, 0.0, 0.0, 1.0, 1.0, 0.5, 1e-4)),
        ("br_region_curve (t=0.5)",
         lambda impl: impl.br_region_curve(4, 0.0, 0.0, 1.0, 1.0, 0.1, 0.05, 0.5, 1e-4)),
        (f"pip_parity ({len(xs)} vertices)",
         lambda impl: impl.pip_parity(0.1, 0.1, xs, ys)),
        ("points_in_polygon_parity (10K pts)",
         lambda impl: impl.points_in_polygon_parity(px, py, xs, ys)),
        ("scanline_grid (381x381)",
         lambda impl: impl.scanline_grid(xs, ys, gx, gy)),
        ("corner_iou_field (381x381)",
         lambda impl: impl.corner_iou_field(1.0, 1.0, 0.0, 0.0, 1.0, 1.0, gx, gy, True)),
        ("iou_one_vs_many (1K boxes)",
         lambda impl: impl.iou_one_vs_many(0.0, 0.0, 1.0, 1.0, boxes)),
    ]

    print(f"{'kernel':40s} {'numpy':>12s} {'numba':>12s} {'speedup':>9s}")
    print("-" * 77)
    for name, call in cases:
        t_np = timeit(call, numpy_impl)
        if numba_impl is not None:
            t_nb = timeit(call, numba_impl)
            print(f"{name:40s} {t_np * 1e3:9.3f} ms {t_nb * 1e3:9.3f} ms {t_np / t_nb:8.1f}x")
        else:
            print(f"{name:40s} {t_np * 1e3:9.3f} ms {'-':>12s} {'-':>9s}")


def bench_end_to_end(n=2000):
    ref = Box(0.3, 0.3, 0.6, 0.6)
    print(f"\nend-to-end: {n} generated boxes at t=0.5 (reference {ref.as_tuple()})")
    results = {}
    backends = ["numpy"] + (["numba"] if numba_impl is not None else [])
    for backend in backends:
        _kernels.set_backend(backend)
        feasible._unit_tl_polygon.cache_clear()
        generate_bb_batch(ref, 0.5, 10, SeededRng(1))  # warmup
        t0 = time.perf_counter()
        generate_bb_batch(ref, 0.5, n, SeededRng(2))
        results[backend] = time.perf_counter() - t0
        print(f"  {backend:6s}: {results[backend]:6.2f} s "
              f"({results[backend] / n * 1e3:.2f} ms/box)")
    if len(results) == 2:
        print(f"  speedup: {results['numpy'] / results['numba']:.1f}x")
    if numba_impl is not None:
        _kernels.set_backend("numba")
        feasible._unit_tl_polygon.cache_clear()


if __name__ == "__main__":
    print(f"active backend at import: {_kernels.ACTIVE_BACKEND}\n")
    bench_kernels()
    bench_end_to_end()
