"""Backend selection for the hot kernels.

The numba backend is the default. Set BOXGEN_DISABLE_NUMBA=1 (or call
set_backend("numpy")) to run on the pure-numpy fallback. Both backends
compute identical values, so the choice never affects generated output;
it only trades import/JIT latency against per-call speed.
"""
import os

from . import numpy_impl

NUMBA_AVAILABLE = False
try:
    from . import numba_impl

    NUMBA_AVAILABLE = True
except ImportError:
    numba_impl = None

if os.environ.get("BOXGEN_DISABLE_NUMBA", "0") == "1" or not NUMBA_AVAILABLE:
    impl = numpy_impl
    ACTIVE_BACKEND = "numpy"
else:
    impl = numba_impl
    ACTIVE_BACKEND = "numba"


def set_backend(name):
    """Switch the active backend at runtime ("numba" or "numpy")."""
    global impl, ACTIVE_BACKEND
    if name == "numpy":
        impl = numpy_impl
        ACTIVE_BACKEND = "numpy"
    elif name == "numba":
        if not NUMBA_AVAILABLE:
            raise RuntimeError("numba is not importable in this environment")
        impl = numba_impl
        ACTIVE_BACKEND = "numba"
    else:
        raise ValueError(f"unknown backend {name!r}")


def get_backend():
    return ACTIVE_BACKEND
