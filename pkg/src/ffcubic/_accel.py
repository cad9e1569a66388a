"""JIT switch for the hot kernels.

Set ``FFCUBIC_NUMBA=0`` to run every kernel as plain Python/numpy.  The two
paths execute the same source, so results are identical; only speed differs.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("FFCUBIC_NUMBA", "1") != "0"


def njit(fn=None, **kwargs):
    if not USE_NUMBA:
        return fn if fn is not None else (lambda f: f)
    opts = {"cache": True, "nogil": True}
    opts.update(kwargs)
    if fn is None:
        return numba.njit(**opts)
    return numba.njit(**opts)(fn)


def backend():
    return "numba" if USE_NUMBA else "python"
