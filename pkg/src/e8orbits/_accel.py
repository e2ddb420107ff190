"""Switch between numba-compiled kernels and their plain Python/numpy twins.

Set ``E8ORBITS_NUMBA=0`` before import to run every kernel uncompiled.
The pure path is only practical for small ranks and depth-limited scans.
"""
import os

_flag = os.environ.get("E8ORBITS_NUMBA", "1").strip().lower()
USE_NUMBA = _flag not in ("0", "false", "no", "off")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

numba_default = {
    "nogil": True,
    "cache": True,
    "fastmath": False,
    "boundscheck": False,
}


def njit(func=None, **overrides):
    """``numba.njit`` with project defaults, or the identity when disabled."""
    def wrap(f):
        if not USE_NUMBA:
            return f
        opts = dict(numba_default, **overrides)
        return numba.njit(**opts)(f)

    if func is not None:
        return wrap(func)
    return wrap


def backend_name():
    return "numba" if USE_NUMBA else "python"
