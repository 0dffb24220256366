"""Numba switch.

Kernels are written once and decorated with :func:`njit`. When numba is
missing, or ``BOSONIC_POLYTOPE_NUMBA=0`` is set in the environment, the
decorator is the identity and callers pick the vectorized numpy path
instead (see ``kernels.py``).
"""

import os

_FLAG = os.environ.get("BOSONIC_POLYTOPE_NUMBA", "1").strip().lower()

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and _FLAG not in ("0", "false", "no", "off")


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise a no-op decorator."""
    if HAS_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def decorator(func):
        return func

    return decorator
