"""Kernel compilation switch.

Hot loops live in :mod:`calboost.kernels` and are written so they run both
as plain Python/numpy and under numba's nopython mode.  Set the environment
variable ``CALBOOST_NO_NUMBA=1`` before import to force the pure-numpy
fallback (useful for debugging and for the kernel benchmark).
"""

import os

NUMBA_DISABLED = os.environ.get("CALBOOST_NO_NUMBA", "").strip() in {"1", "true", "yes"}

if not NUMBA_DISABLED:
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a hard dep, but be graceful
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False


def maybe_njit(func):
    """Apply ``numba.njit(cache=True)`` unless the fallback is selected."""
    if NUMBA_ENABLED:
        return _njit(cache=True)(func)
    return func
