"""Select the numba-compiled kernels or the pure-numpy fallbacks.

Set ``EPGLAB_NUMBA=0`` to force the numpy path (also used when numba is not
importable).  The choice is read once at import time; tests flip it through
:func:`use_numba`.
"""

from __future__ import annotations

import os

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_enabled = HAVE_NUMBA and os.environ.get("EPGLAB_NUMBA", "1").lower() not in ("0", "false", "no", "off")


def numba_enabled() -> bool:
    return _enabled


def use_numba(flag: bool) -> bool:
    """Switch backends at runtime; returns the previous setting."""
    global _enabled
    previous = _enabled
    _enabled = bool(flag) and HAVE_NUMBA
    return previous


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if HAVE_NUMBA:
        from numba import njit as _njit

        return _njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda fn: fn
