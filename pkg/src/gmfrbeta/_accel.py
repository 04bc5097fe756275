"""Numba detection and the environment switch that disables it.

Set ``GMFRBETA_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is importable. The flag is read once, at import time.
"""

from __future__ import annotations

import os

_FALSY = {"", "0", "false", "no", "off"}


def _flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() not in _FALSY


try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is present in the dev env
    _numba = None

NUMBA_AVAILABLE = _numba is not None
USE_NUMBA = NUMBA_AVAILABLE and not _flag("GMFRBETA_DISABLE_NUMBA")


def njit(func=None, **options):
    """``numba.njit`` when numba is installed, otherwise the identity."""
    if _numba is None:
        if func is None:
            return lambda f: f
        return func
    options.setdefault("cache", True)
    if func is None:
        return _numba.njit(**options)
    return _numba.njit(**options)(func)
