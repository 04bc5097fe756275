"""Numeric hot loops, in two interchangeable backends.

``numba`` (:mod:`gmfrbeta._numba_kernels`) compiles explicit loops with
``@njit``; ``numpy`` (:mod:`gmfrbeta._numpy_kernels`) expresses the same
computations with array operations. Both expose:

``moments(x, y)``
    ``(mean_x, mean_y, sd_x, sd_y, cov)`` with divisor ``n - 1``.
``batch_moments(X, Y)``
    the same five quantities as a (5, m) array, one column per row of X, Y.
``area_objective(x, y, slope, intercept)``
    half the summed products of vertical and horizontal deviations.
``minimize_area(x, y, slope0, intercept0, xtol, ftol, max_sweeps)``
    coordinate descent with golden-section line searches; returns
    ``(slope, intercept, objective, sweeps, converged)``.

The active backend is fixed at import time (``GMFRBETA_DISABLE_NUMBA=1``
selects numpy); :func:`get_backend` returns either one explicitly.
"""

from __future__ import annotations

import importlib
from types import ModuleType

from gmfrbeta._accel import NUMBA_AVAILABLE, USE_NUMBA

_MODULES = {"numba": "gmfrbeta._numba_kernels", "numpy": "gmfrbeta._numpy_kernels"}


def get_backend(name: str | None = None) -> ModuleType:
    """Return the ``"numba"`` or ``"numpy"`` kernel module (default: active)."""
    if name is None:
        name = "numba" if USE_NUMBA else "numpy"
    if name not in _MODULES:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not NUMBA_AVAILABLE:
        raise ImportError("numba is not installed")
    return importlib.import_module(_MODULES[name])


backend = get_backend()
