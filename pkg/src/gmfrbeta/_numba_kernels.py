"""Loop kernels compiled with numba (see :mod:`gmfrbeta.kernels`)."""

import math

import numpy as np

from gmfrbeta._accel import njit

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = 1.0 - _INV_PHI
_GROW = 1.0 + _INV_PHI
_MAX_EXPAND = 60
_MAX_LOG_STEP = 50.0


@njit
def moments(x, y):
    n = x.shape[0]
    sx = 0.0
    sy = 0.0
    for i in range(n):
        sx += x[i]
        sy += y[i]
    mx = sx / n
    my = sy / n
    sxx = 0.0
    syy = 0.0
    sxy = 0.0
    for i in range(n):
        dx = x[i] - mx
        dy = y[i] - my
        sxx += dx * dx
        syy += dy * dy
        sxy += dx * dy
    d = n - 1.0
    return mx, my, math.sqrt(sxx / d), math.sqrt(syy / d), sxy / d


@njit
def batch_moments(X, Y):
    m = X.shape[0]
    out = np.empty((5, m))
    for k in range(m):
        mx, my, sdx, sdy, cov = moments(X[k], Y[k])
        out[0, k] = mx
        out[1, k] = my
        out[2, k] = sdx
        out[3, k] = sdy
        out[4, k] = cov
    return out


@njit
def _area_objective(x, y, slope, intercept):
    total = 0.0
    for i in range(x.shape[0]):
        vertical = abs(y[i] - (intercept + slope * x[i]))
        horizontal = abs(x[i] - (y[i] - intercept) / slope)
        total += vertical * horizontal
    return 0.5 * total


area_objective = _area_objective


@njit
def _evaluate(x, y, sign, u, a, du, da, t):
    return _area_objective(x, y, sign * math.exp(u + t * du), a + t * da)


@njit
def _golden(x, y, sign, u, a, du, da, lo, hi, tol):
    c = lo + _INV_PHI2 * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc = _evaluate(x, y, sign, u, a, du, da, c)
    fd = _evaluate(x, y, sign, u, a, du, da, d)
    while hi - lo > tol:
        if fc <= fd:
            hi = d
            d = c
            fd = fc
            c = lo + _INV_PHI2 * (hi - lo)
            fc = _evaluate(x, y, sign, u, a, du, da, c)
        else:
            lo = c
            c = d
            fc = fd
            d = lo + _INV_PHI * (hi - lo)
            fd = _evaluate(x, y, sign, u, a, du, da, d)
    if fc <= fd:
        return c, fc
    return d, fd


@njit
def _line_search(x, y, sign, u, a, du, da, f0, step, tol):
    # minimise t -> f(u + t du, a + t da) starting from t = 0
    f1 = _evaluate(x, y, sign, u, a, du, da, step)
    t1 = step
    lo = 0.0
    hi = 0.0
    bracketed = False
    if f1 >= f0:
        f2 = _evaluate(x, y, sign, u, a, du, da, -step)
        if f2 >= f0:
            lo = -abs(step)
            hi = abs(step)
            bracketed = True
        else:
            step = -step
            t1 = step
            f1 = f2
    if not bracketed:
        tp = 0.0
        for _ in range(_MAX_EXPAND):
            step *= _GROW
            if abs((t1 + step) * du) > _MAX_LOG_STEP:
                break
            t2 = t1 + step
            f2 = _evaluate(x, y, sign, u, a, du, da, t2)
            if f2 >= f1:
                lo = min(tp, t2)
                hi = max(tp, t2)
                bracketed = True
                break
            tp = t1
            t1 = t2
            f1 = f2
        if not bracketed:
            return t1, f1
    t, f = _golden(x, y, sign, u, a, du, da, lo, hi, tol)
    if f <= f0:
        return t, f
    return 0.0, f0


@njit
def minimize_area(x, y, slope0, intercept0, xtol, ftol, max_sweeps):
    # Triangle areas are unchanged by translating x, so search over the
    # line's level at the median abscissa; this decouples the two
    # coordinates when the data sit far from x = 0.
    pivot = np.median(x)
    x = x - pivot
    sign = 1.0 if slope0 > 0 else -1.0
    u = math.log(abs(slope0))
    a = intercept0 + slope0 * pivot
    scale = np.max(y) - np.min(y)
    if scale <= 0.0:
        scale = 1.0
    f = _area_objective(x, y, sign * math.exp(u), a)
    step_u = 0.1
    step_a = 0.1 * scale
    tol_u = 0.01 * xtol
    tol_a = 0.01 * xtol * scale
    sweeps = 0
    converged = False
    while sweeps < max_sweeps:
        sweeps += 1
        f_old = f
        u_old = u
        a_old = a
        t, f = _line_search(x, y, sign, u, a, 1.0, 0.0, f, step_u, tol_u)
        u += t
        t, f = _line_search(x, y, sign, u, a, 0.0, 1.0, f, step_a, tol_a)
        a += t
        du = u - u_old
        da = a - a_old
        size = max(abs(du), abs(da) / scale)
        if size > 0.0:
            t, f = _line_search(x, y, sign, u, a, du, da, f, 1.0,
                               tol_u / size)
            u += t * du
            a += t * da
        du = abs(u - u_old)
        da = abs(a - a_old)
        step_u = max(4.0 * du, 1e3 * tol_u)
        step_a = max(4.0 * da, 1e3 * tol_a)
        if (f_old - f <= ftol * max(f, 1e-300)
                and du <= xtol and da <= xtol * scale):
            converged = True
            break
    slope = sign * math.exp(u)
    return slope, a - slope * pivot, f, sweeps, converged
