"""Pure-Python twin of the compiled kernels in ``_kernels.pyx``.

Selected by :mod:`bernaudit._backend` when the extension is unavailable.
Every function here mirrors the compiled one operation for operation,
including accumulation order, so the two backends agree to the last few ulps.
"""

import math

import numpy as np

# exp(logw) underflows double precision below this; such weights are skipped
LOG_TINY = -690.775527898213705

# integrand kinds understood by panel_integrate
KIND_CALLBACK = 0  # spec carries a Python callable, evaluated as-is
KIND_LINEAR = 1  # omega(d) = p1 * d
KIND_POWER = 2  # omega(d) = p2 * d**p1
KIND_PL = 3  # omega: piecewise-linear through (xs, ys), constant past xs[-1]

_MAX_DEPTH = 64


def log_weights(n, x):
    """log of C(n,m) x^m (1-x)^(n-m) for m = 0..n; requires 0 < x < 1."""
    lgn = math.lgamma(n + 1.0)
    lx = math.log(x)
    l1x = math.log1p(-x)
    out = np.empty(n + 1, dtype=np.float64)
    for m in range(n + 1):
        out[m] = (lgn - math.lgamma(m + 1.0) - math.lgamma(n - m + 1.0)
                  + m * lx + (n - m) * l1x)
    return out


def weights_from_log(logw):
    """exp of a log-weight array with the underflow guard applied."""
    k = len(logw)
    out = np.empty(k, dtype=np.float64)
    for i in range(k):
        lw = logw[i]
        out[i] = math.exp(lw) if lw > LOG_TINY else 0.0
    return out


def comp_sum(a):
    """Neumaier-compensated sum, fixed left-to-right order."""
    s = 0.0
    c = 0.0
    for i in range(len(a)):
        x = a[i]
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    # plain float at the boundary, matching the compiled kernel's C double
    return float(s + c)


def comp_dot(w, v):
    """Compensated dot product; products rounded once, then Neumaier-summed."""
    s = 0.0
    c = 0.0
    for i in range(len(w)):
        x = w[i] * v[i]
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return float(s + c)


def comp_dot2(w1, w2, f):
    """w1' * F * w2 with a compensated inner dot per row and compensated outer."""
    rows = len(w1)
    inner = np.empty(rows, dtype=np.float64)
    for i in range(rows):
        inner[i] = comp_dot(w2, f[i])
    return comp_dot(w1, inner)


def _omega(kind, p1, p2, xs, ys, d):
    if d > 1.0:
        d = 1.0
    if kind == KIND_LINEAR:
        return p1 * d
    if kind == KIND_POWER:
        return p2 * d ** p1
    # piecewise linear: xs strictly increasing with xs[0] == 0.0
    nk = len(xs)
    if d >= xs[nk - 1]:
        return float(ys[nk - 1])
    lo = 0
    hi = nk - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if xs[mid] <= d:
            lo = mid
        else:
            hi = mid
    return float(ys[lo] + (ys[lo + 1] - ys[lo]) * (d - xs[lo])
                 / (xs[lo + 1] - xs[lo]))


def modulus_value(kind, p1, p2, xs, ys, d):
    """Expose the integrand's modulus evaluation for cross-checking."""
    return _omega(kind, p1, p2, xs, ys, d)


def _feval(cb, kind, p1, p2, xs, ys, scale, z):
    if kind == KIND_CALLBACK:
        return cb(z)
    return _omega(kind, p1, p2, xs, ys, z * scale) * z * math.exp(-0.5 * z * z)


def _refine(cb, kind, p1, p2, xs, ys, scale,
            a, fa, m, fm, b, fb, whole, eps, state, max_splits, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = _feval(cb, kind, p1, p2, xs, ys, scale, lm)
    frm = _feval(cb, kind, p1, p2, xs, ys, scale, rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    total = left + right
    delta = total - whole
    if (abs(delta) <= 15.0 * eps or depth >= _MAX_DEPTH
            or state[0] >= max_splits or lm <= a or rm <= m):
        return total + delta / 15.0, abs(delta) / 15.0
    state[0] += 1
    half = 0.5 * eps
    vl, el = _refine(cb, kind, p1, p2, xs, ys, scale,
                     a, fa, lm, flm, m, fm, left, half, state, max_splits, depth + 1)
    vr, er = _refine(cb, kind, p1, p2, xs, ys, scale,
                     m, fm, rm, frm, b, fb, right, half, state, max_splits, depth + 1)
    return vl + vr, el + er


def panel_integrate(spec, a, b, eps, max_splits):
    """Adaptive Simpson on one panel.

    ``spec`` is ("cb", callable) or ("mod", kind, p1, p2, xs, ys, scale).
    Returns (value, error_estimate, splits_used); never raises on
    non-convergence -- the caller compares error_estimate against its budget.
    """
    if spec[0] == "cb":
        cb = spec[1]
        kind, p1, p2, scale = KIND_CALLBACK, 0.0, 0.0, 0.0
        xs = ys = _EMPTY
    else:
        cb = None
        kind, p1, p2, xs, ys, scale = spec[1], spec[2], spec[3], spec[4], spec[5], spec[6]
    m = 0.5 * (a + b)
    fa = _feval(cb, kind, p1, p2, xs, ys, scale, a)
    fm = _feval(cb, kind, p1, p2, xs, ys, scale, m)
    fb = _feval(cb, kind, p1, p2, xs, ys, scale, b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    state = [0]
    val, err = _refine(cb, kind, p1, p2, xs, ys, scale,
                       a, fa, m, fm, b, fb, whole, eps, state, max_splits, 0)
    return float(val), float(err), state[0]


_EMPTY = np.empty(0, dtype=np.float64)

BACKEND_NAME = "python"
