# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels.

Hot loops only: binomial weight construction, compensated reductions, and
the adaptive Simpson refinement.  The pure twin `_kernels_py` mirrors every
operation in the same order; keep the two files in sync when editing.
"""

from libc.math cimport exp, fabs, lgamma, log, log1p, pow

import numpy as np

cdef double LOG_TINY_C = -690.775527898213705
LOG_TINY = LOG_TINY_C

KIND_CALLBACK = 0
KIND_LINEAR = 1
KIND_POWER = 2
KIND_PL = 3

cdef int K_CALLBACK = 0
cdef int K_LINEAR = 1
cdef int K_POWER = 2
cdef int K_PL = 3

cdef int MAX_DEPTH = 64


def log_weights(int n, double x):
    """log of C(n,m) x^m (1-x)^(n-m) for m = 0..n; requires 0 < x < 1."""
    cdef double lgn = lgamma(n + 1.0)
    cdef double lx = log(x)
    cdef double l1x = log1p(-x)
    out = np.empty(n + 1, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t m
    for m in range(n + 1):
        o[m] = (lgn - lgamma(m + 1.0) - lgamma(n - m + 1.0)
                + m * lx + (n - m) * l1x)
    return out


def weights_from_log(logw):
    """exp of a log-weight array with the underflow guard applied."""
    cdef double[::1] lw = np.ascontiguousarray(logw, dtype=np.float64)
    cdef Py_ssize_t k = lw.shape[0]
    out = np.empty(k, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(k):
        o[i] = exp(lw[i]) if lw[i] > LOG_TINY_C else 0.0
    return out


def comp_sum(a):
    """Neumaier-compensated sum, fixed left-to-right order."""
    cdef double[::1] v = np.ascontiguousarray(a, dtype=np.float64)
    cdef double s = 0.0, c = 0.0, x, t
    cdef Py_ssize_t i
    for i in range(v.shape[0]):
        x = v[i]
        t = s + x
        if fabs(s) >= fabs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def comp_dot(w, v):
    """Compensated dot product; products rounded once, then Neumaier-summed."""
    cdef double[::1] a = np.ascontiguousarray(w, dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(v, dtype=np.float64)
    cdef double s = 0.0, c = 0.0, x, t
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        x = a[i] * b[i]
        t = s + x
        if fabs(s) >= fabs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def comp_dot2(w1, w2, f):
    """w1' * F * w2 with a compensated inner dot per row and compensated outer."""
    cdef double[::1] a = np.ascontiguousarray(w1, dtype=np.float64)
    cdef double[:, ::1] m = np.ascontiguousarray(f, dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(w2, dtype=np.float64)
    cdef Py_ssize_t rows = a.shape[0], cols = b.shape[0]
    inner_arr = np.empty(rows, dtype=np.float64)
    cdef double[::1] inner = inner_arr
    cdef double s, c, x, t
    cdef Py_ssize_t i, j
    for i in range(rows):
        s = 0.0
        c = 0.0
        for j in range(cols):
            x = b[j] * m[i, j]
            t = s + x
            if fabs(s) >= fabs(x):
                c += (s - t) + x
            else:
                c += (x - t) + s
            s = t
        inner[i] = s + c
    s = 0.0
    c = 0.0
    for i in range(rows):
        x = a[i] * inner[i]
        t = s + x
        if fabs(s) >= fabs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


cdef double _omega(int kind, double p1, double p2,
                   double[::1] xs, double[::1] ys, double d):
    cdef Py_ssize_t nk, lo, hi, mid
    if d > 1.0:
        d = 1.0
    if kind == K_LINEAR:
        return p1 * d
    if kind == K_POWER:
        return p2 * pow(d, p1)
    nk = xs.shape[0]
    if d >= xs[nk - 1]:
        return ys[nk - 1]
    lo = 0
    hi = nk - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if xs[mid] <= d:
            lo = mid
        else:
            hi = mid
    return ys[lo] + (ys[lo + 1] - ys[lo]) * (d - xs[lo]) / (xs[lo + 1] - xs[lo])


def modulus_value(int kind, double p1, double p2, xs, ys, double d):
    """Expose the integrand's modulus evaluation for cross-checking."""
    cdef double[::1] cxs = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] cys = np.ascontiguousarray(ys, dtype=np.float64)
    return _omega(kind, p1, p2, cxs, cys, d)


cdef double _feval(object cb, int kind, double p1, double p2,
                   double[::1] xs, double[::1] ys, double scale, double z):
    if kind == K_CALLBACK:
        return <double> cb(z)
    return _omega(kind, p1, p2, xs, ys, z * scale) * z * exp(-0.5 * z * z)


cdef (double, double) _refine(object cb, int kind, double p1, double p2,
                              double[::1] xs, double[::1] ys, double scale,
                              double a, double fa, double m, double fm,
                              double b, double fb, double whole, double eps,
                              long* splits, long max_splits, int depth):
    cdef double lm = 0.5 * (a + m)
    cdef double rm = 0.5 * (m + b)
    cdef double flm = _feval(cb, kind, p1, p2, xs, ys, scale, lm)
    cdef double frm = _feval(cb, kind, p1, p2, xs, ys, scale, rm)
    cdef double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    cdef double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    cdef double total = left + right
    cdef double delta = total - whole
    cdef double half, vl, el, vr, er
    if (fabs(delta) <= 15.0 * eps or depth >= MAX_DEPTH
            or splits[0] >= max_splits or lm <= a or rm <= m):
        return total + delta / 15.0, fabs(delta) / 15.0
    splits[0] += 1
    half = 0.5 * eps
    vl, el = _refine(cb, kind, p1, p2, xs, ys, scale,
                     a, fa, lm, flm, m, fm, left, half, splits, max_splits, depth + 1)
    vr, er = _refine(cb, kind, p1, p2, xs, ys, scale,
                     m, fm, rm, frm, b, fb, right, half, splits, max_splits, depth + 1)
    return vl + vr, el + er


_EMPTY = np.empty(0, dtype=np.float64)


def panel_integrate(spec, double a, double b, double eps, long max_splits):
    """Adaptive Simpson on one panel.

    ``spec`` is ("cb", callable) or ("mod", kind, p1, p2, xs, ys, scale).
    Returns (value, error_estimate, splits_used); never raises on
    non-convergence -- the caller compares error_estimate against its budget.
    """
    cdef object cb = None
    cdef int kind
    cdef double p1 = 0.0, p2 = 0.0, scale = 0.0
    cdef double[::1] xs, ys
    if spec[0] == "cb":
        cb = spec[1]
        kind = K_CALLBACK
        xs = _EMPTY
        ys = _EMPTY
    else:
        kind = spec[1]
        p1 = spec[2]
        p2 = spec[3]
        xs = np.ascontiguousarray(spec[4], dtype=np.float64)
        ys = np.ascontiguousarray(spec[5], dtype=np.float64)
        scale = spec[6]
    cdef double m = 0.5 * (a + b)
    cdef double fa = _feval(cb, kind, p1, p2, xs, ys, scale, a)
    cdef double fm = _feval(cb, kind, p1, p2, xs, ys, scale, m)
    cdef double fb = _feval(cb, kind, p1, p2, xs, ys, scale, b)
    cdef double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    cdef long splits = 0
    cdef double val, err
    val, err = _refine(cb, kind, p1, p2, xs, ys, scale,
                       a, fa, m, fm, b, fb, whole, eps, &splits, max_splits, 0)
    return val, err, splits


BACKEND_NAME = "compiled"
