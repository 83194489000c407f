"""The Bernstein operator on [0, 1] and the unit square.

Degrees are positive integers or INF (math.inf); INF means the operator is
the identity, so limit statements can share code paths with finite degrees.

Weights C(n,m) x^m (1-x)^(n-m) are built in the log domain (lgamma-based,
underflow guard at 1e-300) and the evaluation divides by their compensated
sum.  Representing log C(n, m) in double precision alone injects a relative
weight error near 5e-13 at n = 10^4, so the raw weights cannot sum to 1 much
better than that; the normalized form restores the partition of unity to eps
level without touching the weight *ratios*, which is what the function values
are averaged with.
"""

import math
from functools import lru_cache

import numpy as np

from ._backend import kernels
from .functions import BivariateFunction, ScalarFunction

__all__ = [
    "INF",
    "bernstein_eval",
    "error_exact",
    "bernstein_derivative_eval",
    "bernstein2_eval",
    "error2_exact",
    "basis_weights",
]

INF = math.inf
# A degree is an int >= 1 or INF.


def _check_degree(n, minimum: int = 1):
    if n == INF:
        return INF
    if isinstance(n, int) and not isinstance(n, bool) and n >= minimum:
        return n
    if isinstance(n, float) and n.is_integer() and n >= minimum:
        return int(n)
    raise ValueError(f"degree must be an integer >= {minimum} or INF, got {n!r}")


def _check_point(x: float, name: str = "x") -> float:
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {x}")
    return float(x)


@lru_cache(maxsize=64)
def _weights(n: int, x: float):
    """(raw weights, compensated sum) for interior x."""
    logw = kernels.log_weights(n, x)
    w = kernels.weights_from_log(logw)
    return w, kernels.comp_sum(w)


def basis_weights(n: int, x: float) -> np.ndarray:
    """Raw basis weights C(n,m) x^m (1-x)^(n-m); exact unit vectors at x in {0, 1}."""
    n = _check_degree(n)
    x = _check_point(x)
    if n == INF:
        raise ValueError("basis weights are only defined for finite degrees")
    out = np.zeros(n + 1, dtype=np.float64)
    if x == 0.0:
        out[0] = 1.0
    elif x == 1.0:
        out[n] = 1.0
    else:
        out[:] = _weights(n, x)[0]
    return out


@lru_cache(maxsize=128)
def _grid_values(f: ScalarFunction, n: int) -> np.ndarray:
    return np.array([f.eval(m / n) for m in range(n + 1)], dtype=np.float64)


def bernstein_eval(f: ScalarFunction, n, x: float) -> float:
    """Value of the degree-n Bernstein polynomial of f at x; INF gives f(x)."""
    n = _check_degree(n)
    x = _check_point(x)
    if n == INF:
        return float(f.eval(x))
    if x == 0.0:
        return float(f.eval(0.0))
    if x == 1.0:
        return float(f.eval(1.0))
    fv = _grid_values(f, n)
    w, s = _weights(n, x)
    return kernels.comp_dot(w, fv) / s


def error_exact(f: ScalarFunction, n, x: float) -> float:
    """|B_n[f](x) - f(x)| by direct summation; 0 for INF and at the endpoints."""
    return abs(bernstein_eval(f, n, x) - float(f.eval(x)))


def bernstein_derivative_eval(f: ScalarFunction, n, x: float) -> float:
    """Derivative of the degree-n Bernstein polynomial of f at x.

    Uses the forward-difference representation: a degree n-1 basis applied to
    n * (f((j+1)/n) - f(j/n)).  INF requires f to carry a derivative and
    returns it.  Finite degrees must be >= 2 so the reduced basis is sound.
    """
    x = _check_point(x)
    if n == INF:
        if f.derivative is None:
            raise ValueError(f"{f.label}: INF derivative needs a derivative evaluator")
        return float(f.derivative(x))
    n = _check_degree(n, minimum=2)
    fv = _grid_values(f, n)
    diffs = np.empty(n, dtype=np.float64)
    for j in range(n):
        diffs[j] = n * (fv[j + 1] - fv[j])
    if x == 0.0:
        return float(diffs[0])
    if x == 1.0:
        return float(diffs[n - 1])
    w, s = _weights(n - 1, x)
    return kernels.comp_dot(w, diffs) / s


@lru_cache(maxsize=16)
def _grid_values2(f: BivariateFunction, n1: int, n2: int) -> np.ndarray:
    return np.array(
        [[f.eval(k1 / n1, k2 / n2) for k2 in range(n2 + 1)] for k1 in range(n1 + 1)],
        dtype=np.float64,
    )


def _eval_univariate_section(g, n: int, x: float) -> float:
    if x == 0.0:
        return float(g(0.0))
    if x == 1.0:
        return float(g(1.0))
    vals = np.array([g(k / n) for k in range(n + 1)], dtype=np.float64)
    w, s = _weights(n, x)
    return kernels.comp_dot(w, vals) / s


def bernstein2_eval(f: BivariateFunction, n1, n2, x: float, y: float) -> float:
    """Tensor Bernstein value at (x, y); an INF coordinate leaves it unsmoothed."""
    n1 = _check_degree(n1)
    n2 = _check_degree(n2)
    x = _check_point(x, "x")
    y = _check_point(y, "y")
    if n1 == INF and n2 == INF:
        return float(f.eval(x, y))
    if n1 == INF:
        return _eval_univariate_section(lambda t: f.eval(x, t), n2, y)
    if n2 == INF:
        return _eval_univariate_section(lambda t: f.eval(t, y), n1, x)
    if x in (0.0, 1.0):
        return _eval_univariate_section(lambda t: f.eval(x, t), n2, y)
    if y in (0.0, 1.0):
        return _eval_univariate_section(lambda t: f.eval(t, y), n1, x)
    grid = _grid_values2(f, n1, n2)
    w1, s1 = _weights(n1, x)
    w2, s2 = _weights(n2, y)
    return kernels.comp_dot2(w1, w2, grid) / (s1 * s2)


def error2_exact(f: BivariateFunction, n1, n2, x: float, y: float) -> float:
    """|B_{n1,n2}[f](x, y) - f(x, y)| by direct summation."""
    return abs(bernstein2_eval(f, n1, n2, x, y) - float(f.eval(x, y)))
