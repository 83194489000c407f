"""Experiments probing how tight the error bounds are.

Traces follow the ratio delta / J along a geometric degree ladder and
extrapolate its limit; the trial family g_t(x) = |t - x| admits an exact
error (the binomial mean absolute deviation) and a known sqrt(n) asymptote,
so residuals can be measured against closed forms.  Everything here is
measurement: observed directions and limits are reported, never asserted.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .bernstein import INF, bernstein_derivative_eval, error2_exact, error_exact
from .bounds import j2_functional, j_functional
from .functions import (
    AdditiveModulus2,
    BivariateFunction,
    ScalarFunction,
    ZERO_MODULUS,
    trial_G,
    trial_g,
)
from .numerics import DEFAULT_QUADRATURE, QuadratureConfig, log_binomial

__all__ = [
    "RatioTrace",
    "binomial_mad",
    "bojanic_asymptote",
    "bojanic_residual_trace",
    "ratio_trace",
    "bivariate_ratio_check",
    "derivative_trial_check",
    "richardson_limit",
]


@dataclass(frozen=True)
class RatioTrace:
    """Per-degree ratios along an increasing ladder, with the extras each
    experiment can fill: js (None when no J is involved), asymptotes and
    residuals (None when no closed asymptote applies).
    """

    label: str
    x: float
    n_values: List[int]
    deltas: List[float]
    js: Optional[List[float]]
    ratios: List[Optional[float]]
    extrapolated_limit: Optional[float]
    asymptotes: Optional[List[float]] = None
    asymptote_residuals: Optional[List[float]] = None

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ValueError("degree ladder must be strictly increasing")


def _check_interior(value: float, name: str) -> None:
    if not (0.0 < value < 1.0):
        raise ValueError(f"{name} must lie strictly inside (0, 1), got {value}")


def _check_ladder(n_values: Sequence[int]) -> List[int]:
    ns = [int(n) for n in n_values]
    if not ns or any(n < 1 for n in ns):
        raise ValueError("degree ladder must be nonempty positive integers")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("degree ladder must be strictly increasing")
    return ns


def richardson_limit(n_values: Sequence[int],
                     ratios: Sequence[Optional[float]]) -> Optional[float]:
    """Limit estimate from the last three points, first order in 1/sqrt(n).

    Two linear eliminations: the first removes the 1/sqrt(n) term pairwise,
    the second removes the leftover 1/n term (the products h_i h_{i+1}).
    Returns None when fewer than three usable points exist.
    """
    pts = [(n, r) for n, r in zip(n_values, ratios) if r is not None]
    if len(pts) < 3:
        return None
    (n1, r1), (n2, r2), (n3, r3) = pts[-3:]
    h1, h2, h3 = (1.0 / math.sqrt(n) for n in (n1, n2, n3))
    s12 = (h1 * r2 - h2 * r1) / (h1 - h2)
    s23 = (h2 * r3 - h3 * r2) / (h2 - h3)
    return (h1 * s23 - h3 * s12) / (h1 - h3)


def binomial_mad(n: int, p: float) -> float:
    """Exact E|mu - np| for Binomial(n, p): 2 nu (1-p) P(mu = nu), nu = floor(np)+1."""
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie in (0, 1), got {p!r}")
    nu = math.floor(n * p) + 1
    log_prob = log_binomial(n, nu) + nu * math.log(p) + (n - nu) * math.log1p(-p)
    return 2.0 * nu * (1.0 - p) * math.exp(log_prob)


def bojanic_asymptote(x: float, n: int) -> float:
    """Leading term sqrt(2 x (1 - x) / (pi n)) of the trial-family error."""
    _check_interior(x, "x")
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return math.sqrt(2.0 * x * (1.0 - x) / (math.pi * n))


def bojanic_residual_trace(x: float, n_values: Sequence[int]) -> RatioTrace:
    """Exact trial error against its asymptote; residuals scaled by n.

    The n * (delta - asymptote) sequence staying bounded is the observable
    consequence of the O(1/n) remainder.
    """
    _check_interior(x, "x")
    ns = _check_ladder(n_values)
    g = trial_g(x)
    deltas = [error_exact(g, n, x) for n in ns]
    asym = [bojanic_asymptote(x, n) for n in ns]
    residuals = [n * (d - a) for n, d, a in zip(ns, deltas, asym)]
    ratios: List[Optional[float]] = [d / a for d, a in zip(deltas, asym)]
    return RatioTrace(g.label, x, ns, deltas, None, ratios,
                      richardson_limit(ns, ratios), asym, residuals)


def ratio_trace(f: ScalarFunction, x: float, n_values: Sequence[int],
                cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> RatioTrace:
    """delta / J along the ladder, with the limit extrapolated from the tail."""
    _check_interior(x, "x")
    if f.exact_modulus is None:
        raise ValueError(f"{f.label}: ratio trace needs an exact modulus")
    ns = _check_ladder(n_values)
    deltas = [error_exact(f, n, x) for n in ns]
    js = [j_functional(f.exact_modulus, n, x, cfg) for n in ns]
    ratios: List[Optional[float]] = [
        None if j == 0.0 else d / j for d, j in zip(deltas, js)
    ]
    return RatioTrace(f.label, x, ns, deltas, js, ratios,
                      richardson_limit(ns, ratios))


def bivariate_ratio_check(t1: float, x: float, y: float,
                          n_values: Sequence[int],
                          cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> RatioTrace:
    """The square-case trace for the factorable trial g_t1(x) * 1.

    The second coordinate runs at degree INF with a zero modulus, so the
    square functional must reproduce the univariate trace up to the
    truncated base mass (a 1e-22 effect); the coincidence is the check.
    """
    _check_interior(t1, "t1")
    _check_interior(x, "x")
    if not (0.0 <= y <= 1.0):
        raise ValueError(f"y must lie in [0, 1], got {y}")
    ns = _check_ladder(n_values)
    g = trial_g(t1)
    f0 = BivariateFunction(
        eval=lambda u, v: g.eval(u),
        label=f"{g.label}*one",
        exact_modulus2=AdditiveModulus2(g.exact_modulus, ZERO_MODULUS),
    )
    deltas = [error2_exact(f0, n, INF, x, y) for n in ns]
    js = [j2_functional(f0.exact_modulus2, n, INF, x, y, cfg) for n in ns]
    ratios: List[Optional[float]] = [
        None if j == 0.0 else d / j for d, j in zip(deltas, js)
    ]
    return RatioTrace(f0.label, x, ns, deltas, js, ratios,
                      richardson_limit(ns, ratios))


def derivative_trial_check(t: float, x: float, n_values: Sequence[int],
                           cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> RatioTrace:
    """Derivative error of the antiderivative trial G_t against J of g_t.

    Records the observed pairs and their ratio only; the direction of the
    comparison is an open experimental question, so nothing is asserted.
    """
    _check_interior(t, "t")
    _check_interior(x, "x")
    ns = _check_ladder(n_values)
    for n in ns:
        if n < 2:
            raise ValueError("derivative trials need degrees >= 2")
    big_g = trial_G(t)
    g_mod = trial_g(t).exact_modulus
    deltas = [
        abs(bernstein_derivative_eval(big_g, n, x) - float(big_g.derivative(x)))
        for n in ns
    ]
    js = [j_functional(g_mod, n, x, cfg) for n in ns]
    ratios: List[Optional[float]] = [
        None if j == 0.0 else d / j for d, j in zip(deltas, js)
    ]
    return RatioTrace(big_g.label, x, ns, deltas, js, ratios,
                      richardson_limit(ns, ratios))
