"""Pointwise error bounds for the Bernstein operator.

The central object is the error functional

    J(omega, s) = integral_0^inf omega(min(z s, 1)) z exp(-z^2/2) dz,

evaluated at the cell scale s = theta(x) / sqrt(n).  The pointwise bound is
2 J on the interval and 4 J (= 2^d, d = 2) on the square.  Quadrature is the
adaptive Simpson rule from numerics with panel seams at the modulus kinks;
step moduli (the Empirical variant) are integrated exactly panel by panel,
since the weight has the closed antiderivative -exp(-z^2/2).
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union

import numpy as np

from . import numerics
from .bernstein import INF, bernstein_derivative_eval, error2_exact, error_exact
from .functions import (
    AdditiveModulus2,
    BivariateFunction,
    Empirical,
    Hoelder,
    ModulusSpec,
    ScalarFunction,
    SeparableModulus2,
    modulus_breakpoints,
    modulus_eval,
    modulus_kernel_spec,
)
from .numerics import DEFAULT_QUADRATURE, QuadratureConfig

__all__ = [
    "Theta",
    "theta",
    "BoundRecord",
    "PASS_SLACK",
    "j_functional",
    "HoelderClosedForm",
    "j_hoelder_closed_form",
    "upper_bound",
    "uniform_bound",
    "uniform_bound_theta_half",
    "derivative_bound",
    "j2_functional",
    "bivariate_bound",
    "general_norm_bound",
]

PASS_SLACK = 1e-12  # delta <= bound + PASS_SLACK * (1 + bound)


@dataclass(frozen=True)
class Theta:
    """sqrt(x (1 - x)): the binomial standard-deviation factor at x."""

    value: float

    def __float__(self) -> float:
        return self.value


def theta(p: float) -> Theta:
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"theta requires p in [0, 1], got {p}")
    return Theta(math.sqrt(p * (1.0 - p)))


@dataclass(frozen=True)
class BoundRecord:
    """One audited cell.  ratio is None where j = 0 (degenerate cells).

    passed applies the fixed tolerance delta <= bound + 1e-12 (1 + bound);
    the field is named passed because ``pass`` is reserved, but it serializes
    under the column name ``pass``.
    """

    label: str
    x: float
    n: Union[int, float]
    delta: float
    j: float
    bound: float
    ratio: Optional[float]
    passed: bool
    y: Optional[float] = None
    n2: Union[int, float, None] = None


def _record(label, x, n, delta, j, bound, y=None, n2=None) -> BoundRecord:
    ratio = None if j == 0.0 else delta / j
    passed = delta <= bound + PASS_SLACK * (1.0 + bound)
    return BoundRecord(label, x, n, delta, j, bound, ratio, passed, y, n2)


# ---- the J functional ----


def _j_step_exact(m: Empirical, s: float, upper: float) -> float:
    """Exact integral for a step modulus: constant value per lag panel."""
    premax = m._premax
    h = m._h
    k = len(premax) - 1
    lags = np.arange(k + 1, dtype=np.float64) * h
    z = np.minimum(lags / s, upper)
    e = np.exp(-0.5 * z * z)
    e_next = np.empty(k + 1, dtype=np.float64)
    e_next[:-1] = e[1:]
    e_next[-1] = math.exp(-0.5 * upper * upper)
    return float(np.sum(premax * (e - e_next)))


@lru_cache(maxsize=None)
def _j_scaled_cached(m: ModulusSpec, s: float, trunc: float, rel_tol: float,
                     max_subdivisions: int) -> float:
    cfg = QuadratureConfig(trunc, rel_tol, max_subdivisions)
    spec = modulus_kernel_spec(m, s)
    brk = modulus_breakpoints(m, s, trunc)
    return numerics._integrate_panels(spec, 0.0, trunc, cfg, brk)


def _j_scaled(m: ModulusSpec, s: float, cfg: QuadratureConfig,
              upper: Optional[float] = None) -> float:
    """J at an explicit scale s (theta and degree already folded in)."""
    if s <= 0.0:
        return 0.0
    top = cfg.truncation_z if upper is None else upper
    if isinstance(m, Empirical):
        return _j_step_exact(m, s, top)
    if upper is None:
        return _j_scaled_cached(m, s, cfg.truncation_z, cfg.rel_tol,
                                cfg.max_subdivisions)
    spec = modulus_kernel_spec(m, s)
    brk = modulus_breakpoints(m, s, top)
    return numerics._integrate_panels(spec, 0.0, top, cfg, brk)


def j_functional(m: ModulusSpec, n, x: float,
                 cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """J at the cell (n, x): scale theta(x)/sqrt(n).  Exactly 0 when theta = 0."""
    th = theta(x).value
    if n == INF:
        return 0.0
    if not (n == int(n) and n >= 1):
        raise ValueError(f"degree must be a positive integer or INF, got {n!r}")
    if th == 0.0:
        return 0.0
    return _j_scaled(m, th / math.sqrt(n), cfg)


@dataclass(frozen=True)
class HoelderClosedForm:
    """Analytic J for a power modulus, next to two circulated variants.

    value: H theta^alpha n^(-alpha/2) 2^(alpha/2) Gamma(1 + alpha/2) -- the
        direct evaluation of the unclamped integral (the clamp correction is
        exponentially small once theta/sqrt(n) is small).
    gamma_variant: 2 H (2 theta^2 / n)^(alpha/2) Gamma(alpha/2), a printed
        form of the full 2J bound that differs from 2 * value by the factor
        2/alpha (Gamma(alpha/2) = (2/alpha) Gamma(1 + alpha/2)).
    sqrt_2pi_variant: 2 H sqrt(2 pi theta^2 / n) for alpha = 1 (None
        otherwise), a printed Lipschitz form equal to twice 2 * value.

    Reports carry all three side by side rather than picking one.
    """

    value: float
    gamma_variant: float
    sqrt_2pi_variant: Optional[float]


def j_hoelder_closed_form(alpha: float, h_const: float, n, x: float) -> HoelderClosedForm:
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if not (h_const > 0.0):
        raise ValueError(f"H must be positive, got {h_const}")
    if n != INF and not (n == int(n) and n >= 1):
        raise ValueError(f"degree must be a positive integer or INF, got {n!r}")
    th = theta(x).value
    if th == 0.0 or n == INF:
        return HoelderClosedForm(0.0, 0.0, 0.0 if alpha == 1.0 else None)
    base = 2.0 * th * th / n
    value = (h_const * th ** alpha * n ** (-0.5 * alpha)
             * 2.0 ** (0.5 * alpha) * math.gamma(1.0 + 0.5 * alpha))
    gamma_variant = 2.0 * h_const * base ** (0.5 * alpha) * math.gamma(0.5 * alpha)
    sqrt_2pi_variant = 2.0 * h_const * math.sqrt(math.pi * base) if alpha == 1.0 else None
    return HoelderClosedForm(value, gamma_variant, sqrt_2pi_variant)


# ---- pointwise bounds ----


@lru_cache(maxsize=64)
def _empirical_for(f: ScalarFunction) -> Empirical:
    return Empirical(f)


def upper_bound(f: ScalarFunction, n, x: float,
                cfg: QuadratureConfig = DEFAULT_QUADRATURE,
                allow_empirical: bool = True) -> BoundRecord:
    """Audit delta <= 2 J at one cell.

    Uses f.exact_modulus; if missing, an Empirical modulus is built from f
    (unless allow_empirical is False, which is then a configuration error).
    """
    m = f.exact_modulus
    if m is None:
        if not allow_empirical:
            raise ValueError(f"{f.label}: no modulus attached and empirical construction disabled")
        m = _empirical_for(f)
    delta = error_exact(f, n, x)
    j = j_functional(m, n, x, cfg)
    return _record(f.label, x, n, delta, j, 2.0 * j)


def uniform_bound(m: ModulusSpec, n, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """The x-free bound 2 * integral of omega(y / (2 sqrt(n))) y exp(-y^2) dy.

    Evaluated exactly as stated (weight exp(-y^2), argument y / (2 sqrt(n)))
    through the substitution y = u / sqrt(2), which turns it into the standard
    J kernel at scale 1 / (2 sqrt(2 n)) -- including the exact treatment of
    step moduli.  Note the integrand normalization differs from substituting
    theta = 1/2 into the pointwise bound; see uniform_bound_theta_half.
    """
    if n == INF:
        return 0.0
    if not (n == int(n) and n >= 1):
        raise ValueError(f"degree must be a positive integer or INF, got {n!r}")
    s = 1.0 / (2.0 * math.sqrt(2.0 * n))
    return _j_scaled(m, s, cfg, upper=cfg.truncation_z * math.sqrt(2.0))


def uniform_bound_theta_half(m: ModulusSpec, n,
                             cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Companion estimate 2 J at theta = 1/2, the supremum of theta on [0, 1].

    Differs from uniform_bound by the weight normalization (for a Lipschitz
    modulus the two disagree by the constant factor 2 sqrt(2)); reports show
    both columns so the discrepancy stays visible.
    """
    if n == INF:
        return 0.0
    if not (n == int(n) and n >= 1):
        raise ValueError(f"degree must be a positive integer or INF, got {n!r}")
    return 2.0 * _j_scaled(m, 0.5 / math.sqrt(n), cfg)


def derivative_bound(f: ScalarFunction, n, x: float,
                     cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> BoundRecord:
    """Audit |B_n'[f] - f'| <= 1.5 omega[f'](1/n) + 2 J_{n-1}[f'] at one cell."""
    if f.derivative is None or f.derivative_modulus is None:
        raise ValueError(
            f"{f.label}: derivative bound needs a derivative evaluator and a modulus for f'"
        )
    if n == INF:
        return _record(f.label, x, n, 0.0, 0.0, 0.0)
    if not (n == int(n) and n >= 2):
        raise ValueError(f"derivative bound needs degree >= 2 or INF, got {n!r}")
    n = int(n)
    dm = f.derivative_modulus
    delta = abs(bernstein_derivative_eval(f, n, x) - float(f.derivative(x)))
    j = j_functional(dm, n - 1, x, cfg)
    bound = 1.5 * modulus_eval(dm, 1.0 / n) + 2.0 * j
    return _record(f.label, x, n, delta, j, bound)


# ---- bivariate ----


def _coordinate_scale(n, p: float) -> float:
    th = theta(p).value
    if n == INF or th == 0.0:
        return 0.0
    if not (n == int(n) and n >= 1):
        raise ValueError(f"degree must be a positive integer or INF, got {n!r}")
    return th / math.sqrt(n)


def _base_mass(cfg: QuadratureConfig) -> float:
    """integral_0^Z z exp(-z^2/2) dz = 1 - exp(-Z^2/2)."""
    return 1.0 - math.exp(-0.5 * cfg.truncation_z * cfg.truncation_z)


def _double_quad(q: Callable[[float, float], float], s1: float, s2: float,
                 cfg: QuadratureConfig) -> float:
    """integral of q(z1 s1, z2 s2) z1 z2 exp(-(z1^2+z2^2)/2) over [0, Z]^2."""
    z_top = cfg.truncation_z

    def inner(z1: float) -> float:
        d1 = min(z1 * s1, 1.0)

        def g2(z2: float) -> float:
            return q(d1, min(z2 * s2, 1.0)) * z2 * math.exp(-0.5 * z2 * z2)

        val = numerics._integrate_panels(("cb", g2), 0.0, z_top, cfg)
        return val * z1 * math.exp(-0.5 * z1 * z1)

    return numerics._integrate_panels(("cb", inner), 0.0, z_top, cfg)


def j2_functional(m2, n1, n2, x: float, y: float,
                  cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """The square error functional with per-coordinate scales theta/sqrt(n).

    A coordinate with theta = 0 or degree INF is pinned at separation 0.
    Separable and additive moduli factor into univariate J integrals; a
    generic callable falls back to a nested double quadrature.
    """
    s1 = _coordinate_scale(n1, x)
    s2 = _coordinate_scale(n2, y)
    if isinstance(m2, SeparableModulus2):
        return _j_scaled(m2.m1, s1, cfg) * _j_scaled(m2.m2, s2, cfg)
    if isinstance(m2, AdditiveModulus2):
        i0 = _base_mass(cfg)
        return _j_scaled(m2.m1, s1, cfg) * i0 + i0 * _j_scaled(m2.m2, s2, cfg)
    if not callable(m2):
        raise ValueError(f"bivariate modulus must be callable, got {m2!r}")
    if s1 == 0.0 and s2 == 0.0:
        return 0.0
    if s1 == 0.0:
        def g2(z2: float) -> float:
            return m2(0.0, min(z2 * s2, 1.0)) * z2 * math.exp(-0.5 * z2 * z2)
        return _base_mass(cfg) * numerics._integrate_panels(
            ("cb", g2), 0.0, cfg.truncation_z, cfg)
    if s2 == 0.0:
        def g1(z1: float) -> float:
            return m2(min(z1 * s1, 1.0), 0.0) * z1 * math.exp(-0.5 * z1 * z1)
        return _base_mass(cfg) * numerics._integrate_panels(
            ("cb", g1), 0.0, cfg.truncation_z, cfg)
    return _double_quad(m2, s1, s2, cfg)


def bivariate_bound(f: BivariateFunction, n1, n2, x: float, y: float,
                    cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> BoundRecord:
    """Audit delta <= 4 J2 (the 2^d constant, d = 2) at one square cell."""
    if f.exact_modulus2 is None:
        raise ValueError(f"{f.label}: bivariate bound needs an attached bivariate modulus")
    delta = error2_exact(f, n1, n2, x, y)
    j = j2_functional(f.exact_modulus2, n1, n2, x, y, cfg)
    return _record(f.label, x, n1, delta, j, 4.0 * j, y=y, n2=n2)


_NORMS = {
    "euclidean": lambda a, b: math.hypot(a, b),
    "max": lambda a, b: a if a >= b else b,
    "sum": lambda a, b: a + b,
}


def general_norm_bound(f: BivariateFunction, gamma: Callable[[float], float],
                       norm_id: str, n1, n2, x: float, y: float,
                       cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """The norm-modulus form of the square bound for f.

    Computes 2^2 times the double integral of gamma applied to the chosen
    norm of the scaled coordinates, each clamped at 1 before the norm is
    taken (so the sum-norm case coincides definitionally with the additive
    J2).  gamma must be a nondecreasing envelope for f's modulus under the
    chosen norm, with gamma(0+) = 0; only the bound side is computed here,
    callers compare it against error2_exact(f, ...).
    """
    if not isinstance(f, BivariateFunction):
        raise ValueError(f"expected a BivariateFunction, got {type(f).__name__}")
    if norm_id not in _NORMS:
        raise ValueError(f"norm_id must be one of {sorted(_NORMS)}, got {norm_id!r}")
    norm = _NORMS[norm_id]
    if not callable(gamma):
        raise ValueError("gamma must be callable")
    s1 = _coordinate_scale(n1, x)
    s2 = _coordinate_scale(n2, y)

    def q(d1: float, d2: float) -> float:
        return gamma(norm(min(d1, 1.0), min(d2, 1.0)))

    if s1 == 0.0 and s2 == 0.0:
        return 0.0
    return 4.0 * _double_quad(q, s1, s2, cfg)
