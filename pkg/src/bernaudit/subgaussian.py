"""Audits of the binomial moment, MGF, and tail inequalities.

Every check sweeps a finite grid, computes exact quantities by summation
over the n + 1 support points (no sampling), and returns a ViolationReport
whose per-cell margin is lhs - rhs: a positive margin means the audited
inequality fails at that cell.  Checks measure, they never assert; callers
decide what a violation means.  MGF-flavored quantities are computed and
reported in the log domain so extreme parameters (small p, large lambda)
cannot overflow.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import numerics
from .numerics import QuadratureConfig, log_binomial

__all__ = [
    "BinomialModel",
    "CellMargin",
    "ViolationReport",
    "tail_function",
    "cosh_mgf_check",
    "moment_check",
    "tail_bound_check",
    "bk_check",
    "sub_norm_estimate",
    "binomial_mgf",
    "PolyDensity",
    "poly_density_stats",
    "kurtosis_root",
    "audit_grid",
    "default_n_grid",
    "default_p_grid",
    "default_lambda_grid",
]

DEFAULT_ATOL = 1e-12  # margin noise floor: cells with lhs - rhs <= atol pass

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class BinomialModel:
    """Binomial(n, p) together with its centered, variance-normalized grid."""

    n: int
    p: float

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"p must lie in (0, 1), got {self.p!r}")

    @property
    def mean(self) -> float:
        return self.n * self.p

    @property
    def variance(self) -> float:
        return self.n * self.p * (1.0 - self.p)

    def log_pmf(self) -> np.ndarray:
        return _log_pmf(self.n, self.p)

    def eta_support(self) -> np.ndarray:
        """Support of eta = (mu - np) / sqrt(np(1-p)), increasing in k."""
        k = np.arange(self.n + 1, dtype=np.float64)
        return (k - self.mean) / math.sqrt(self.variance)


@lru_cache(maxsize=1024)
def _log_pmf(n: int, p: float) -> np.ndarray:
    lp = math.log(p)
    lq = math.log1p(-p)
    out = np.empty(n + 1, dtype=np.float64)
    for k in range(n + 1):
        out[k] = log_binomial(n, k) + k * lp + (n - k) * lq
    out.flags.writeable = False
    return out


def _log_cosh(t: np.ndarray) -> np.ndarray:
    a = np.abs(t)
    return a - _LN2 + np.log1p(np.exp(-2.0 * a))


def _logsumexp_rows(v: np.ndarray) -> np.ndarray:
    m = v.max(axis=-1)
    return m + np.log(np.exp(v - m[..., None]).sum(axis=-1))


# ---- report plumbing ----


@dataclass
class CellMargin:
    parameters: dict
    lhs: float
    rhs: float
    margin: float

    def to_dict(self) -> dict:
        return {
            "parameters": self.parameters,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
        }


@dataclass
class ViolationReport:
    inequality_id: str
    grid: str
    cells_total: int
    cells_violating: int
    worst: Optional[CellMargin]
    all_margins: Optional[List[CellMargin]] = None
    violations: Tuple[CellMargin, ...] = ()

    @property
    def passed(self) -> bool:
        return self.cells_violating == 0

    def to_dict(self) -> dict:
        return {
            "inequality_id": self.inequality_id,
            "grid": self.grid,
            "cells_total": self.cells_total,
            "cells_violating": self.cells_violating,
            "worst": None if self.worst is None else self.worst.to_dict(),
            "violations": [c.to_dict() for c in self.violations],
            "all_margins": (None if self.all_margins is None
                            else [c.to_dict() for c in self.all_margins]),
        }


class _Builder:
    """Accumulates cells in sweep order; worst = max margin, first tie kept."""

    def __init__(self, inequality_id: str, grid: str, atol: float, keep: bool):
        self.inequality_id = inequality_id
        self.grid = grid
        self.atol = atol
        self.cells_total = 0
        self.cells_violating = 0
        self.worst: Optional[CellMargin] = None
        self.violating: List[CellMargin] = []
        self.kept: Optional[List[CellMargin]] = [] if keep else None

    def add(self, parameters: dict, lhs: float, rhs: float) -> None:
        margin = lhs - rhs
        cell = CellMargin(parameters, lhs, rhs, margin)
        self.cells_total += 1
        if margin > self.atol:
            self.cells_violating += 1
            self.violating.append(cell)
        if self.worst is None or margin > self.worst.margin:
            self.worst = cell
        if self.kept is not None:
            self.kept.append(cell)

    def finish(self) -> ViolationReport:
        return ViolationReport(self.inequality_id, self.grid, self.cells_total,
                               self.cells_violating, self.worst, self.kept,
                               tuple(self.violating))


def _check_lambdas(lambdas: Sequence[float]) -> np.ndarray:
    arr = np.asarray(list(lambdas), dtype=np.float64)
    if arr.size == 0:
        raise ValueError("lambda grid must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("lambda grid must be finite")
    return arr


# ---- binomial checks ----


def tail_function(b: BinomialModel, u: float) -> float:
    """T(u) = max(P(eta > u), P(eta < -u)) by exact pmf summation."""
    if not (u >= 0.0):
        raise ValueError(f"tail level must be >= 0, got {u}")
    pmf = np.exp(b.log_pmf())
    eta = b.eta_support()
    hi = int(np.searchsorted(eta, u, side="right"))
    lo = int(np.searchsorted(eta, -u, side="left"))
    return max(float(pmf[hi:].sum()), float(pmf[:lo].sum()))


def _emit_cosh(builder: _Builder, b: BinomialModel, lambdas: np.ndarray) -> None:
    logpmf = b.log_pmf()
    eta = b.eta_support()
    v = logpmf[None, :] + _log_cosh(np.outer(lambdas, eta))
    lhs = _logsumexp_rows(v)
    rhs = 0.5 * lambdas * lambdas
    for i, lam in enumerate(lambdas):
        builder.add({"n": b.n, "p": b.p, "lambda": float(lam)},
                    float(lhs[i]), float(rhs[i]))


def cosh_mgf_check(b: BinomialModel, lambdas: Sequence[float],
                   atol: float = DEFAULT_ATOL,
                   keep_margins: bool = False) -> ViolationReport:
    """Audit ln E cosh(lambda eta) <= lambda^2 / 2; margins in log scale."""
    arr = _check_lambdas(lambdas)
    grid = (f"n={b.n}, p={b.p!r}; {arr.size} lambda points in "
            f"[{float(arr.min())!r}, {float(arr.max())!r}]; margins = lhs - rhs in log scale")
    builder = _Builder("cosh-mgf", grid, atol, keep_margins)
    _emit_cosh(builder, b, arr)
    return builder.finish()


def _gaussian_even_moment(m: int) -> float:
    # (2m - 1)!! = (2m)! / (2^m m!)
    return float(math.factorial(2 * m) // (2 ** m * math.factorial(m)))


def _emit_moments(builder: _Builder, b: BinomialModel, m_max: int) -> None:
    pmf = np.exp(b.log_pmf())
    eta = b.eta_support()
    centered = np.arange(b.n + 1, dtype=np.float64) - b.mean
    th = math.sqrt(b.p * (1.0 - b.p))
    eta_sq = eta * eta
    v = float(pmf @ eta_sq)
    pw = np.ones_like(eta)
    raw = centered * centered
    raw_pw = np.ones_like(centered)
    for m in range(1, m_max + 1):
        pw = pw * eta_sq
        raw_pw = raw_pw * raw
        lhs = float(pmf @ pw) / v ** m
        rhs = _gaussian_even_moment(m)
        # the as-printed form keeps the raw central moment and theta^m n^-m
        builder.add({
            "n": b.n, "p": b.p, "m": m,
            "as_printed_lhs": float(pmf @ raw_pw),
            "as_printed_rhs": rhs * th ** m * float(b.n) ** (-m),
        }, lhs, rhs)


def moment_check(b: BinomialModel, m_max: int,
                 atol: float = DEFAULT_ATOL,
                 keep_margins: bool = False) -> ViolationReport:
    """Audit E eta^(2m) <= (2m-1)!! for m = 1..m_max.

    eta is normalized by the computed variance, so the m = 1 margin is 0 by
    construction.  The literature form with theta^m n^-m on the right is
    recorded per cell under as_printed_lhs / as_printed_rhs; it fails
    dimensional sanity at m = 1 (left side grows with n), so the normalized
    form is the one audited.
    """
    if not (isinstance(m_max, int) and 1 <= m_max <= 20):
        raise ValueError(f"m_max must be an integer in [1, 20], got {m_max!r}")
    grid = (f"n={b.n}, p={b.p!r}; m = 1..{m_max}; margins = lhs - rhs, "
            "linear scale, variance-normalized")
    builder = _Builder("gaussian-moment", grid, atol, keep_margins)
    _emit_moments(builder, b, m_max)
    return builder.finish()


def _emit_tail(builder: _Builder, b: BinomialModel, u_grid: np.ndarray) -> None:
    pmf = np.exp(b.log_pmf())
    eta = b.eta_support()
    for u in u_grid:
        hi = int(np.searchsorted(eta, u, side="right"))
        lo = int(np.searchsorted(eta, -u, side="left"))
        lhs = max(float(pmf[hi:].sum()), float(pmf[:lo].sum()))
        rhs = 2.0 * math.exp(-0.5 * u * u)
        builder.add({"n": b.n, "p": b.p, "u": float(u)}, lhs, rhs)


def tail_bound_check(b: BinomialModel, u_grid: Sequence[float],
                     atol: float = DEFAULT_ATOL,
                     keep_margins: bool = False) -> ViolationReport:
    """Audit T(u) <= 2 exp(-u^2/2); linear scale (probabilities <= 1)."""
    arr = np.asarray(list(u_grid), dtype=np.float64)
    if arr.size == 0:
        raise ValueError("u grid must be nonempty")
    if not (np.all(np.isfinite(arr)) and np.all(arr >= 0.0)):
        raise ValueError("u grid must be finite and nonnegative")
    grid = (f"n={b.n}, p={b.p!r}; {arr.size} u points in "
            f"[{float(arr.min())!r}, {float(arr.max())!r}]; margins = lhs - rhs, linear scale")
    builder = _Builder("tail-2exp", grid, atol, keep_margins)
    _emit_tail(builder, b, arr)
    return builder.finish()


def bk_check(p: float, lambdas: Sequence[float],
             atol: float = DEFAULT_ATOL,
             keep_margins: bool = False) -> ViolationReport:
    """Audit ln[(1-p)e^(-lp) + p e^(l(1-p))] <= p(1-p) l^2/2 on p >= 1/2, l >= 0."""
    if not (0.5 <= p < 1.0):
        raise ValueError(f"the inequality is stated for p in [1/2, 1), got {p!r}")
    arr = _check_lambdas(lambdas)
    if not np.all(arr >= 0.0):
        raise ValueError("the inequality is stated for lambda >= 0")
    lq = math.log1p(-p)
    lp = math.log(p)
    lhs = np.logaddexp(lq - arr * p, lp + arr * (1.0 - p))
    rhs = 0.5 * p * (1.0 - p) * arr * arr
    grid = (f"p={p!r}; {arr.size} lambda points in [{float(arr.min())!r}, {float(arr.max())!r}]; "
            "margins = lhs - rhs in log scale")
    builder = _Builder("berend-kontorovich", grid, atol, keep_margins)
    for i, lam in enumerate(arr):
        builder.add({"p": p, "lambda": float(lam)}, float(lhs[i]), float(rhs[i]))
    return builder.finish()


def sub_norm_estimate(mgf: Callable[[float], float],
                      lambda_grid: Sequence[float]) -> float:
    """Grid supremum of sqrt(2 max(0, ln mgf(l))) / |l|.

    A lower estimate of the subgaussian norm: only grid points are seen.
    """
    grid = [float(l) for l in lambda_grid]
    if not grid:
        raise ValueError("lambda grid must be nonempty")
    best = 0.0
    for lam in grid:
        if lam == 0.0 or not math.isfinite(lam):
            raise ValueError(f"lambda grid must be nonzero and finite, got {lam!r}")
        value = float(mgf(lam))
        if not (math.isfinite(value) and value > 0.0):
            raise ValueError(f"mgf({lam!r}) = {value!r} is not a finite positive value")
        lv = math.log(value)
        if lv > 0.0:
            best = max(best, math.sqrt(2.0 * lv) / abs(lam))
    return best


def binomial_mgf(b: BinomialModel) -> Callable[[float], float]:
    """The MGF of eta as a callable, evaluated through the log domain."""
    logpmf = b.log_pmf()
    eta = b.eta_support()

    def mgf(lam: float) -> float:
        v = logpmf + lam * eta
        m = float(v.max())
        return math.exp(m) * float(np.exp(v - m).sum())

    return mgf


# ---- polynomial density example ----


@dataclass(frozen=True)
class PolyDensity:
    """Density ((a+1)/(2a)) (1 - |t|^a) on [-1, 1]; zero degenerate at a = 0."""

    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0.0):
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")

    @property
    def _norm(self) -> float:
        return (self.alpha + 1.0) / (2.0 * self.alpha)

    def density(self, t: float) -> float:
        if abs(t) > 1.0:
            return 0.0
        return self._norm * (1.0 - abs(t) ** self.alpha)

    def variance(self) -> float:
        return (self.alpha + 1.0) / (3.0 * (self.alpha + 3.0))

    def fourth_moment(self) -> float:
        return (self.alpha + 1.0) / (5.0 * (self.alpha + 5.0))

    def excess_kurtosis(self) -> float:
        v = self.variance()
        return self.fourth_moment() / (v * v) - 3.0

    def _even_integral(self, g: Callable[[float], float],
                       cfg: QuadratureConfig) -> float:
        """integral over [-1, 1] of density * g for even g, by symmetry."""
        a = self.alpha
        c = self._norm

        def h(t: float) -> float:
            return (1.0 - t ** a) * g(t)

        return 2.0 * c * numerics._integrate_panels(("cb", h), 0.0, 1.0, cfg)

    def normalization_quad(self, cfg: QuadratureConfig) -> float:
        return self._even_integral(lambda t: 1.0, cfg)

    def moment_quad(self, order: int, cfg: QuadratureConfig) -> float:
        if order % 2 == 1:
            return 0.0
        return self._even_integral(lambda t: t ** order, cfg)

    def log_mgf(self, lam: float, cfg: QuadratureConfig) -> float:
        value = self._even_integral(lambda t: math.cosh(lam * t), cfg)
        return math.log(value)


_DENSITY_QUAD = QuadratureConfig(truncation_z=10.0, rel_tol=1e-12,
                                 max_subdivisions=2 ** 20)


def kurtosis_root(tol: float = 1e-12) -> float:
    """Root in (0, 1) of the excess kurtosis: alpha^2 + 6 alpha - 1 = 0.

    Located by bisection on 9(a+3)^2 - 15(a+5)(a+1), whose sign matches the
    excess kurtosis sign; the exact value is sqrt(10) - 3.
    """

    def g(a: float) -> float:
        return 9.0 * (a + 3.0) ** 2 - 15.0 * (a + 5.0) * (a + 1.0)

    lo, hi = 1e-9, 1.0
    if not (g(lo) > 0.0 > g(hi)):
        raise RuntimeError("bisection bracket lost")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def poly_density_stats(d: PolyDensity,
                       lambda_grid: Optional[Sequence[float]] = None,
                       atol: float = DEFAULT_ATOL,
                       keep_margins: bool = False,
                       cfg: QuadratureConfig = _DENSITY_QUAD,
                       ) -> Tuple[float, float, ViolationReport]:
    """(variance, excess kurtosis, strict-subgaussian audit) for the density.

    Closed-form variance and fourth moment are cross-checked against
    quadrature before use; disagreement is a numerics failure, not a
    violation.  The audit sweeps ln E e^(lambda zeta) <= lambda^2 sigma^2 / 2
    over the lambda grid (default 121 points in [-3, 3]).
    """
    norm = d.normalization_quad(cfg)
    if abs(norm - 1.0) > 1e-10:
        raise RuntimeError(f"density normalization drifted: {norm!r}")
    variance = d.variance()
    if abs(d.moment_quad(2, cfg) - variance) > 1e-10:
        raise RuntimeError("variance quadrature disagrees with the closed form")
    if abs(d.moment_quad(4, cfg) - d.fourth_moment()) > 1e-10:
        raise RuntimeError("fourth-moment quadrature disagrees with the closed form")
    if lambda_grid is None:
        lambdas = np.linspace(-3.0, 3.0, 121)
    else:
        lambdas = _check_lambdas(lambda_grid)
    grid = (f"alpha={d.alpha!r}; {lambdas.size} lambda points in "
            f"[{float(lambdas.min())!r}, {float(lambdas.max())!r}]; margins = lhs - rhs in log scale")
    builder = _Builder("strict-subgaussian-density", grid, atol, keep_margins)
    for lam in lambdas:
        lam = float(lam)
        lhs = d.log_mgf(lam, cfg)
        rhs = 0.5 * lam * lam * variance
        builder.add({"alpha": d.alpha, "lambda": lam}, lhs, rhs)
    return variance, d.excess_kurtosis(), builder.finish()


# ---- grid drivers (CLI surface) ----


def default_n_grid() -> List[int]:
    return [1, 2, 4, 8, 16, 32, 64, 128, 256]


def default_p_grid() -> List[float]:
    base = [0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5]
    mirrored = sorted(set(base) | {round(1.0 - p, 10) for p in base if p != 0.5})
    return mirrored


def default_lambda_grid() -> np.ndarray:
    return np.linspace(-10.0, 10.0, 201)


def audit_grid(audit: str, n_values: Iterable[int], p_values: Iterable[float],
               lambdas: Optional[Sequence[float]] = None,
               u_grid: Optional[Sequence[float]] = None,
               m_max: int = 5,
               atol: float = DEFAULT_ATOL,
               keep_margins: bool = False) -> ViolationReport:
    """One merged report for an audit over the full (n, p) grid.

    audit is one of cosh | moments | tail | bk.  Cells are emitted in fixed
    (n asc, p asc, inner grid) order so reports are deterministic.
    """
    n_list = sorted(set(int(n) for n in n_values))
    p_list = sorted(set(float(p) for p in p_values))
    if not n_list or not p_list:
        raise ValueError("n and p grids must be nonempty")
    if audit == "cosh":
        arr = default_lambda_grid() if lambdas is None else _check_lambdas(lambdas)
        grid = (f"n in {n_list}, p in {p_list}; {arr.size} lambda points in "
                f"[{float(arr.min())!r}, {float(arr.max())!r}]; margins = lhs - rhs in log scale")
        builder = _Builder("cosh-mgf", grid, atol, keep_margins)
        for n in n_list:
            for p in p_list:
                _emit_cosh(builder, BinomialModel(n, p), arr)
        return builder.finish()
    if audit == "moments":
        grid = (f"n in {n_list}, p in {p_list}; m = 1..{m_max}; "
                "margins = lhs - rhs, linear scale, variance-normalized")
        builder = _Builder("gaussian-moment", grid, atol, keep_margins)
        for n in n_list:
            for p in p_list:
                _emit_moments(builder, BinomialModel(n, p), m_max)
        return builder.finish()
    if audit == "tail":
        arr = (np.linspace(0.0, 6.0, 121) if u_grid is None
               else np.asarray(list(u_grid), dtype=np.float64))
        if not (np.all(np.isfinite(arr)) and np.all(arr >= 0.0)):
            raise ValueError("u grid must be finite and nonnegative")
        grid = (f"n in {n_list}, p in {p_list}; {arr.size} u points in "
                f"[{float(arr.min())!r}, {float(arr.max())!r}]; margins = lhs - rhs, linear scale")
        builder = _Builder("tail-2exp", grid, atol, keep_margins)
        for n in n_list:
            for p in p_list:
                _emit_tail(builder, BinomialModel(n, p), arr)
        return builder.finish()
    if audit == "bk":
        arr = (np.linspace(0.0, 20.0, 401) if lambdas is None
               else _check_lambdas(lambdas))
        if not np.all(arr >= 0.0):
            raise ValueError("the inequality is stated for lambda >= 0")
        ps = [p for p in p_list if 0.5 <= p < 1.0]
        if not ps:
            raise ValueError("bk audit needs p values in [1/2, 1)")
        grid = (f"p in {ps}; {arr.size} lambda points in "
                f"[{float(arr.min())!r}, {float(arr.max())!r}]; margins = lhs - rhs in log scale")
        builder = _Builder("berend-kontorovich", grid, atol, keep_margins)
        for p in ps:
            lq = math.log1p(-p)
            lp = math.log(p)
            lhs = np.logaddexp(lq - arr * p, lp + arr * (1.0 - p))
            rhs = 0.5 * p * (1.0 - p) * arr * arr
            for i, lam in enumerate(arr):
                builder.add({"p": p, "lambda": float(lam)},
                            float(lhs[i]), float(rhs[i]))
        return builder.finish()
    raise ValueError(f"unknown audit {audit!r}; expected cosh | moments | tail | bk")
