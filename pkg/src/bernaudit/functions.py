"""Function and modulus-of-continuity models on [0, 1].

A modulus here is always evaluated with the argument clamped to [0, 1]
(the domain has diameter 1, so omega(d) = omega(1) for d > 1).  Attached
moduli are *dominating* bounds: construction verifies |f(x) - f(y)| <=
omega(|x - y|) + 1e-12 on a fixed 1001-point grid and rejects the function
otherwise.  A dominating modulus keeps every bound built on top of it valid;
it need not be the tight supremum (e.g. sin(pi x) carries Lipschitz pi).
"""

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from ._backend import kernels

__all__ = [
    "Hoelder",
    "Lipschitz",
    "Tabulated",
    "Empirical",
    "ModulusSpec",
    "modulus_eval",
    "ScalarFunction",
    "BivariateFunction",
    "SeparableModulus2",
    "AdditiveModulus2",
    "GridModulus2",
    "scale_modulus",
    "trial_g",
    "trial_G",
    "corpus_standard",
    "corpus_factorable",
    "load_modulus_csv",
    "load_function_csv",
]

_VERIFY_POINTS = 1001  # fixed verification grid i/1000
_VERIFY_SLACK = 1e-12


@dataclass(frozen=True)
class Hoelder:
    """omega(d) = H * d**alpha with alpha in (0, 1]; alpha = 1 is Lipschitz."""

    alpha: float
    H: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"Hoelder exponent must lie in (0, 1], got {self.alpha}")
        if not (self.H > 0.0):
            raise ValueError(f"Hoelder constant must be positive, got {self.H}")


@dataclass(frozen=True)
class Lipschitz:
    """omega(d) = L * d."""

    L: float

    def __post_init__(self):
        if not (self.L > 0.0):
            raise ValueError(f"Lipschitz constant must be positive, got {self.L}")


@dataclass(frozen=True)
class Tabulated:
    """Piecewise-linear modulus through knots (d_i, w_i) on [0, 1].

    An origin knot (0, 0) is implied when absent; evaluation is constant at
    the last knot value beyond the final abscissa.  Knot abscissae must be
    strictly increasing in [0, 1] and values nonnegative, nondecreasing.
    """

    knots: tuple

    def __post_init__(self):
        if len(self.knots) == 0:
            raise ValueError("Tabulated modulus needs at least one knot")
        xs = [0.0]
        ys = [0.0]
        for d, w in self.knots:
            d = float(d)
            w = float(w)
            if d <= xs[-1] and not (d == 0.0 and len(xs) == 1):
                raise ValueError("Tabulated knot abscissae must be strictly increasing")
            if d > 1.0 or d < 0.0:
                raise ValueError("Tabulated knot abscissae must lie in [0, 1]")
            if w < ys[-1]:
                raise ValueError("Tabulated knot values must be nondecreasing")
            if d == 0.0:
                if w != 0.0:
                    raise ValueError("a modulus must vanish at separation 0")
                continue
            xs.append(d)
            ys.append(w)
        object.__setattr__(self, "_xs", np.asarray(xs, dtype=np.float64))
        object.__setattr__(self, "_ys", np.asarray(ys, dtype=np.float64))


@dataclass(eq=False)
class Empirical:
    """Grid estimate of a function's modulus: sup over grid pairs within d.

    This is a lower estimate of the true modulus (only grid pairs are seen).
    grid_step is snapped to 1/round(1/grid_step) so lags are exact multiples.
    The lag table is precomputed once; evaluation is an O(1) lookup of the
    running maximum, which makes the estimate nondecreasing by construction.
    """

    source: "ScalarFunction"
    grid_step: float = 1e-3

    def __post_init__(self):
        if not (0.0 < self.grid_step <= 0.5):
            raise ValueError(f"grid_step must lie in (0, 0.5], got {self.grid_step}")
        npts = int(round(1.0 / self.grid_step))
        h = 1.0 / npts
        fv = np.array([self.source.eval(i * h) for i in range(npts + 1)], dtype=np.float64)
        premax = np.empty(npts + 1, dtype=np.float64)
        premax[0] = 0.0
        best = 0.0
        for k in range(1, npts + 1):
            m = float(np.max(np.abs(fv[k:] - fv[:-k])))
            if m > best:
                best = m
            premax[k] = best
        self._h = h
        self._premax = premax

    def __hash__(self):
        return id(self)


ModulusSpec = Union[Hoelder, Lipschitz, Tabulated, Empirical]


def modulus_eval(m: ModulusSpec, delta: float) -> float:
    """Evaluate a modulus at delta >= 0, clamped to the domain diameter 1."""
    if not (delta >= 0.0):
        raise ValueError(f"modulus argument must be >= 0, got {delta}")
    d = min(delta, 1.0)
    if isinstance(m, Hoelder):
        return m.H * d ** m.alpha
    if isinstance(m, Lipschitz):
        return m.L * d
    if isinstance(m, Tabulated):
        xs = m._xs
        ys = m._ys
        if d >= xs[-1]:
            return float(ys[-1])
        j = int(np.searchsorted(xs, d, side="right")) - 1
        return float(ys[j] + (ys[j + 1] - ys[j]) * (d - xs[j]) / (xs[j + 1] - xs[j]))
    if isinstance(m, Empirical):
        idx = min(len(m._premax) - 1, int(d / m._h + 1e-9))
        return float(m._premax[idx])
    raise ValueError(f"unknown modulus variant: {m!r}")


def modulus_kernel_spec(m: ModulusSpec, scale: float):
    """Backend integrand spec for omega(z * scale) * z * exp(-z^2/2).

    Empirical moduli are step functions and are integrated analytically in
    bounds.j_functional instead; asking for a kernel spec for one is an error.
    """
    if isinstance(m, Lipschitz):
        return ("mod", kernels.KIND_LINEAR, m.L, 0.0, _EMPTY, _EMPTY, scale)
    if isinstance(m, Hoelder):
        if m.alpha == 1.0:  # identical to Lipschitz(H) by contract
            return ("mod", kernels.KIND_LINEAR, m.H, 0.0, _EMPTY, _EMPTY, scale)
        return ("mod", kernels.KIND_POWER, m.alpha, m.H, _EMPTY, _EMPTY, scale)
    if isinstance(m, Tabulated):
        return ("mod", kernels.KIND_PL, 0.0, 0.0, m._xs, m._ys, scale)
    raise ValueError(f"no quadrature kernel for modulus variant {type(m).__name__}")


def modulus_breakpoints(m: ModulusSpec, scale: float, upper: float):
    """z locations inside (0, upper) where the scaled modulus has a kink."""
    pts = []
    if scale <= 0.0:
        return pts
    clamp = 1.0 / scale
    if clamp < upper:
        pts.append(clamp)
    if isinstance(m, Tabulated):
        for d in m._xs[1:]:
            z = d / scale
            if 0.0 < z < upper:
                pts.append(z)
    return pts


_EMPTY = np.empty(0, dtype=np.float64)


@dataclass(eq=False)
class ScalarFunction:
    """A function on [0, 1] with optional modulus and derivative metadata.

    exact_modulus, when present, is verified to dominate the function's
    increments on a 1001-point grid at construction; failure raises.
    derivative_modulus bounds the modulus of the derivative and is required
    by the derivative error bound.
    """

    eval: Callable[[float], float]
    label: str
    exact_modulus: Optional[ModulusSpec] = None
    derivative: Optional[Callable[[float], float]] = None
    derivative_modulus: Optional[ModulusSpec] = None

    def __post_init__(self):
        if self.exact_modulus is not None:
            verify_modulus_on_grid(self.eval, self.exact_modulus, self.label)

    def __call__(self, x: float) -> float:
        return self.eval(x)

    def __hash__(self):
        return id(self)


def verify_modulus_on_grid(f, m: ModulusSpec, label: str = "") -> None:
    """Check |f(x) - f(y)| <= omega(|x - y|) + 1e-12 over the fixed grid."""
    npts = _VERIFY_POINTS
    h = 1.0 / (npts - 1)
    fv = np.array([f(i * h) for i in range(npts)], dtype=np.float64)
    for k in range(1, npts):
        achieved = float(np.max(np.abs(fv[k:] - fv[:-k])))
        allowed = modulus_eval(m, k * h) + _VERIFY_SLACK
        if achieved > allowed:
            raise ValueError(
                f"attached modulus does not dominate {label or 'function'}: "
                f"at separation {k * h:g} increments reach {achieved!r} "
                f"but the modulus allows {allowed!r}"
            )


def scale_modulus(m: ModulusSpec, c: float) -> ModulusSpec:
    """The modulus c * omega for a positive constant c (closed-form variants)."""
    if not (c > 0.0):
        raise ValueError(f"scale factor must be positive, got {c}")
    if isinstance(m, Hoelder):
        return Hoelder(m.alpha, c * m.H)
    if isinstance(m, Lipschitz):
        return Lipschitz(c * m.L)
    if isinstance(m, Tabulated):
        return Tabulated(tuple((d, c * w) for d, w in m.knots))
    raise ValueError("cannot scale an empirical modulus; rebuild it from source")


# ---- bivariate moduli ----


@dataclass(eq=False)
class SeparableModulus2:
    """omega2(d1, d2) = omega_a(d1) * omega_b(d2)."""

    m1: ModulusSpec
    m2: ModulusSpec

    def __call__(self, d1: float, d2: float) -> float:
        return modulus_eval(self.m1, d1) * modulus_eval(self.m2, d2)


@dataclass(eq=False)
class AdditiveModulus2:
    """omega2(d1, d2) = omega_a(d1) + omega_b(d2).

    This is the envelope produced by splitting a product f = g(x) h(y):
    |f(u) - f(v)| <= omega_g(d1) sup|h| + sup|g| omega_h(d2), with the sups
    folded into the component moduli via scale_modulus.
    """

    m1: ModulusSpec
    m2: ModulusSpec

    def __call__(self, d1: float, d2: float) -> float:
        return modulus_eval(self.m1, d1) + modulus_eval(self.m2, d2)


class GridModulus2:
    """Empirical bivariate modulus: sup over grid pairs within (d1, d2).

    Both same-direction and opposite-direction grid displacements are
    scanned, then a running 2-D maximum makes evaluation monotone and O(1).
    Like the univariate Empirical variant this is a lower estimate.
    """

    def __init__(self, f, grid_step: float = 0.02):
        if not (0.0 < grid_step <= 0.5):
            raise ValueError(f"grid_step must lie in (0, 0.5], got {grid_step}")
        npts = int(round(1.0 / grid_step))
        self._h = 1.0 / npts
        g = np.array(
            [[f(i * self._h, j * self._h) for j in range(npts + 1)] for i in range(npts + 1)],
            dtype=np.float64,
        )
        k = npts + 1
        table = np.zeros((k, k), dtype=np.float64)
        for k1 in range(k):
            for k2 in range(k):
                if k1 == 0 and k2 == 0:
                    continue
                a = g[k1:, k2:] - g[: k - k1, : k - k2]
                best = float(np.max(np.abs(a)))
                if k1 > 0 and k2 > 0:
                    b = g[k1:, : k - k2] - g[: k - k1, k2:]
                    best = max(best, float(np.max(np.abs(b))))
                table[k1, k2] = best
        # running maximum over the lag rectangle
        for k1 in range(k):
            for k2 in range(1, k):
                if table[k1, k2] < table[k1, k2 - 1]:
                    table[k1, k2] = table[k1, k2 - 1]
        for k2 in range(k):
            for k1 in range(1, k):
                if table[k1, k2] < table[k1 - 1, k2]:
                    table[k1, k2] = table[k1 - 1, k2]
        self._table = table

    def __call__(self, d1: float, d2: float) -> float:
        top = self._table.shape[0] - 1
        i = min(top, int(min(d1, 1.0) / self._h + 1e-9))
        j = min(top, int(min(d2, 1.0) / self._h + 1e-9))
        return float(self._table[i, j])


@dataclass(eq=False)
class BivariateFunction:
    """A function on the unit square with an optional bivariate modulus.

    exact_modulus2 maps (d1, d2) to a dominating increment bound,
    nondecreasing in each argument with omega2(0, 0) = 0.
    """

    eval: Callable[[float, float], float]
    label: str
    exact_modulus2: Optional[Callable[[float, float], float]] = None

    def __call__(self, x: float, y: float) -> float:
        return self.eval(x, y)

    def __hash__(self):
        return id(self)


# ---- trial families ----


def _min_modulus(c: float) -> Tabulated:
    """omega(d) = min(d, c) as a piecewise-linear table."""
    if c >= 1.0:
        return Tabulated(((1.0, 1.0),))
    return Tabulated(((c, c), (1.0, c)))


ZERO_MODULUS = Tabulated(((1.0, 0.0),))


def trial_g(t: float) -> ScalarFunction:
    """g_t(x) = |t - x|, with its exact modulus min(d, max(t, 1-t)).

    The modulus is exact: on one side of t increments of size d are achieved,
    and the range caps them at max(t, 1-t).
    """
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"trial point must lie in [0, 1], got {t}")
    c = max(t, 1.0 - t)
    return ScalarFunction(
        eval=lambda x, _t=t: abs(_t - x),
        label=f"g_{t:g}",
        exact_modulus=_min_modulus(c),
    )


def trial_G(t: float) -> ScalarFunction:
    """G_t(x) = integral of g_t from 0 to x (piecewise quadratic).

    Carries g_t as its derivative and min(d, max(t, 1-t)) as the derivative's
    modulus.  Its own attached modulus is the Lipschitz envelope with the
    tight constant max(t, 1-t) = sup |G_t'| (the exact modulus is a piecewise
    quadratic not representable in the variant set; the envelope dominates).
    """
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"trial point must lie in [0, 1], got {t}")
    c = max(t, 1.0 - t)

    def g_eval(x: float, _t=t) -> float:
        if x <= _t:
            return _t * x - 0.5 * x * x
        return 0.5 * _t * _t + 0.5 * (x - _t) * (x - _t)

    return ScalarFunction(
        eval=g_eval,
        label=f"G_{t:g}",
        exact_modulus=Lipschitz(c),
        derivative=lambda x, _t=t: abs(_t - x),
        derivative_modulus=_min_modulus(c),
    )


def corpus_standard() -> list:
    """The standard univariate audit corpus (nine entries, all with moduli)."""
    return [
        ScalarFunction(
            eval=lambda x: x,
            label="identity",
            exact_modulus=Lipschitz(1.0),
            derivative=lambda x: 1.0,
            derivative_modulus=ZERO_MODULUS,
        ),
        ScalarFunction(
            eval=lambda x: x * x,
            label="square",
            exact_modulus=Lipschitz(2.0),
            derivative=lambda x: 2.0 * x,
            derivative_modulus=Lipschitz(2.0),
        ),
        trial_g(0.25),
        trial_g(0.5),
        trial_g(0.75),
        ScalarFunction(
            eval=lambda x: x ** 0.25,
            label="x^0.25",
            exact_modulus=Hoelder(0.25, 1.0),
        ),
        ScalarFunction(
            eval=lambda x: x ** 0.5,
            label="x^0.5",
            exact_modulus=Hoelder(0.5, 1.0),
        ),
        ScalarFunction(
            eval=lambda x: math.sin(math.pi * x),
            label="sin_pi_x",
            exact_modulus=Lipschitz(math.pi),
            derivative=lambda x: math.pi * math.cos(math.pi * x),
            derivative_modulus=Lipschitz(math.pi * math.pi),
        ),
        ScalarFunction(
            eval=lambda x: math.sqrt(x),
            label="sqrt_x",
            exact_modulus=Hoelder(0.5, 1.0),
        ),
    ]


def corpus_factorable() -> list:
    """Products g(x) h(y) with additive-envelope moduli for the square audits."""
    entries = [
        BivariateFunction(
            eval=lambda x, y: x * y,
            label="x*y",
            exact_modulus2=AdditiveModulus2(Lipschitz(1.0), Lipschitz(1.0)),
        ),
        BivariateFunction(
            eval=lambda x, y: abs(0.5 - x),
            label="g_0.5(x)*1",
            exact_modulus2=AdditiveModulus2(_min_modulus(0.5), ZERO_MODULUS),
        ),
        BivariateFunction(
            eval=lambda x, y: x * x * y * y,
            label="x^2*y^2",
            exact_modulus2=AdditiveModulus2(Lipschitz(2.0), Lipschitz(2.0)),
        ),
        BivariateFunction(
            eval=lambda x, y: abs(0.25 - x) * y,
            label="g_0.25(x)*y",
            exact_modulus2=AdditiveModulus2(
                _min_modulus(0.75), scale_modulus(Lipschitz(1.0), 0.75)
            ),
        ),
        BivariateFunction(
            eval=lambda x, y: math.sin(math.pi * x) * math.sqrt(y),
            label="sin_pi_x*sqrt_y",
            exact_modulus2=AdditiveModulus2(Lipschitz(math.pi), Hoelder(0.5, 1.0)),
        ),
    ]
    return entries


# ---- CSV interfaces ----


def _read_two_columns(path):
    rows = []
    header_seen = False
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}:{lineno}: expected two columns")
            try:
                a = float(row[0])
                b = float(row[1])
            except ValueError:
                if not rows and not header_seen:  # tolerate a single header row
                    header_seen = True
                    continue
                raise ValueError(f"{path}:{lineno}: non-numeric row {row!r}") from None
            rows.append((a, b))
    if not rows:
        raise ValueError(f"{path}: no data rows")
    for i in range(1, len(rows)):
        if rows[i][0] <= rows[i - 1][0]:
            raise ValueError(f"{path}: first column must be strictly increasing")
    return rows


def load_modulus_csv(path) -> Tabulated:
    """Read a (delta, omega) CSV into a Tabulated modulus."""
    return Tabulated(tuple(_read_two_columns(path)))


def load_function_csv(path, label: Optional[str] = None) -> ScalarFunction:
    """Read an (x, f(x)) CSV into a piecewise-linear ScalarFunction.

    Samples must lie in [0, 1]; evaluation extends constantly beyond the
    sampled range.  No modulus is attached (bound sweeps will build an
    empirical one on demand).
    """
    rows = _read_two_columns(path)
    xs = np.array([r[0] for r in rows], dtype=np.float64)
    ys = np.array([r[1] for r in rows], dtype=np.float64)
    if xs[0] < 0.0 or xs[-1] > 1.0:
        raise ValueError(f"{path}: sample abscissae must lie in [0, 1]")

    def interp(x: float) -> float:
        return float(np.interp(x, xs, ys))

    name = label if label is not None else str(path)
    return ScalarFunction(eval=interp, label=name)
