"""Randomized invariant checks for the operator, moduli, and kernels."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bernaudit._backend import kernels
from bernaudit.bernstein import basis_weights, bernstein_eval
from bernaudit.bounds import j_functional
from bernaudit.functions import (
    Hoelder,
    Lipschitz,
    ScalarFunction,
    Tabulated,
    modulus_eval,
    scale_modulus,
)
from bernaudit.subgaussian import BinomialModel, cosh_mgf_check

interior = st.floats(min_value=1e-6, max_value=1.0 - 1e-6)
degrees = st.integers(min_value=1, max_value=400)

moduli = st.one_of(
    st.builds(Lipschitz, st.floats(1e-3, 50.0)),
    st.builds(Hoelder, st.floats(0.05, 1.0), st.floats(1e-3, 50.0)),
)


@given(degrees, interior)
def test_basis_weights_form_a_partition(n, x):
    w = basis_weights(n, x)
    assert np.all(w >= 0.0)
    # raw weight sums drift by a few ulps per term
    assert float(w.sum()) == pytest.approx(1.0, abs=max(1e-13, 3e-15 * n))


@given(degrees, interior,
       st.lists(st.floats(-100.0, 100.0), min_size=1, max_size=40))
def test_operator_respects_node_range(n, x, raw):
    # the operator value is a convex combination of the node values
    vals = (raw * (n + 1))[: n + 1]
    f = ScalarFunction(eval=lambda t: vals[int(round(t * n))], label="nodes")
    got = bernstein_eval(f, n, x)
    slack = 1e-12 * (1.0 + max(abs(v) for v in vals))
    assert min(vals) - slack <= got <= max(vals) + slack


@given(degrees, interior, st.floats(-5.0, 5.0), st.floats(-5.0, 5.0))
def test_operator_linearity(n, x, a, b):
    base = ScalarFunction(eval=lambda t: t * t, label="sq")
    affine = ScalarFunction(eval=lambda t: a * t * t + b, label="affine")
    lhs = bernstein_eval(affine, n, x)
    rhs = a * bernstein_eval(base, n, x) + b
    assert lhs == pytest.approx(rhs, abs=1e-11 * (1.0 + abs(a) + abs(b)))


@given(moduli, st.floats(0.0, 3.0), st.floats(0.0, 3.0))
def test_modulus_monotone_and_clamped(m, d1, d2):
    lo, hi = sorted((d1, d2))
    assert modulus_eval(m, lo) <= modulus_eval(m, hi) + 1e-15
    assert modulus_eval(m, hi) == modulus_eval(m, min(hi, 1.0))
    assert modulus_eval(m, 0.0) == 0.0


@given(moduli, st.floats(0.0, 1.0), st.floats(1e-3, 20.0))
def test_modulus_scaling(m, d, c):
    scaled = scale_modulus(m, c)
    assert modulus_eval(scaled, d) == pytest.approx(c * modulus_eval(m, d),
                                                    rel=1e-12, abs=1e-300)


@given(st.lists(st.floats(1e-4, 0.5), min_size=2, max_size=8),
       st.lists(st.floats(0.0, 0.5), min_size=2, max_size=8),
       st.floats(0.0, 1.5), st.floats(0.0, 1.5))
def test_tabulated_monotone_and_constant_past_last_knot(dx, dy, d1, d2):
    k = min(len(dx), len(dy))
    xs = np.cumsum(dx[:k])
    xs = xs / xs[-1]  # knot abscissae live in (0, 1]
    ys = np.cumsum(dy[:k])
    m = Tabulated(tuple((float(x), float(y)) for x, y in zip(xs, ys)))
    lo, hi = sorted((d1, d2))
    assert modulus_eval(m, lo) <= modulus_eval(m, hi) + 1e-15
    last = float(xs[-1])
    assert modulus_eval(m, last + 0.5) == modulus_eval(m, min(last, 1.0))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=64), interior)
def test_j_functional_decreases_in_degree(n, x):
    m = Lipschitz(1.0)
    coarse = j_functional(m, n, x)
    fine = j_functional(m, 4 * n, x)
    assert fine <= coarse * (1.0 + 1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=64), interior, st.floats(0.1, 20.0))
def test_j_functional_scales_with_the_modulus(n, x, c):
    base = j_functional(Lipschitz(1.0), n, x)
    scaled = j_functional(Lipschitz(c), n, x)
    assert scaled == pytest.approx(c * base, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=64), st.floats(-10.0, 10.0))
def test_symmetric_cosh_bound_never_violates(n, lam):
    report = cosh_mgf_check(BinomialModel(n, 0.5), [lam])
    assert report.cells_violating == 0


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=200))
def test_compensated_sum_tracks_fsum(values):
    got = kernels.comp_sum(np.array(values, dtype=float))
    assert got == pytest.approx(math.fsum(values), rel=1e-13, abs=1e-9)
