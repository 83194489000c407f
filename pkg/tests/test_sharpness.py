"""Sharpness experiments: MAD oracle, asymptote residuals, ratio traces."""

import math

import pytest

from bernaudit.bernstein import error_exact
from bernaudit.functions import trial_g
from bernaudit.sharpness import (
    RatioTrace,
    binomial_mad,
    bivariate_ratio_check,
    bojanic_asymptote,
    bojanic_residual_trace,
    derivative_trial_check,
    ratio_trace,
    richardson_limit,
)

TWO_OVER_PI = 2.0 / math.pi


def exact_mad(n, p):
    """Reference by full summation (independent of the closed form)."""
    total = 0.0
    for m in range(n + 1):
        pm = math.comb(n, m) * p ** m * (1 - p) ** (n - m)
        total += pm * abs(m - n * p)
    return total


def test_binomial_mad_closed_form_matches_summation():
    for n, p in [(10, 0.5), (100, 0.5), (37, 0.3), (64, 0.8)]:
        assert binomial_mad(n, p) == pytest.approx(exact_mad(n, p), rel=1e-12)


def test_binomial_mad_spot_value():
    # frozen: 51 C(100,51) / 2^100, exact rational evaluated in high precision
    assert binomial_mad(100, 0.5) == pytest.approx(3.979461869358938, rel=1e-13)


def test_binomial_mad_matches_operator_error():
    # the closed form travels through exp(log...) and carries ~1e-14 relative
    g = trial_g(0.5)
    assert error_exact(g, 100, 0.5) == pytest.approx(
        binomial_mad(100, 0.5) / 100.0, rel=2e-14)


def test_binomial_mad_validation():
    with pytest.raises(ValueError):
        binomial_mad(0, 0.5)
    with pytest.raises(ValueError):
        binomial_mad(10, 0.0)


def test_bojanic_asymptote_formula():
    assert bojanic_asymptote(0.5, 100) == pytest.approx(
        math.sqrt(2.0 * 0.25 / (math.pi * 100.0)), rel=1e-15)
    with pytest.raises(ValueError):
        bojanic_asymptote(0.0, 100)


def test_bojanic_residuals_are_order_one_over_n():
    trace = bojanic_residual_trace(0.5, [16, 64, 256, 1024])
    assert isinstance(trace, RatioTrace)
    for resid in trace.asymptote_residuals:
        assert abs(resid) < 1.0  # n * |delta - asymptote| stays bounded
    # ratios delta / asymptote drift toward 1
    assert trace.ratios[-1] == pytest.approx(1.0, abs=1e-3)


def test_richardson_exact_on_quadratic_model():
    # r(h) = L + a h + b h^2 with h = 1/sqrt(n) is recovered exactly
    L, a, b = 0.637, -0.8, 2.5
    ns = [16, 64, 256]
    ratios = [L + a / math.sqrt(n) + b / n for n in ns]
    assert richardson_limit(ns, ratios) == pytest.approx(L, rel=1e-12)


def test_richardson_needs_three_points():
    assert richardson_limit([4, 16], [0.5, 0.6]) is None
    assert richardson_limit([4, 16, 64], [None, 0.5, 0.6]) is None


def test_ratio_trace_limit_two_over_pi(quad):
    ns = [2 ** k for k in range(4, 12)]
    trace = ratio_trace(trial_g(0.5), 0.5, ns, quad)
    assert all(0.0 < r <= 2.0 for r in trace.ratios)
    assert trace.extrapolated_limit == pytest.approx(TWO_OVER_PI, abs=1e-6)
    # bilateral window: within [1/pi - 1e-3, 2] whichever constant is meant
    assert trace.extrapolated_limit >= 1.0 / math.pi - 1e-3


def test_ratio_trace_requires_modulus(quad):
    from bernaudit.functions import ScalarFunction
    bare = ScalarFunction(eval=lambda x: x, label="bare")
    with pytest.raises(ValueError):
        ratio_trace(bare, 0.5, [4, 8, 16], quad)


def test_ratio_trace_rejects_non_increasing_ladder(quad):
    with pytest.raises(ValueError):
        ratio_trace(trial_g(0.5), 0.5, [16, 8, 4], quad)


def test_bivariate_trace_matches_univariate_up_to_shell_mass(quad):
    ns = [16, 64, 256]
    uni = ratio_trace(trial_g(0.5), 0.5, ns, quad)
    biv = bivariate_ratio_check(0.5, 0.5, 0.5, ns, quad)
    i0 = 1.0 - math.exp(-50.0)
    for du, db, ju, jb in zip(uni.deltas, biv.deltas, uni.js, biv.js):
        assert db == pytest.approx(du, rel=1e-12)  # second factor is constant 1
        assert jb == pytest.approx(ju * i0, rel=1e-10)


def test_derivative_trial_records_observed_direction(quad):
    """The claimed lower bound runs the other way on every probed grid point;
    the trace records the ratios without asserting a direction."""
    trace = derivative_trial_check(0.5, 0.5, [16, 64, 256, 1024], quad)
    assert all(r is not None and 0.0 < r < 1.0 for r in trace.ratios)
    # at x = t the ratio approaches the same 2/pi constant as the value trace
    assert trace.ratios[-1] == pytest.approx(TWO_OVER_PI, abs=2e-4)


def test_trace_fields_are_aligned(quad):
    ns = [4, 8, 16]
    trace = ratio_trace(trial_g(0.25), 0.3, ns, quad)
    assert list(trace.n_values) == ns
    assert len(trace.deltas) == len(trace.js) == len(trace.ratios) == 3
    for d, j, r in zip(trace.deltas, trace.js, trace.ratios):
        assert r == pytest.approx(d / j, rel=1e-15)
