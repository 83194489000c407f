"""Bernstein approximation error bounds: evaluation, audit, and reports.

The package computes Bernstein polynomial approximations (univariate,
derivative, bivariate), the associated error functional J built from a
modulus of continuity, and audits the bound family delta <= 2 J (4 J on the
square) together with the binomial moment/MGF/tail inequalities behind it.

Hot kernels run through a compiled extension when available and fall back
to a pure-Python twin otherwise; see bernaudit.backend_name().
"""

__version__ = "0.1.0"

from ._backend import BACKEND_NAME as _BACKEND_NAME
from .bernstein import (
    INF,
    bernstein2_eval,
    bernstein_derivative_eval,
    bernstein_eval,
    error2_exact,
    error_exact,
)
from .bounds import (
    BoundRecord,
    HoelderClosedForm,
    Theta,
    bivariate_bound,
    derivative_bound,
    general_norm_bound,
    j2_functional,
    j_functional,
    j_hoelder_closed_form,
    theta,
    uniform_bound,
    uniform_bound_theta_half,
    upper_bound,
)
from .functions import (
    AdditiveModulus2,
    BivariateFunction,
    Empirical,
    GridModulus2,
    Hoelder,
    Lipschitz,
    ScalarFunction,
    SeparableModulus2,
    Tabulated,
    corpus_factorable,
    corpus_standard,
    load_function_csv,
    load_modulus_csv,
    modulus_eval,
    trial_G,
    trial_g,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    QuadratureConvergenceError,
    gauss_halfline,
    log_binomial,
    log_gamma,
)
from .sharpness import (
    RatioTrace,
    binomial_mad,
    bivariate_ratio_check,
    bojanic_asymptote,
    bojanic_residual_trace,
    derivative_trial_check,
    ratio_trace,
    richardson_limit,
)
from .subgaussian import (
    BinomialModel,
    PolyDensity,
    ViolationReport,
    bk_check,
    cosh_mgf_check,
    kurtosis_root,
    moment_check,
    poly_density_stats,
    sub_norm_estimate,
    tail_bound_check,
    tail_function,
)


def backend_name() -> str:
    """Which kernel backend this process imported: compiled or python."""
    return _BACKEND_NAME
