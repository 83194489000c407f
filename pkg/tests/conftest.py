import pytest

from bernaudit.numerics import QuadratureConfig


@pytest.fixture(scope="session")
def quad():
    """Default quadrature settings used across the suite."""
    return QuadratureConfig(truncation_z=10.0, rel_tol=1e-10, max_subdivisions=2 ** 20)
