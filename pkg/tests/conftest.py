import pytest
from hypothesis import HealthCheck, settings

from detdeform import DegreeData, random_matrix

settings.register_profile("detdeform", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("detdeform")


@pytest.fixture(scope="session")
def quadric_curve():
    """The general 2x4 quadric matrix of the reproduction example (seed 1)."""
    return random_matrix(DegreeData(4, [0, 0], [2, 2, 2, 2]), seed=1)


@pytest.fixture(scope="session")
def cubic():
    from detdeform.cli import twisted_cubic
    return twisted_cubic()
