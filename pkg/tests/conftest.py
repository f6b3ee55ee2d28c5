import pytest

from liegeom.catalog import abelian_control, berger


@pytest.fixture(scope="session")
def berger_alg():
    return berger()


@pytest.fixture(scope="session")
def abelian_alg():
    return abelian_control()
