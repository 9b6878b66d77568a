import numpy as np
import pytest

from instmonad.field import PrimeField, RationalField, select_prime


@pytest.fixture(scope="session")
def F():
    return PrimeField(select_prime())


@pytest.fixture(scope="session")
def F2():
    return PrimeField(select_prime(index=1))


@pytest.fixture(scope="session")
def Q():
    return RationalField()


@pytest.fixture
def rng():
    return np.random.default_rng(0)
