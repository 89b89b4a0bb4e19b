import factory
import factory.random
import numpy as np
import pytest

from wedgeops.hardy import VecTrigPoly, block_family
from wedgeops.operators import shift_example_symbol


@pytest.fixture(autouse=True)
def reseed_factories():
    factory.random.reseed_random(1234)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def shift_xi():
    return shift_example_symbol()


@pytest.fixture
def disc_pair():
    """g = (z, z^2) and f = (1, -z): orthogonal on the circle but not inside the disc."""
    return VecTrigPoly.from_components([0, 1], [0, 0, 1]), VecTrigPoly.from_components([1], [0, -1])


@pytest.fixture
def c4_family():
    return block_family()
