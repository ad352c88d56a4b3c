import numpy as np
import pytest

from closedfrechet.geometry import Curve

from helpers import UNIT_SQUARE


@pytest.fixture
def square():
    return Curve(UNIT_SQUARE)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
