from random import Random

import pytest

from hbarkp.hscalar import HContext
from hbarkp.rational import Rational


@pytest.fixture
def sym_ctx():
    return HContext.symbolic(-8, 8)


@pytest.fixture
def num_ctx():
    return HContext.numeric(Rational(1, 2))


@pytest.fixture
def rng():
    return Random(20240915)
