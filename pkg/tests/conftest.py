import pytest

from gleason_lab.rng import SplitMix64
from gleason_lab.scalars import Algebra

ALGEBRAS = (Algebra.R, Algebra.C, Algebra.H)


@pytest.fixture
def rng():
    return SplitMix64(0xFEED)


def pytest_make_parametrize_id(config, val, argname):
    if isinstance(val, Algebra):
        return val.value
    return None
