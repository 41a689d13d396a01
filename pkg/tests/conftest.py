import random

import pytest

from ocpoly.algebra import AlgebraParams, Octonion
from ocpoly.scalars import EXACT, REAL


@pytest.fixture
def P():
    """Exact-rational octonions with the standard (-1,-1,-1) constants."""
    return AlgebraParams.octonions(EXACT)


@pytest.fixture
def PR():
    """Real-mode octonions."""
    return AlgebraParams.octonions(REAL)


@pytest.fixture
def basis(P):
    one = Octonion.one(P)
    i, j, k, l = (Octonion.basis(P, a) for a in (1, 2, 3, 4))
    return one, i, j, k, l


@pytest.fixture
def basis_r(PR):
    one = Octonion.one(PR)
    i, j, k, l = (Octonion.basis(PR, a) for a in (1, 2, 3, 4))
    return one, i, j, k, l


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
