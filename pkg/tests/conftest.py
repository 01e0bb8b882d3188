import numpy as np
import pytest
from hypothesis import settings

from qclab.quiver import build_valued_quiver, principal_pair
from qclab.rep import category_for_q

settings.register_profile("qclab", deadline=None, derandomize=True)
settings.load_profile("qclab")

QUIVERS = {
    "A2": (2, [1, 1], [(1, 2, 1)]),
    "B2": (2, [2, 1], [(1, 2, 1)]),
    "G2": (2, [3, 1], [(1, 2, 1)]),
    "K": (2, [1, 1], [(1, 2, 2)]),
}


def quiver(name):
    return build_valued_quiver(*QUIVERS[name])


@pytest.fixture(params=["A2", "B2", "G2", "K"])
def any_quiver(request):
    return quiver(request.param)


@pytest.fixture
def A2():
    return quiver("A2")


@pytest.fixture
def B2():
    return quiver("B2")


@pytest.fixture
def G2():
    return quiver("G2")


@pytest.fixture
def kronecker():
    return quiver("K")


@pytest.fixture
def A2cat(A2):
    return category_for_q(A2, 2)


@pytest.fixture
def B2cat(B2):
    return category_for_q(B2, 2)


@pytest.fixture
def Kcat(kronecker):
    return category_for_q(kronecker, 2)


@pytest.fixture
def A2pair(A2):
    return principal_pair(A2)


@pytest.fixture
def B2pair(B2):
    return principal_pair(B2)


@pytest.fixture
def Kpair(kronecker):
    return principal_pair(kronecker)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
