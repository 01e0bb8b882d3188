import pytest

from qclab.verify import primes_agree, verify_bijection
from qclab.seeds import alternating_paths

from conftest import quiver


@pytest.mark.parametrize("name,p,count", [("A2", 2, 3), ("B2", 3, 4), ("G2", 2, 6)])
def test_finite_type(name, p, count):
    rep = verify_bijection(quiver(name), p)
    assert rep.saturated and rep.n_variables == count and rep.n_matched == count
    assert rep.ok


def test_a2_depth_five():
    rep = verify_bijection(quiver("A2"), 2, depth=5)
    assert rep.n_variables == 3 and rep.ok


@pytest.mark.parametrize("path,dims", [
    ((2, 1, 2, 1), [(0, 1), (1, 2), (2, 3), (3, 4)]),
    ((1, 2, 1, 2), [(1, 0), (2, 1), (3, 2), (4, 3)]),
])
def test_kronecker_one_sided(path, dims):
    rep = verify_bijection(quiver("K"), 2, paths=[path])
    assert [r.denominator for r in rep.rows] == dims
    assert rep.ok


def test_primes_agree():
    a = verify_bijection(quiver("B2"), 2)
    b = verify_bijection(quiver("B2"), 3)
    assert primes_agree(a, b)


def test_extension_field():
    rep = verify_bijection(quiver("A2"), 2, s=2)
    assert rep.q == 4 and rep.ok


def test_kronecker_alternating_paths():
    rep = verify_bijection(quiver("K"), 2, paths=alternating_paths(4))
    assert rep.n_variables == 8 and rep.ok
