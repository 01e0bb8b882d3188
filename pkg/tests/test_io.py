import numpy as np
import pytest

from qclab.errors import ParseError, ValidationError
from qclab.io import parse_quiver_file, parse_quiver_text, parse_rep_file, parse_rep_text, write_quiver, write_rep
from qclab.rep import category_for_q, random_rep

from conftest import QUIVERS, quiver


def test_b2_file():
    Q = parse_quiver_text("# B2\nn 2\nd 2 1\narrow 1 2\n")
    assert Q.n == 2 and list(Q.d) == [2, 1]


def test_vertex_range():
    with pytest.raises(ParseError, match=r"<string>:3:9: vertex 3 outside 1..2"):
        parse_quiver_text("n 2\nd 1 1\narrow 1 3\n")


def test_bad_integer_position():
    with pytest.raises(ParseError, match=r":2:5:"):
        parse_quiver_text("n 2\nd 1 x\n")


def test_unknown_keyword():
    with pytest.raises(ParseError, match="unknown keyword"):
        parse_quiver_text("n 2\nd 1 1\nedge 1 2\n")


def test_cycle_is_validation_error():
    with pytest.raises(ValidationError):
        parse_quiver_text("n 2\nd 1 1\narrow 1 2\narrow 2 1\n")


@pytest.mark.parametrize("name", list(QUIVERS))
def test_quiver_round_trip(name, tmp_path):
    Q = quiver(name)
    path = tmp_path / "q.vq"
    path.write_text(write_quiver(Q))
    R = parse_quiver_file(str(path))
    assert R.n == Q.n and list(R.d) == list(Q.d) and R.arrows == Q.arrows


@pytest.mark.parametrize("name,q", [("A2", 2), ("B2", 2), ("G2", 3), ("K", 4)])
def test_rep_round_trip(name, q, tmp_path):
    Q = quiver(name)
    (tmp_path / "q.vq").write_text(write_quiver(Q))
    V = random_rep(category_for_q(Q, q), (1, 2), np.random.default_rng(1))
    (tmp_path / "r.vr").write_text(write_rep(V, "q.vq"))
    W = parse_rep_file(str(tmp_path / "r.vr"))
    assert W.dims == V.dims and W.cat.q == q
    assert all(np.array_equal(a, b) for a, b in zip(W.gmatrices(), V.gmatrices()))


def test_wrong_row_count():
    text = "p 2\ndim 1 1\nmap 2 1\n1\n"
    with pytest.raises(ValidationError):
        parse_rep_text(text, quiver=quiver("A2"))


def test_wrong_entry_count():
    with pytest.raises(ValidationError, match=r":4:1: expected 1 entries"):
        parse_rep_text("p 2\ndim 1 1\nmap 1 1\n1 0\n", quiver=quiver("A2"))


def test_wrong_field_entry():
    with pytest.raises(ValidationError):
        parse_rep_text("p 2\ndim 1 1\nmap 1 1\n2\n", quiver=quiver("A2"))


def test_non_prime():
    with pytest.raises(ParseError):
        parse_rep_text("p 4\ndim 1 1\nmap 1 1\n1\n", quiver=quiver("A2"))
