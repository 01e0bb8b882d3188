import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qclab.errors import LambdaMismatch, NonExactDivision
from qclab.torus import (
    QHalfPoly,
    SpecValue,
    TorusElement,
    bar_involution,
    exact_divide,
    equal_at,
    is_bar_invariant,
    monomial,
    multiply,
    one,
    render,
    specialize,
    twisted,
)

LAM2 = ((0, 1), (-1, 0))


@st.composite
def skew_forms(draw, m=3):
    lam = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            x = draw(st.integers(-2, 2))
            lam[i][j], lam[j][i] = x, -x
    return tuple(tuple(r) for r in lam)


def qpolys():
    return st.dictionaries(st.integers(-3, 3), st.integers(-3, 3), min_size=1, max_size=2).map(QHalfPoly).filter(bool)


def elements(lam, max_terms=6):
    m = len(lam)
    exps = st.tuples(*[st.integers(-2, 2)] * m)
    return st.dictionaries(exps, qpolys(), min_size=1, max_size=max_terms).map(lambda d: TorusElement(lam, d))


@st.composite
def torus_triples(draw, max_terms=6):
    lam = draw(skew_forms())
    return lam, draw(elements(lam, max_terms)), draw(elements(lam, max_terms)), draw(elements(lam, max_terms))


def ordered_product(f, g):
    """Product computed through ordered words X_1^a_1 ... X_m^a_m and the commutation rule X_i X_j = q^lam_ij X_j X_i."""
    lam = f.lam
    m = len(lam)

    def half_to_word(a):
        # X^a = q^(-1/2 sum_{i<j} lam_ij a_i a_j) * word(a)
        return -sum(lam[i][j] * a[i] * a[j] for i in range(m) for j in range(i + 1, m))

    out = TorusElement(lam)
    for a, x in f.terms.items():
        for b, y in g.terms.items():
            c = tuple(i + j for i, j in zip(a, b))
            swap = 2 * sum(lam[i][j] * a[i] * b[j] for i in range(m) for j in range(i))
            k = half_to_word(a) + half_to_word(b) + swap - half_to_word(c)
            out = out + TorusElement(lam, {c: (x * y).shift(k)})
    return out


def test_monomial_identity():
    e = monomial(LAM2, (0, 0))
    X = monomial(LAM2, (2, -1), QHalfPoly.q_half(3, 5))
    assert multiply(e, X) == X == multiply(X, e)
    assert e == one(LAM2)


def test_monomial_product_example():
    x1, x2 = monomial(LAM2, (1, 0)), monomial(LAM2, (0, 1))
    assert multiply(x1, x2) == monomial(LAM2, (1, 1), QHalfPoly.q_half(1))
    assert multiply(x2, x1) == monomial(LAM2, (1, 1), QHalfPoly.q_half(-1))


def test_sum_product_example():
    x1, x2 = monomial(LAM2, (1, 0)), monomial(LAM2, (0, 1))
    expected = monomial(LAM2, (2, 0)) + monomial(LAM2, (1, 1), QHalfPoly.q_half(-1))
    assert multiply(x1 + x2, x1) == expected


def test_twisted():
    x1, x2 = monomial(LAM2, (1, 0)), monomial(LAM2, (0, 1))
    assert twisted(x1, x2) == monomial(LAM2, (1, 1)) == twisted(x2, x1)


def test_lambda_mismatch():
    with pytest.raises(LambdaMismatch):
        multiply(monomial(LAM2, (1, 0)), monomial(((0, 2), (-2, 0)), (1, 0)))


def test_bar_examples():
    X = monomial(LAM2, (1, 2), QHalfPoly.q_half(1))
    assert bar_involution(X) == monomial(LAM2, (1, 2), QHalfPoly.q_half(-1))
    assert is_bar_invariant(monomial(LAM2, (3, -1)))
    x1, x2 = monomial(LAM2, (1, 0)), monomial(LAM2, (0, 1))
    assert bar_involution(multiply(x1, x2)) == multiply(x2, x1)


def test_monomial_division():
    a, b = (2, -1), (1, 3)
    lam_ab = LAM2[0][1] * (a[0] * b[1] - a[1] * b[0])
    L = monomial(LAM2, (3, 2), QHalfPoly.q_half(lam_ab))
    assert exact_divide(L, monomial(LAM2, b)) == monomial(LAM2, a)


def test_non_exact_division():
    x1, x2 = monomial(LAM2, (1, 0)), monomial(LAM2, (0, 1))
    with pytest.raises(NonExactDivision):
        exact_divide(x1 + x2, x1 + x2 + monomial(LAM2, (0, 2)))


def test_specialize_examples():
    a = (1, 0)
    vals, shift = specialize(monomial(LAM2, a, QHalfPoly.q_half(1)), 2)
    assert vals == {a: SpecValue(0, 1)} and shift == 0
    vals, _ = specialize(monomial(LAM2, (0, 0), QHalfPoly({2: 1, 0: 1})), 2)
    assert vals == {(0, 0): SpecValue(3, 0)}
    # q^(1/2) + q^(-1/2) needs the shift N = 1: q^(1/2) * (...) = q + 1
    vals, shift = specialize(monomial(LAM2, (0, 0), QHalfPoly({1: 1, -1: 1})), 2)
    assert shift == 1 and vals == {(0, 0): SpecValue(3, 0)}


def test_spec_value_mul():
    t = SpecValue(0, 1)
    assert t.mul(t, 3) == SpecValue(3, 0)


def test_equal_at_distinguishes_half_powers():
    X = monomial(LAM2, (1, 0))
    assert not equal_at(X, X.scale_q(1), 4)
    assert equal_at(X.scale_q(2), X * 4, 4)


def test_render():
    X = monomial(LAM2, (1, -2), QHalfPoly.q_half(-1, 3))
    assert render(X) == "3*q^(-1/2)*X^[1,-2]"


@settings(max_examples=100)
@given(torus_triples())
def test_associative(data):
    _, f, g, h = data
    assert multiply(multiply(f, g), h) == multiply(f, multiply(g, h))


@settings(max_examples=100)
@given(torus_triples())
def test_product_matches_ordered_words(data):
    _, f, g, _ = data
    assert multiply(f, g) == ordered_product(f, g)


@settings(max_examples=100)
@given(skew_forms(), st.tuples(*[st.integers(-3, 3)] * 3), st.tuples(*[st.integers(-3, 3)] * 3))
def test_quasi_commutation(lam, a, b):
    Xa, Xb = monomial(lam, a), monomial(lam, b)
    lab = sum(a[i] * lam[i][j] * b[j] for i in range(3) for j in range(3))
    assert multiply(Xa, Xb) == multiply(Xb, Xa).scale_q(2 * lab)


@settings(max_examples=100)
@given(torus_triples())
def test_bar_anti_involution(data):
    _, f, g, _ = data
    assert bar_involution(bar_involution(f)) == f
    assert bar_involution(multiply(f, g)) == multiply(bar_involution(g), bar_involution(f))


@settings(max_examples=100)
@given(torus_triples(max_terms=10))
def test_division_round_trip(data):
    _, f, g, _ = data
    assert exact_divide(multiply(f, g), g) == f
