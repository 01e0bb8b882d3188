"""Quantum torus arithmetic with coefficients in Z[q^(1/2), q^(-1/2)].

Coefficients are stored as integer exponents of q^(1/2), so every operation
is exact integer arithmetic.  Monomials X^a are the bar-invariant normalized
ones, multiplying as X^a X^b = q^(Lambda(a,b)/2) X^(a+b).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import LambdaMismatch, NonExactDivision


class QHalfPoly:
    """Laurent polynomial in t = q^(1/2) with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = {int(k): int(v) for k, v in (terms or {}).items() if v}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "QHalfPoly":
        return cls({0: c})

    @classmethod
    def q_half(cls, k: int, c: int = 1) -> "QHalfPoly":
        """c * q^(k/2)."""
        return cls({k: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QHalfPoly.const(other)
        return isinstance(other, QHalfPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "QHalfPoly":
        if isinstance(other, int):
            other = QHalfPoly.const(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return QHalfPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "QHalfPoly":
        return QHalfPoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> "QHalfPoly":
        return self + (-other)

    def __mul__(self, other) -> "QHalfPoly":
        if isinstance(other, int):
            return QHalfPoly({k: v * other for k, v in self._terms.items()})
        out: dict[int, int] = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return QHalfPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "QHalfPoly":
        """Multiply by q^(k/2)."""
        return QHalfPoly({a + k: v for a, v in self._terms.items()})

    def bar(self) -> "QHalfPoly":
        return QHalfPoly({-a: v for a, v in self._terms.items()})

    def min_exp(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_exp(self) -> int:
        return max(self._terms) if self._terms else 0

    def exact_div(self, other: "QHalfPoly") -> "QHalfPoly | None":
        """Quotient in the Laurent ring, or None when ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return QHalfPoly()
        lo_a, lo_b = self.min_exp(), other.min_exp()
        num = {k - lo_a: v for k, v in self._terms.items()}
        den = {k - lo_b: v for k, v in other._terms.items()}
        top_b = max(den)
        lead = den[top_b]
        quot: dict[int, int] = {}
        while num:
            top = max(num)
            if top < top_b:
                return None
            c, r = divmod(num[top], lead)
            if r:
                return None
            s = top - top_b
            quot[s] = c
            for k, v in den.items():
                num[k + s] = num.get(k + s, 0) - c * v
                if num[k + s] == 0:
                    del num[k + s]
        return QHalfPoly(quot).shift(lo_a - lo_b)

    def evaluate(self, q0: int, shift: int = 0) -> "SpecValue":
        """Value of q^(shift/2) * self in Z[t]/(t^2 - q0)."""
        u = w = 0
        for k, v in self._terms.items():
            e = k + shift
            if e < 0:
                raise ValueError("negative half-power left after shift")
            if e % 2:
                w += v * q0 ** (e // 2)
            else:
                u += v * q0 ** (e // 2)
        return SpecValue(u, w)

    def render(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{v}*q^({k}/2)" for k, v in self.items())

    def __repr__(self) -> str:
        return f"QHalfPoly({self.render()})"


@dataclass(frozen=True)
class SpecValue:
    """u + w*t in Z[t]/(t^2 - q0), with t standing for q^(1/2)."""

    u: int
    w: int

    def mul(self, other: "SpecValue", q0: int) -> "SpecValue":
        return SpecValue(self.u * other.u + q0 * self.w * other.w, self.u * other.w + self.w * other.u)

    def __add__(self, other: "SpecValue") -> "SpecValue":
        return SpecValue(self.u + other.u, self.w + other.w)


Exponent = tuple[int, ...]


def _lam_key(Lambda) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in np.asarray(Lambda, dtype=object))


def _skew(lam: tuple, a: Exponent, b: Exponent) -> int:
    total = 0
    for i, x in enumerate(a):
        if x:
            row = lam[i]
            for j, y in enumerate(b):
                if y:
                    total += x * row[j] * y
    return total


def _order_key(a: Exponent):
    return (sum(a), a)


class TorusElement:
    """Finite Z[q^(+-1/2)]-combination of normalized monomials X^a."""

    __slots__ = ("lam", "terms")

    def __init__(self, Lambda, terms: Mapping[Exponent, QHalfPoly] | None = None):
        self.lam = Lambda if isinstance(Lambda, tuple) else _lam_key(Lambda)
        self.terms = {tuple(int(x) for x in a): c for a, c in (terms or {}).items() if not c.is_zero()}

    @property
    def m(self) -> int:
        return len(self.lam)

    def _check(self, other: "TorusElement") -> None:
        if self.lam != other.lam:
            raise LambdaMismatch("torus elements live in different quantum tori")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, TorusElement) and self.lam == other.lam and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.lam, frozenset(self.terms.items())))

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return TorusElement(self.lam, out)

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.lam, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TorusElement):
            return multiply(self, other)
        if isinstance(other, (int, QHalfPoly)):
            return scale(self, other)
        return NotImplemented

    def scale_q(self, k: int) -> "TorusElement":
        """Multiply every coefficient by q^(k/2)."""
        return TorusElement(self.lam, {a: c.shift(k) for a, c in self.terms.items()})

    def exponents(self) -> list[Exponent]:
        return sorted(self.terms)

    def leading(self) -> Exponent:
        return max(self.terms, key=_order_key)

    def render(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"TorusElement({render(self)})"


def zero(Lambda) -> TorusElement:
    return TorusElement(Lambda)


def monomial(Lambda, a: Iterable[int], coeff: QHalfPoly | int = 1) -> TorusElement:
    """The bar-invariant monomial X^a, optionally with a coefficient."""
    if isinstance(coeff, int):
        coeff = QHalfPoly.const(coeff)
    lam = Lambda if isinstance(Lambda, tuple) else _lam_key(Lambda)
    a = tuple(int(x) for x in a)
    if len(a) != len(lam):
        raise ValueError(f"exponent of length {len(a)} in a rank {len(lam)} torus")
    return TorusElement(lam, {a: coeff})


def one(Lambda) -> TorusElement:
    lam = Lambda if isinstance(Lambda, tuple) else _lam_key(Lambda)
    return monomial(lam, (0,) * len(lam))


def scale(f: TorusElement, c: QHalfPoly | int) -> TorusElement:
    if isinstance(c, int):
        c = QHalfPoly.const(c)
    return TorusElement(f.lam, {a: x * c for a, x in f.terms.items()})


def multiply(f: TorusElement, g: TorusElement, twisted: bool = False) -> TorusElement:
    """Product in the quantum torus; ``twisted`` drops the q-power so X^a * X^b = X^(a+b)."""
    f._check(g)
    out: dict[Exponent, QHalfPoly] = {}
    for a, x in f.terms.items():
        for b, y in g.terms.items():
            s = tuple(i + j for i, j in zip(a, b))
            c = x * y
            if not twisted:
                c = c.shift(_skew(f.lam, a, b))
            out[s] = out[s] + c if s in out else c
    return TorusElement(f.lam, out)


def twisted(f: TorusElement, g: TorusElement) -> TorusElement:
    return multiply(f, g, twisted=True)


def bar_involution(f: TorusElement) -> TorusElement:
    return TorusElement(f.lam, {a: c.bar() for a, c in f.terms.items()})


def is_bar_invariant(f: TorusElement) -> bool:
    return bar_involution(f) == f


def exact_divide(L: TorusElement, F: TorusElement, side: str = "right") -> TorusElement:
    """Return G with G*F = L, by leading-term cancellation in graded-lex order."""
    if side != "right":
        raise ValueError("only right division is supported")
    L._check(F)
    if F.is_zero():
        raise ZeroDivisionError("division by the zero torus element")
    lam = L.lam
    b = F.leading()
    lc_f = F.terms[b]
    cap = len(L.terms) * len(F.terms) + 1
    R = L
    G: dict[Exponent, QHalfPoly] = {}
    steps = 0
    while not R.is_zero():
        steps += 1
        if steps > cap:
            raise NonExactDivision("iteration cap exceeded")
        a = R.leading()
        c = R.terms[a].exact_div(lc_f)
        if c is None:
            raise NonExactDivision("leading coefficient is not divisible")
        diff = tuple(x - y for x, y in zip(a, b))
        c = c.shift(-_skew(lam, diff, b))
        term = TorusElement(lam, {diff: c})
        G[diff] = G[diff] + c if diff in G else c
        R = R - multiply(term, F)
        if not R.is_zero() and a in R.terms:
            raise NonExactDivision("remainder is stuck")
    return TorusElement(lam, G)


def min_half_power(f: TorusElement) -> int:
    return min((c.min_exp() for c in f.terms.values()), default=0)


def specialize(f: TorusElement, q0: int, shift: int | None = None):
    """Evaluate coefficients at q = q0 after multiplying by q^(N/2).

    Returns ``(values, N)`` where values maps exponent vectors to SpecValue.
    N defaults to the smallest shift clearing all negative half-powers.
    """
    if shift is None:
        shift = max(0, -min_half_power(f))
    vals = {}
    for a, c in f.terms.items():
        v = c.evaluate(q0, shift)
        if v.u or v.w:
            vals[a] = v
    return vals, shift


def equal_at(f: TorusElement, g: TorusElement, q0: int) -> bool:
    """Exact equality of two elements after specializing q to q0."""
    f._check(g)
    n = max(0, -min_half_power(f), -min_half_power(g))
    return specialize(f, q0, n)[0] == specialize(g, q0, n)[0]


def render(f: TorusElement) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for a in sorted(f.terms):
        mono = "X^[" + ",".join(str(x) for x in a) + "]"
        for k, v in f.terms[a].items():
            prefix = "" if v == 1 else f"{v}*"
            parts.append(f"{prefix}q^({k}/2)*{mono}")
    return " + ".join(parts)


def render_specialized(values: Mapping[Exponent, SpecValue]) -> str:
    parts = []
    for a in sorted(values):
        v = values[a]
        parts.append(f"({v.u}+{v.w}t)*X^[" + ",".join(str(x) for x in a) + "]")
    return " + ".join(parts) if parts else "0"
