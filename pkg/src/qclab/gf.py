"""Finite fields GF(p^k) with table arithmetic, and towers of them.

An element of GF(p^k) is an integer code in [0, p^k) whose base-p digits are
the coefficients (constant term first) of a polynomial in the class ``x`` of
the variable modulo the defining polynomial.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product

import numpy as np

from .errors import DegreeTooLarge, DivisionByZero, NotASubfield, NotPrime

MAX_DEGREE = 8
MAX_FIELD_SIZE = 4096


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**s``; raises NotPrime if q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            s, r = 0, q
            while r % p == 0:
                r //= p
                s += 1
            if r != 1 or not is_prime(p):
                break
            return p, s
    raise NotPrime(f"{q} is not a prime power")


# --- polynomials over GF(p) as coefficient lists, constant term first ---

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_pmod(a, b, p))
    return a


def _xpow_mod(e, f, p):
    result, base = [1], [0, 1]
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _prime_factors(k):
    out, f = set(), 2
    while f * f <= k:
        while k % f == 0:
            out.add(f)
            k //= f
        f += 1
    if k > 1:
        out.add(k)
    return out


def is_irreducible(f, p) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    k = len(f) - 1
    if k < 1:
        return False
    x = [0, 1]
    if _trim(_pmod(_sub(_xpow_mod(p**k, f, p), x, p), f, p)):
        return False
    for r in _prime_factors(k):
        h = _sub(_xpow_mod(p ** (k // r), f, p), x, p)
        if len(_pgcd(f, h, p)) > 1:
            return False
    return True


def _sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k, read from the top coefficient down."""
    if k == 1:
        return (0, 1)
    for top_down in product(range(p), repeat=k):
        f = list(reversed(top_down)) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The field GF(p^k) with full addition/multiplication tables."""

    def __init__(self, p: int, k: int, poly: tuple[int, ...]):
        self.p, self.k, self.poly = p, k, poly
        self.size = q = p**k
        digits = np.array([[(c // p**i) % p for i in range(k)] for c in range(q)], dtype=np.int64)
        weights = p ** np.arange(k, dtype=np.int64)
        self.digits = digits
        self.add = ((digits[:, None, :] + digits[None, :, :]) % p).dot(weights)
        self.neg = ((-digits) % p).dot(weights)
        self.sub = self.add[:, self.neg]
        if k == 1:
            r = np.arange(q, dtype=np.int64)
            mul = np.outer(r, r) % p
        else:
            mul = self._log_table_product(digits, weights)
        self.mul = mul
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            (hits,) = np.nonzero(mul[a] == 1)
            inv[a] = hits[0]
        self.inv = inv
        for name in ("add", "neg", "sub", "mul", "inv"):
            getattr(self, name).setflags(write=False)

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def _log_table_product(self, digits, weights) -> np.ndarray:
        p, q, f = self.p, self.size, list(self.poly)
        for g in range(2, q):
            gpoly = _trim([int(x) for x in digits[g]])
            exp = [1]
            cur = [1]
            for _ in range(q - 2):
                cur = _trim(_pmod(_pmul(cur, gpoly, p), f, p))
                code = sum(c * p**i for i, c in enumerate(cur))
                if code == 1:
                    break
                exp.append(code)
            if len(exp) == q - 1:
                break
        exp = np.array(exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        return mul

    @property
    def name(self) -> str:
        return f"GF({self.p}^{self.k})"

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    @cached_property
    def x(self) -> int:
        """Code of the polynomial generator (1 in the prime field)."""
        return self.p if self.k > 1 else 1

    def power(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = int(self.mul[r, a])
        return r

    def inverse(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self.name}")
        return int(self.inv[a])

    def from_digits(self, coeffs) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(coeffs))

    def evaluate(self, coeffs, at: int) -> int:
        """Evaluate a polynomial with GF(p) coefficients at an element of this field."""
        acc = 0
        for c in reversed(list(coeffs)):
            acc = int(self.add[self.mul[acc, at], int(c) % self.p])
        return acc


class FieldTower:
    """Fields GF(p^k) for a set of degrees with compatible embedding tables."""

    def __init__(self, p: int, degrees):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        degs = set(int(k) for k in degrees) | {1}
        for k in degs:
            if k < 1 or k > MAX_DEGREE:
                raise DegreeTooLarge(f"degree {k} exceeds the desk-scale guard {MAX_DEGREE}")
            if p**k > MAX_FIELD_SIZE:
                raise DegreeTooLarge(f"GF({p}^{k}) exceeds the table-size guard {MAX_FIELD_SIZE}")
        self.p = p
        self.degrees = tuple(sorted(degs))
        self.fields = {k: GF(p, k, least_irreducible(p, k)) for k in self.degrees}
        self.embeddings: dict[tuple[int, int], np.ndarray] = {}
        self._build_embeddings()

    def field(self, k: int) -> GF:
        try:
            return self.fields[k]
        except KeyError:
            raise NotASubfield(f"degree {k} not in tower {self.degrees}") from None

    def _table_from_root(self, k: int, l: int, root: int) -> np.ndarray:
        small, big = self.fields[k], self.fields[l]
        return np.array([big.evaluate(small.digits[c], root) for c in range(small.size)], dtype=np.int64)

    def _build_embeddings(self):
        for l in self.degrees:
            big = self.fields[l]
            self.embeddings[(l, l)] = np.arange(big.size, dtype=np.int64)
            subs = sorted((k for k in self.degrees if k < l and l % k == 0), reverse=True)
            for k in subs:
                small = self.fields[k]
                roots = [r for r in range(big.size) if big.evaluate(small.poly, r) == 0]
                chosen = None
                for r in roots:
                    table = self._table_from_root(k, l, r)
                    if self._consistent(k, l, table):
                        chosen = table
                        break
                if chosen is None:
                    raise AssertionError(f"no compatible embedding GF(p^{k}) -> GF(p^{l})")
                chosen.setflags(write=False)
                self.embeddings[(k, l)] = chosen

    def _consistent(self, k, l, table) -> bool:
        # through an intermediate field m with k | m | l
        for m in self.degrees:
            if k < m < l and m % k == 0 and l % m == 0:
                if not np.array_equal(self.embeddings[(m, l)][self.embeddings[(k, m)]], table):
                    return False
        # agreement with already-fixed embeddings into l on common subfields
        for (a, b), other in list(self.embeddings.items()):
            if b != l or a in (k, l):
                continue
            for j in self.degrees:
                if j < k and k % j == 0 and a % j == 0 and (j, k) in self.embeddings and (j, a) in self.embeddings:
                    if not np.array_equal(table[self.embeddings[(j, k)]], other[self.embeddings[(j, a)]]):
                        return False
        return True

    def embed(self, code: int, k: int, l: int) -> int:
        if (k, l) not in self.embeddings:
            raise NotASubfield(f"GF({self.p}^{k}) is not a declared subfield of GF({self.p}^{l})")
        return int(self.embeddings[(k, l)][code])

    def basis_over(self, k: int, l: int) -> list[int]:
        """Codes of x^0, ..., x^{l/k - 1} in GF(p^l): a basis over the embedded GF(p^k)."""
        if (k, l) not in self.embeddings:
            raise NotASubfield(f"GF({self.p}^{k}) is not a declared subfield of GF({self.p}^{l})")
        big = self.fields[l]
        return [big.power(big.x, j) for j in range(l // k)]


def build_tower(p: int, degrees) -> FieldTower:
    return FieldTower(p, degrees)


def field_op(tower: FieldTower, kind: str, *args):
    """Dispatch a single field operation.

    ``add``/``mul``: ``(k, a, b)``; ``inv``: ``(k, a)``; ``embed``:
    ``(a, k, l)``; ``trace-basis-list``: ``(k, l)``.
    """
    if kind == "add":
        k, a, b = args
        return int(tower.field(k).add[a, b])
    if kind == "mul":
        k, a, b = args
        return int(tower.field(k).mul[a, b])
    if kind == "inv":
        k, a = args
        return tower.field(k).inverse(a)
    if kind == "embed":
        a, k, l = args
        return tower.embed(a, k, l)
    if kind == "trace-basis-list":
        k, l = args
        return tower.basis_over(k, l)
    raise ValueError(f"unknown field operation {kind!r}")


class ExtField:
    """GF(q^d) viewed as a d-dimensional space over the base field GF(q), q = p^s.

    Coordinates are taken in the basis 1, x, ..., x^{d-1} where x is the
    polynomial generator of GF(p^{sd}); the base field sits inside through the
    tower embedding.
    """

    def __init__(self, tower: FieldTower, s: int, d: int):
        self.tower, self.s, self.d = tower, s, d
        self.base = tower.field(s)
        self.big = tower.field(s * d)
        emb = tower.embeddings[(s, s * d)]
        basis = tower.basis_over(s, s * d)
        big = self.big
        coords = np.zeros((big.size, d), dtype=np.int64)
        for vec in product(range(self.base.size), repeat=d):
            acc = 0
            for c, b in zip(vec, basis):
                acc = int(big.add[acc, big.mul[emb[c], b]])
            coords[acc] = vec
        self.coords = coords
        self.basis = basis
        weights = self.base.size ** np.arange(d, dtype=np.int64)
        self._decode_weights = weights
        self._from_coords = np.zeros(self.base.size**d, dtype=np.int64)
        self._from_coords[coords.dot(weights)] = np.arange(big.size)

    def element(self, vec) -> int:
        """Big-field code of the element with the given base-field coordinates."""
        return int(self._from_coords[int(np.asarray(vec, dtype=np.int64).dot(self._decode_weights))])

    def regular(self, y: int) -> np.ndarray:
        """Matrix over the base field of multiplication by y (columns = images of basis)."""
        big = self.big
        cols = [self.coords[big.mul[y, b]] for b in self.basis]
        return np.array(cols, dtype=np.int64).T.copy()

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        return self.regular(self.big.x)

    @cached_property
    def power_matrices(self) -> list[np.ndarray]:
        """Multiplication by x^j for j < d: an F-basis of K acting on K."""
        return [self.regular(b) for b in self.basis]

    def trace(self, y: int) -> int:
        R = self.regular(y)
        acc = 0
        for i in range(self.d):
            acc = int(self.base.add[acc, R[i, i]])
        return acc

    @cached_property
    def trace_gram(self) -> np.ndarray:
        big = self.big
        return np.array(
            [[self.trace(int(big.mul[a, b])) for b in self.basis] for a in self.basis], dtype=np.int64
        )
