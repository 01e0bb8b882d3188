"""Counting polynomials of quiver Grassmannians by interpolation over several fields."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HoldoutMismatch, NonIntegerCoefficients
from .grassmannian import grassmannian_census
from .quiver import ValuedQuiver
from .rep import category_for_q
from .search import search_rigid


@dataclass
class CountingPoly:
    e: tuple[int, ...]
    v: tuple[int, ...]
    coefficients: list[int]
    samples: list[tuple[int, int]]
    holdout: tuple[int, int, bool] | None = None
    degree_bound: int = 0
    extra: list[tuple[int, int, bool]] = field(default_factory=list)

    def __call__(self, q: int) -> int:
        return sum(c * q**k for k, c in enumerate(self.coefficients))

    def render(self) -> str:
        parts = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def lagrange(points) -> list[Fraction]:
    """Coefficients (constant term first) of the interpolating polynomial through ``points``."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(len(basis)):
            coeffs[k] += yi * basis[k] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def gr_count(quiver: ValuedQuiver, v, e, q: int, rng_seed: int = 0) -> int:
    """|Gr_e(V)| for an exceptional V of dimension v over GF(q)."""
    cat = category_for_q(quiver, q)
    V = search_rigid(cat, v, rng_seed=rng_seed)
    return grassmannian_census(V).get(tuple(e), 0)


def interpolate_counting_poly(quiver: ValuedQuiver, v, e, q_list, holdout_q: int | None = None,
                              rng_seed: int = 0) -> CountingPoly:
    """Fit P with P(q) = |Gr_e(V_q)| on ``q_list`` and confirm it on a held-out field.

    Uses deg_bound + 1 samples, with deg_bound = max(0, <e, v - e>); the
    remaining listed fields act as internal holdouts.
    """
    v = tuple(int(x) for x in v)
    e = tuple(int(x) for x in e)
    rest = tuple(a - b for a, b in zip(v, e))
    bound = max(0, quiver.matrices.euler(e, rest))
    q_list = [int(q) for q in q_list]
    if len(q_list) < bound + 1:
        raise ValueError(f"need at least {bound + 1} fields for degree bound {bound}, got {len(q_list)}")
    samples = [(q, gr_count(quiver, v, e, q, rng_seed)) for q in q_list]
    fit = lagrange(samples[: bound + 1])
    if any(c.denominator != 1 for c in fit):
        raise NonIntegerCoefficients(f"interpolated coefficients {[str(c) for c in fit]} are not integers")
    P = CountingPoly(e, v, [int(c) for c in fit], samples, degree_bound=bound)
    for q, count in samples[bound + 1:]:
        P.extra.append((q, count, P(q) == count))
    bad = [(q, count) for q, count, ok in P.extra if not ok]
    if bad:
        raise HoldoutMismatch(f"{P.render()} misses the samples {bad}")
    if holdout_q is not None:
        fresh = gr_count(quiver, v, e, holdout_q, rng_seed + 1)
        P.holdout = (holdout_q, fresh, P(holdout_q) == fresh)
        if not P.holdout[2]:
            raise HoldoutMismatch(f"{P.render()} gives {P(holdout_q)} at q={holdout_q}, census gives {fresh}")
    return P


@dataclass
class Unimodality:
    nonnegative: bool
    decomposition: list[tuple[int, int]] | None  # (shift a, length b+1) for q^a (1 + ... + q^b)
    contiguous: bool
    symmetric: bool

    def describe(self) -> str:
        if not self.nonnegative:
            return "negative coefficient"
        if self.decomposition is None:
            return "zero polynomial"
        runs = ", ".join(f"q^{a}[{b}]" for a, b in self.decomposition)
        notes = []
        if not self.contiguous:
            notes.append("not a single contiguous q-number")
        if not self.symmetric:
            notes.append("runs do not share a centre")
        return runs + (" (" + "; ".join(notes) + ")" if notes else "")


def unimodular_check(P: CountingPoly | list[int]) -> Unimodality:
    """Greedy peeling of maximal runs of positive coefficients.

    Each step removes q^a (1 + q + ... + q^(b-1)) for the longest positive
    run starting at the lowest positive degree.  The result is evidence
    only: a failed peel does not refute unimodality.
    """
    c = list(P.coefficients if isinstance(P, CountingPoly) else P)
    if any(x < 0 for x in c):
        return Unimodality(False, None, False, False)
    if not any(c):
        return Unimodality(True, None, True, True)
    runs = []
    while any(c):
        a = next(i for i, x in enumerate(c) if x > 0)
        b = a
        while b + 1 < len(c) and c[b + 1] > 0:
            b += 1
        for i in range(a, b + 1):
            c[i] -= 1
        runs.append((a, b - a + 1))
    centres = {2 * a + length - 1 for a, length in runs}
    return Unimodality(True, runs, len(runs) == 1, len(centres) == 1)
