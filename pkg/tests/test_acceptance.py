"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines, or
``python tests/test_acceptance.py`` for the summary alone.
"""

import itertools
import sys
import time

import numpy as np
import pytest

from qclab.ar import injective, projective, tau
from qclab.character import verify_edge
from qclab.classify import is_indecomposable
from qclab.grassmannian import grassmannian_census
from qclab.hall import assoc_instance, green_instance, hom_hall_instance, verify_hall_identity
from qclab.interp import interpolate_counting_poly, unimodular_check
from qclab.quiver import fz_mutate, principal_pair
from qclab.rep import (
    RepCategory,
    base_change,
    category_for_q,
    ext_dim,
    hom_dim,
    random_field_linear_aut,
    random_rep,
    socle,
    top,
)
from qclab.seeds import alternating_paths, exchange_numerator, initial_seed, mutate_seed, quasi_commutation_defects
from qclab.tilting import slot_matrices, sweep, tilting_matrices, zero_tilting
from qclab.torus import exact_divide, is_bar_invariant
from qclab.verify import verify_bijection

sys.path.insert(0, __file__.rsplit("/", 1)[0])
from conftest import quiver  # noqa: E402

RESULTS = {}


def report(n, ok, detail, capsys=None):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)


def _vectors(rng, m, count):
    return [rng.integers(-4, 5, size=m).astype(object) for _ in range(count)]


# ---------------------------------------------------------------- criteria

def criterion_1():
    start = time.perf_counter()
    expected = {"A2": 3, "B2": 4, "G2": 6}
    parts, ok = [], True
    for name, count in expected.items():
        for p in (2, 3):
            rep = verify_bijection(quiver(name), p)
            good = rep.saturated and rep.n_variables == count and rep.n_matched == count and rep.ok
            ok &= good
            parts.append(f"{name}/F{p} {rep.n_matched}/{rep.n_variables}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    return ok, ", ".join(parts) + f" in {elapsed:.1f}s"


def criterion_2():
    start = time.perf_counter()
    rep = verify_bijection(quiver("K"), 2, paths=alternating_paths(6))
    elapsed = time.perf_counter() - start
    ok = rep.ok and rep.n_variables == 12 and elapsed < 120
    return ok, f"Kronecker alternating length 6: {rep.n_matched}/{rep.n_variables} matched in {elapsed:.1f}s"


def _walk(pair, paths):
    """Check division, bar invariance and quasi-commutation along every prefix of every path."""
    edges = 0
    for path in paths:
        s = initial_seed(pair)
        for k in path:
            s2 = mutate_seed(s, k)
            if exact_divide(exchange_numerator(s, k), s.cluster[k - 1]) != s2.cluster[k - 1]:
                return False, edges
            if not all(is_bar_invariant(x) for x in s2.cluster):
                return False, edges
            if quasi_commutation_defects(s2.cluster, s2.Lambda):
                return False, edges
            s = s2
            edges += 1
    return True, edges


def criterion_3():
    parts, ok = [], True
    for name, depth in [("A2", 6), ("B2", 7), ("G2", 9)]:
        paths = [p for p in itertools.product((1, 2), repeat=depth) if all(a != b for a, b in zip(p, p[1:]))]
        good, edges = _walk(principal_pair(quiver(name)), paths)
        ok &= good
        parts.append(f"{name} {edges} edges")
    good, edges = _walk(principal_pair(quiver("K")), alternating_paths(6))
    ok &= good
    parts.append(f"K {edges} edges")
    return ok, ", ".join(parts)


def criterion_4():
    parts, ok = [], True
    for name in ("A2", "B2"):
        cat = category_for_q(quiver(name), 2)
        rng = np.random.default_rng(7)
        counts = {"assoc": 0, "green": 0, "hom-hall": 0}
        for _ in range(100):
            for kind, make in (("assoc", assoc_instance), ("green", green_instance)):
                rows = verify_hall_identity(kind, make(cat, 2, rng))
                ok &= bool(rows) and all(r.ok for r in rows)
                counts[kind] += 1
        for _ in range(10):
            rows = verify_hall_identity("hom-hall", hom_hall_instance(cat, 2, rng))
            ok &= bool(rows) and all(r.ok for r in rows)
            counts["hom-hall"] += sum(r.kind == "hom-hall" for r in rows)
        ok &= counts["hom-hall"] >= 10
        parts.append(f"{name}: " + " ".join(f"{k}={v}" for k, v in counts.items()))
    return ok, "; ".join(parts)


def criterion_5():
    parts, ok = [], True
    for name in ("A2", "B2"):
        for q in (2, 3):
            pair = principal_pair(quiver(name))
            recs = sweep(pair, category_for_q(pair.Qtilde, q), 5)
            rows = [r for rec in recs for r in verify_edge(pair, rec)]
            ok &= bool(rows) and all(r.ok for r in rows)
            parts.append(f"{name}/q={q} {len(recs)} edges {len(rows)} checks")
    return ok, ", ".join(parts)


def criterion_6():
    parts, ok = [], True
    for name in ("A2", "B2"):
        pair = principal_pair(quiver(name))
        cat = RepCategory(pair.Qtilde, 2)
        B0, L0 = tilting_matrices(zero_tilting(pair, cat))
        ok &= bool(np.array_equal(B0, pair.Btilde) and np.array_equal(L0, pair.Lambda))
        recs = sweep(pair, cat, 5)
        # the seed side is re-derived here by FZ mutation along each recorded path
        for r in recs:
            B, L = pair.Btilde, pair.Lambda
            for k in r.path:
                B, L, _, _ = fz_mutate(B, L, k)
            Bt, Lt = slot_matrices(r.after)
            ok &= bool(np.array_equal(Bt, B) and np.array_equal(Lt, L))
            ok &= r.b_match and r.lambda_match and r.variables_match
        parts.append(f"{name} {len(recs)} edges")
    return ok, ", ".join(parts) + "; B_T0 = B and Lambda_T0 = Lambda"


def criterion_7():
    cases = [("K", (1, 2))]
    cases += [("A2", v) for v in [(1, 0), (0, 1), (1, 1)]]
    cases += [("B2", v) for v in [(1, 0), (0, 1), (1, 1), (1, 2)]]
    ok, polys = True, 0
    rendered = []
    for name, v in cases:
        for e in itertools.product(*[range(x + 1) for x in v]):
            P = interpolate_counting_poly(quiver(name), v, e, [2, 3, 4, 5], holdout_q=7)
            ok &= P.holdout[2] and unimodular_check(P).nonnegative
            polys += 1
            if name == "K" and e == (0, 1):
                ok &= P.coefficients == [1, 1]
                rendered.append(f"K (1,2) e=(0,1): {P.render()}")
    return ok, f"{polys} polynomials, holdout q=7 all equal, all nonnegative; " + "; ".join(rendered)


def criterion_8():
    ok = True
    rng = np.random.default_rng(2024)
    for name in ("A2", "B2", "G2", "K"):
        pair = principal_pair(quiver(name))
        M = pair.Qtilde.matrices
        for _ in range(200):
            b, c, v, w = _vectors(rng, pair.m, 4)
            for i in range(pair.n):
                ai = [int(j == i) for j in range(pair.m)]
                ok &= pair.lam(pair.Btilde[:, i], M.star_left(c)) == M.euler(ai, c)
                ok &= pair.lam(M.star_right(c), pair.Btilde[:, i]) == -M.euler(c, ai)
            ok &= pair.lam(M.star_right(b) - M.star_left(b), M.star_right(c) - M.star_left(c)) == \
                M.euler(c, b) - M.euler(b, c)
            lhs = pair.lam(-M.star_right(b) - M.star_left(v - b), -M.star_right(c) - M.star_left(w - c))
            ok &= lhs == pair.lam(M.star_left(v), M.star_left(w)) - M.euler(c, v - b) + M.euler(b, w - c)
        cat = RepCategory(pair.Qtilde, 2)
        for i in range(pair.m):
            alpha = tuple(int(j == i) for j in range(pair.m))
            I, P, S = injective(cat, i), projective(cat, i), cat.simple(i)
            ok &= tuple(M.star_left(I.dims)) == alpha == socle(I)[0].dims
            ok &= tuple(M.star_right(P.dims)) == alpha == top(P)[0].dims
            ok &= socle(S)[0].dims == alpha == top(S)[0].dims
        qcat = category_for_q(quiver(name), 2)
        QM = qcat.quiver.matrices
        for _ in range(50):
            V = random_rep(qcat, rng.integers(0, 3, size=2), rng)
            W = random_rep(qcat, rng.integers(0, 3, size=2), rng)
            ok &= hom_dim(V, W) - ext_dim(V, W) == QM.euler(V.dims, W.dims)
            ok &= hom_dim(V, tau(W)) == ext_dim(W, V)
            g = [random_field_linear_aut(V, i, rng) for i in range(qcat.n)]
            ok &= grassmannian_census(base_change(V, g)) == grassmannian_census(V)
        # <v, tau w> = -<w, v> for non-projective indecomposable w
        for d in [(1, 0), (1, 1), (1, 2), (2, 1)]:
            for _ in range(3):
                W = random_rep(qcat, d, rng)
                tW = tau(W)
                if tW.is_zero():
                    continue
                if not is_indecomposable(W):
                    continue
                for v in itertools.product(range(3), repeat=2):
                    ok &= QM.euler(v, tW.dims) == -QM.euler(W.dims, v)
    return ok, "dual and skew-form identities, socle/top classes, Euler/Hom-Ext, base change (50 per quiver), AR duality on A2 B2 G2 K"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 9)}


@pytest.mark.parametrize("n", list(CRITERIA))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n]()
    report(n, ok, detail, capsys)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        report(n, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
