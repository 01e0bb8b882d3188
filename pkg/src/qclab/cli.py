"""Command-line front end.  Every command prints TSV preceded by ``#`` header lines."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .errors import QclabError


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    return tuple(int(x) for x in text.split(",")) if text else ()


def _header(out, command: str, **fields) -> None:
    out.write(f"# qclab {__version__} {command}\n")
    for k, v in fields.items():
        out.write(f"# {k}={v}\n")


def _field_name(p: int, s: int) -> str:
    return f"GF({p}^{s})"


def _matrix_rows(out, tag: str, M) -> None:
    for i, row in enumerate(np.asarray(M).tolist()):
        out.write(f"{tag}\t{i + 1}\t" + "\t".join(str(int(x)) for x in row) + "\n")


# ------------------------------------------------------------------ commands

def cmd_mutate(args, out) -> bool:
    from .io import parse_quiver_file
    from .quiver import principal_pair
    from .seeds import quasi_commutation_defects, seed_by_path
    from .torus import is_bar_invariant, render

    Q = parse_quiver_file(args.quiver)
    pair = principal_pair(Q)
    path = _ints(args.path)
    for k in path:
        if not 1 <= k <= Q.n:
            raise QclabError(f"mutation index {k} outside 1..{Q.n}")
    seed = seed_by_path(pair, path)
    _header(out, "mutate", quiver=args.quiver, path=",".join(map(str, path)),
            Lambda0=pair.Lambda.tolist())
    _matrix_rows(out, "B", seed.Btilde)
    _matrix_rows(out, "Lambda", seed.Lambda)
    ok = True
    defects = quasi_commutation_defects(seed.cluster, seed.Lambda)
    for i, x in enumerate(seed.cluster):
        bar = is_bar_invariant(x)
        ok &= bar
        out.write(f"x\t{i + 1}\t{render(x)}\t{'bar-invariant' if bar else 'NOT-bar-invariant'}\n")
    out.write(f"check\tquasi-commutation\t{'PASS' if not defects else 'FAIL ' + str(defects)}\n")
    return ok and not defects


def cmd_char(args, out) -> bool:
    from .character import census_table, character_from_census
    from .io import parse_rep_file
    from .quiver import principal_pair
    from .torus import render

    V = parse_rep_file(args.rep)
    pair = principal_pair(V.quiver)
    census = census_table(V)
    X = character_from_census(census, V.dims, pair)
    _header(out, "char", rep=args.rep, field=_field_name(V.cat.p, V.cat.s), Lambda=pair.Lambda.tolist())
    out.write(f"character\t{render(X)}\n")
    out.write("e\tcount\n")
    for e in sorted(census):
        out.write(f"{','.join(map(str, e))}\t{census[e]}\n")
    return True


def cmd_gr_count(args, out) -> bool:
    from .grassmannian import grassmannian_census
    from .io import parse_rep_file

    V = parse_rep_file(args.rep)
    census = grassmannian_census(V)
    _header(out, "gr-count", rep=args.rep, field=_field_name(V.cat.p, V.cat.s), dims=V.dims)
    out.write("e\tcount\n")
    for e in sorted(census):
        out.write(f"{','.join(map(str, e))}\t{census[e]}\n")
    return True


def cmd_verify_bijection(args, out) -> bool:
    from .io import parse_quiver_file
    from .quiver import principal_pair
    from .rep import DEFAULT_BUDGETS
    from .seeds import alternating_paths
    from .verify import primes_agree, verify_bijection

    Q = parse_quiver_file(args.quiver)
    paths = alternating_paths(args.depth) if args.alternating else None
    depth = None if args.depth <= 0 else args.depth
    rep = verify_bijection(Q, args.p, args.s, depth, args.seed, paths=paths)
    _header(out, "verify bijection", quiver=args.quiver, field=_field_name(args.p, args.s), depth=args.depth,
            seed=args.seed, budgets=DEFAULT_BUDGETS, Lambda=principal_pair(Q).Lambda.tolist())
    out.write("path\tdenominator\tstatus\tvariable\tcharacter\n")
    for r in rep.rows:
        out.write(f"{','.join(map(str, r.path))}\t{','.join(map(str, r.denominator))}\t{r.status}\t"
                  f"{r.variable}\t{r.character}\n")
    out.write(f"summary\tvariables={rep.n_variables}\tmatched={rep.n_matched}\tinjective={rep.injective}\t"
              f"saturated={rep.saturated}\n")
    ok = rep.ok
    if args.compare_p:
        other = verify_bijection(Q, args.compare_p, 1, depth, args.seed, paths=paths)
        agree = primes_agree(rep, other)
        out.write(f"summary\tcompare p={args.compare_p}\tmatched={other.n_matched}\tagree={agree}\n")
        ok = ok and other.ok and agree
    return ok


def cmd_verify_hall(args, out) -> bool:
    from .ar import injective, projective
    from .hall import assoc_instance, green_instance, hom_hall_instance, verify_hall_identity
    from .io import parse_quiver_file
    from .rep import category_for_q
    from .report import HEADER

    Q = parse_quiver_file(args.quiver)
    cat = category_for_q(Q, args.p)
    rng = np.random.default_rng(args.seed)
    _header(out, "verify hall", quiver=args.quiver, field=_field_name(args.p, 1), max_dim=args.max_dim,
            samples=args.samples, seed=args.seed)
    out.write(HEADER + "\n")
    ok = True
    rows = []
    for _ in range(args.samples):
        rows += verify_hall_identity("assoc", assoc_instance(cat, args.max_dim, rng))
        inst = green_instance(cat, args.max_dim, rng)
        rows += verify_hall_identity("green", inst)
        rows += verify_hall_identity("hall-pairs", {"X": inst["V"], "Y": inst["W"],
                                                    "Z": _middle(inst["V"], inst["W"], rng)})
    for _ in range(args.hom_samples):
        inst = hom_hall_instance(cat, args.max_dim, rng)
        rows += verify_hall_identity("hom-hall", inst)
        i = int(rng.integers(0, cat.n))
        rows += verify_hall_identity("hom-hall2", {"W": inst["W"], "I": injective(cat, i), "P": projective(cat, i)})
    for r in rows:
        out.write(r.row() + "\n")
        ok &= r.ok
    return ok


def _middle(V, W, rng):
    """Middle term of a random extension of V by W."""
    from .rep import ext_space

    ext = ext_space(V, W)
    return ext.middle_term([int(x) for x in rng.integers(0, V.cat.q, size=ext.dimF)])


def cmd_verify_tilting(args, out) -> bool:
    from .character import verify_edge
    from .errors import HypothesisFailed
    from .io import parse_quiver_file
    from .quiver import principal_pair
    from .rep import category_for_q
    from .tilting import seed_of_tilting, sweep, zero_tilting

    Q = parse_quiver_file(args.quiver)
    pair = principal_pair(Q)
    cat = category_for_q(pair.Qtilde, args.p)
    _header(out, "verify tilting", quiver=args.quiver, field=_field_name(args.p, 1), depth=args.depth,
            seed=args.seed, Lambda=pair.Lambda.tolist())
    T0 = seed_of_tilting(zero_tilting(pair, cat))
    base = bool(np.array_equal(T0.Btilde, pair.Btilde)) and bool(np.array_equal(T0.Lambda, pair.Lambda))
    out.write(f"initial\tB_T0=B and Lambda_T0=Lambda\t{'PASS' if base else 'FAIL'}\n")
    out.write("path\tkind\tB\tLambda\tvariables\ttheorem\n")
    ok = base
    for rec in sweep(pair, cat, args.depth, args.seed):
        theorem = "skipped"
        if args.theorems:
            try:
                checks = verify_edge(pair, rec)
                theorem = "PASS" if all(c.ok for c in checks) else "FAIL"
            except HypothesisFailed as exc:
                theorem = f"hypothesis failed: {exc}"
        good = rec.b_match and rec.lambda_match and rec.variables_match and theorem in ("PASS", "skipped")
        ok &= good
        status = ["PASS" if x else "FAIL" for x in (rec.b_match, rec.lambda_match, rec.variables_match)]
        out.write(f"{','.join(map(str, rec.path))}\t{rec.kind}\t" + "\t".join(status) + f"\t{theorem}\n")
    return ok


def cmd_interp(args, out) -> bool:
    from .errors import HoldoutMismatch, NonIntegerCoefficients
    from .interp import interpolate_counting_poly, unimodular_check
    from .io import parse_quiver_file

    Q = parse_quiver_file(args.quiver)
    fields = _ints(args.fields)
    _header(out, "interp", quiver=args.quiver, dimvec=args.dimvec, e=args.e, fields=args.fields,
            holdout=args.holdout, seed=args.seed)
    try:
        P = interpolate_counting_poly(Q, _ints(args.dimvec), _ints(args.e), fields, args.holdout, args.seed)
    except (HoldoutMismatch, NonIntegerCoefficients) as exc:
        out.write(f"error\t{type(exc).__name__}\t{exc}\n")
        return False
    out.write(f"polynomial\t{P.render()}\n")
    out.write("coefficients\t" + ",".join(map(str, P.coefficients)) + "\n")
    out.write(f"degree_bound\t{P.degree_bound}\n")
    for q, c in P.samples:
        out.write(f"sample\t{q}\t{c}\n")
    hq, hc, hok = P.holdout if P.holdout else (None, None, True)
    if P.holdout:
        out.write(f"holdout\t{hq}\t{hc}\t{'PASS' if hok else 'FAIL'}\n")
    u = unimodular_check(P)
    out.write(f"nonnegative\t{u.nonnegative}\n")
    out.write(f"unimodular_evidence\t{u.describe()}\n")
    return hok


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qclab", description="Quantum cluster characters of valued quivers.")
    sub = ap.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mutate", help="mutate the principal quantum seed along a path")
    m.add_argument("--quiver", required=True)
    m.add_argument("--path", default="")
    m.set_defaults(func=cmd_mutate)

    c = sub.add_parser("char", help="quantum cluster character of a representation")
    c.add_argument("--rep", required=True)
    c.set_defaults(func=cmd_char)

    g = sub.add_parser("gr-count", help="subrepresentation counts by dimension vector")
    g.add_argument("--rep", required=True)
    g.set_defaults(func=cmd_gr_count)

    v = sub.add_parser("verify", help="run a verification suite")
    vs = v.add_subparsers(dest="suite", required=True)
    b = vs.add_parser("bijection")
    b.add_argument("--quiver", required=True)
    b.add_argument("--p", type=int, default=2)
    b.add_argument("--s", type=int, default=1)
    b.add_argument("--depth", type=int, default=6, help="0 explores until saturation")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--alternating", action="store_true", help="follow only alternating paths of this length")
    b.add_argument("--compare-p", type=int, default=0, help="second prime for the field-independence check")
    b.set_defaults(func=cmd_verify_bijection)
    h = vs.add_parser("hall")
    h.add_argument("--quiver", required=True)
    h.add_argument("--p", type=int, default=2)
    h.add_argument("--max-dim", type=int, default=2)
    h.add_argument("--samples", type=int, default=100)
    h.add_argument("--hom-samples", type=int, default=10)
    h.add_argument("--seed", type=int, default=0)
    h.set_defaults(func=cmd_verify_hall)
    t = vs.add_parser("tilting")
    t.add_argument("--quiver", required=True)
    t.add_argument("--p", type=int, default=2)
    t.add_argument("--depth", type=int, default=4)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--no-theorems", dest="theorems", action="store_false",
                   help="skip the multiplication-theorem check on each edge")
    t.set_defaults(func=cmd_verify_tilting)

    i = sub.add_parser("interp", help="counting polynomial of a quiver Grassmannian")
    i.add_argument("--quiver", required=True)
    i.add_argument("--dimvec", required=True)
    i.add_argument("--e", required=True)
    i.add_argument("--fields", default="2,3,4,5")
    i.add_argument("--holdout", type=int, default=7)
    i.add_argument("--seed", type=int, default=0)
    i.set_defaults(func=cmd_interp)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ok = args.func(args, sys.stdout)
    except (QclabError, OSError) as exc:
        print(f"qclab: {exc}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
