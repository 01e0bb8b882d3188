"""Quiver (.vq) and representation (.vr) text files.

Quiver files::

    # comment
    n 2
    d 2 1
    arrow 1 2 [mult]

Representation files name a quiver file (relative paths resolve against
the rep file's directory), the field GF(p^s), the dimension vector, and one
``map <rows> <cols>`` block per expanded arrow in quiver order.  An arrow
s -> t with g = gcd(d_s, d_t) carries a (dim_t*d_t/g) x (dim_s*d_s/g)
matrix over GF(q^g), q = p^s, written as integer element codes.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import ParseError, QclabError, ShapeMismatch, ValidationError, WrongField
from .gf import is_prime
from .quiver import ValuedQuiver, build_valued_quiver
from .rep import Rep, RepCategory, build_rep


def _lines(text: str):
    """(line number, column of first token, tokens) for every non-blank line, comments stripped."""
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = body.split()
        if toks:
            yield no, len(body) - len(body.lstrip()) + 1, toks


def _int(tok: str, where: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{where}:{line}:{col}: expected an integer, got {tok!r}") from None


def _col_of(raw_line: str, k: int) -> int:
    """1-based column of the k-th token on a line."""
    pos = 0
    for i, tok in enumerate(raw_line.split()):
        pos = raw_line.index(tok, pos)
        if i == k:
            return pos + 1
        pos += len(tok)
    return 1


def parse_quiver_text(text: str, where: str = "<string>") -> ValuedQuiver:
    raw = text.splitlines()
    n = d = None
    arrows = []
    for no, col, toks in _lines(text):
        key, args = toks[0], toks[1:]
        ints = [_int(t, where, no, _col_of(raw[no - 1], i + 1)) for i, t in enumerate(args)]
        if key == "n":
            if n is not None or len(ints) != 1:
                raise ParseError(f"{where}:{no}:{col}: 'n' takes one integer and appears once")
            n = ints[0]
            if n < 1:
                raise ParseError(f"{where}:{no}:{_col_of(raw[no - 1], 1)}: n must be positive")
        elif key == "d":
            if n is None:
                raise ParseError(f"{where}:{no}:{col}: 'd' before 'n'")
            if d is not None or len(ints) != n:
                raise ParseError(f"{where}:{no}:{col}: 'd' needs exactly {n} valuations")
            d = ints
        elif key == "arrow":
            if n is None:
                raise ParseError(f"{where}:{no}:{col}: 'arrow' before 'n'")
            if len(ints) not in (2, 3):
                raise ParseError(f"{where}:{no}:{col}: 'arrow' takes source, target and an optional multiplicity")
            for i, x in enumerate(ints[:2]):
                if not 1 <= x <= n:
                    raise ParseError(f"{where}:{no}:{_col_of(raw[no - 1], i + 1)}: vertex {x} outside 1..{n}")
            arrows.append(tuple(ints))
        else:
            raise ParseError(f"{where}:{no}:{col}: unknown keyword {key!r}")
    if n is None or d is None:
        raise ParseError(f"{where}: missing {'n' if n is None else 'd'} line")
    try:
        return build_valued_quiver(n, d, arrows)
    except QclabError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def parse_quiver_file(path: str) -> ValuedQuiver:
    with open(path) as fh:
        return parse_quiver_text(fh.read(), path)


def write_quiver(q: ValuedQuiver) -> str:
    out = [f"n {q.n}", "d " + " ".join(str(x) for x in q.d)]
    for s, t, m in q.arrows:
        out.append(f"arrow {s} {t}" + (f" {m}" if m != 1 else ""))
    return "\n".join(out) + "\n"


def parse_rep_text(text: str, where: str = "<string>", base_dir: str = ".", quiver: ValuedQuiver | None = None) -> Rep:
    """Parse a representation; ``quiver`` overrides the file's ``quiver`` line."""
    raw = text.splitlines()
    items = list(_lines(text))
    p = s = dims = None
    qpath = None
    maps = []
    k = 0
    while k < len(items):
        no, col, toks = items[k]
        key, args = toks[0], toks[1:]
        k += 1
        if key == "quiver":
            if len(args) != 1:
                raise ParseError(f"{where}:{no}:{col}: 'quiver' takes one path")
            qpath = args[0]
            continue
        ints = [_int(t, where, no, _col_of(raw[no - 1], i + 1)) for i, t in enumerate(args)]
        if key == "p":
            if len(ints) != 1 or not is_prime(ints[0]):
                raise ParseError(f"{where}:{no}:{col}: 'p' takes one prime")
            p = ints[0]
        elif key == "s":
            if len(ints) != 1 or ints[0] < 1:
                raise ParseError(f"{where}:{no}:{col}: 's' takes one positive integer")
            s = ints[0]
        elif key == "dim":
            dims = ints
        elif key == "map":
            if len(ints) != 2 or min(ints) < 0:
                raise ParseError(f"{where}:{no}:{col}: 'map' takes a row and a column count")
            rows, cols = ints
            M = []
            for _ in range(rows if cols else 0):
                if k >= len(items):
                    raise ValidationError(f"{where}:{no}: map declares {rows} rows but the file ends")
                rno, rcol, rtoks = items[k]
                if rtoks[0] in ("map", "dim", "p", "s", "quiver"):
                    raise ValidationError(f"{where}:{rno}:{rcol}: map at line {no} declares {rows} rows, found {len(M)}")
                k += 1
                if len(rtoks) != cols:
                    raise ValidationError(f"{where}:{rno}:{rcol}: expected {cols} entries, found {len(rtoks)}")
                M.append([_int(t, where, rno, _col_of(raw[rno - 1], i)) for i, t in enumerate(rtoks)])
            maps.append((no, np.array(M, dtype=np.int64).reshape(rows, cols)))
        else:
            raise ParseError(f"{where}:{no}:{col}: unknown keyword {key!r}")
    if quiver is None:
        if qpath is None:
            raise ParseError(f"{where}: missing 'quiver' line")
        quiver = parse_quiver_file(os.path.join(base_dir, qpath))
    if p is None or dims is None:
        raise ParseError(f"{where}: missing {'p' if p is None else 'dim'} line")
    s = s or 1
    if len(dims) != quiver.n or min(dims) < 0:
        raise ValidationError(f"{where}: dimension vector {dims} does not fit a quiver with {quiver.n} vertices")
    cat = RepCategory(quiver, p, s)
    if len(maps) != len(cat.arrows):
        raise ValidationError(f"{where}: {len(cat.arrows)} arrows need maps, found {len(maps)}")
    try:
        return build_rep(cat, dims, [M for _, M in maps])
    except (ShapeMismatch, WrongField) as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def parse_rep_file(path: str, quiver: ValuedQuiver | None = None) -> Rep:
    with open(path) as fh:
        return parse_rep_text(fh.read(), path, os.path.dirname(os.path.abspath(path)), quiver)


def write_rep(V: Rep, quiver_path: str) -> str:
    cat = V.cat
    out = [f"quiver {quiver_path}", f"p {cat.p}", f"s {cat.s}", "dim " + " ".join(str(x) for x in V.dims)]
    for M in V.gmatrices():
        out.append(f"map {M.shape[0]} {M.shape[1]}")
        out.extend(" ".join(str(int(x)) for x in row) for row in M)
    return "\n".join(out) + "\n"
