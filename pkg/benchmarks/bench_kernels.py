"""Time the finite-field kernels on the numba and numpy backends.

Run with ``python benchmarks/bench_kernels.py``.  Each kernel is called
once per backend before timing so JIT compilation is excluded.
"""

import argparse
import time

import numpy as np

from qclab import _kernels
from qclab.quiver import build_valued_quiver
from qclab.rep import category_for_q, direct_sum, hom_basis, random_rep


def _field(q):
    cat = category_for_q(build_valued_quiver(1, (1,)), q)
    return cat.F


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases(q, size, rng):
    F = _field(q)
    M = rng.integers(0, q, size=(size, size), dtype=np.int64)
    A = rng.integers(0, q, size=(size, size), dtype=np.int64)
    Kron = build_valued_quiver(2, (1, 1), [(1, 2, 2)])
    cat = category_for_q(Kron, q)
    V = direct_sum(random_rep(cat, (1, 2), rng), random_rep(cat, (1, 2), rng))
    End = hom_basis(V, V).stack()
    return {
        "rref": lambda: _kernels.rref(M, F.add, F.mul, F.neg, F.inv),
        "matmul": lambda: _kernels.matmul(M, A, F.add, F.mul),
        "scan_invertible": lambda: _kernels.scan_invertible(End, q, F.add, F.mul, F.neg, F.inv, False),
        "find_idempotent": lambda: _kernels.find_idempotent(End, q, F.add, F.mul),
    }


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--size", type=int, default=96)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    table = cases(args.q, args.size, rng)
    results = {}
    for name in ("numba", "numpy"):
        _kernels.set_backend(name)
        for kernel, fn in table.items():
            fn()
            results[(kernel, name)] = (_time(fn, args.repeat), fn())
    _kernels.set_backend("numba")
    print("kernel\tnumba_s\tnumpy_s\tspeedup\tsame_result")
    for kernel in table:
        tn, rn = results[(kernel, "numba")]
        tp, rp = results[(kernel, "numpy")]
        same = _same(rn, rp)
        print(f"{kernel}\t{tn:.5f}\t{tp:.5f}\t{tp / tn:.1f}\t{same}")


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return bool(np.array_equal(np.asarray(a), np.asarray(b)))


if __name__ == "__main__":
    main()
