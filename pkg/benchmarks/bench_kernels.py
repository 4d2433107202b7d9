#!/usr/bin/env python3
"""Head-to-head timing of the compiled kernels vs the pure-Python fallback.

The workloads are taken from the real hot paths: sparse products of
invariant polynomials of 3x3 generic matrices, and fraction-free rank of a
commutator-relation matrix.  Run after `pip install -e .` so the extension
is built; the script imports both kernel modules directly, so the
DPINV_PURE switch is not needed here.
"""

import argparse
import statistics
import time

from dpinv import _kernels_py
from dpinv.freering import Alphabet, word_from_str
from dpinv.invariants import MatrixInvariants
from dpinv.theorems import abelianized_piece

try:
    from dpinv import _kernels_cy
except ImportError:
    _kernels_cy = None


def poly_workload():
    ab = Alphabet("xy")
    ctx = MatrixInvariants.get(ab, 3)
    w1 = word_from_str("xyx", ab)
    w2 = word_from_str("yxy", ab)
    a = ctx.e_poly(w1, 3).terms
    b = ctx.e_poly(w2, 3).terms
    return a, b


def rank_workload():
    _, rel = abelianized_piece(3, (2, 2))
    rows = rel._integer_rows()
    # triple the rows to make elimination work harder
    return rows + [[3 * a for a in r] for r in rows] + \
        [[a - 7 * b for a, b in zip(r, rows[0])] for r in rows]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=7)
    args = parser.parse_args()

    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))
    else:
        print("note: compiled extension not available; timing fallback only")

    a, b = poly_workload()
    rows = rank_workload()
    print(f"poly_mul operands: {len(a)} x {len(b)} terms")
    print(f"bareiss_rank matrix: {len(rows)} x {len(rows[0])}")
    print()
    print(f"{'kernel':<22} {'backend':<8} {'median s':>10}")

    results = {}
    for name, mod in backends:
        for label, fn in [
            ("poly_mul", lambda m=mod: m.poly_mul(a, b)),
            ("poly_add_scaled", lambda m=mod: m.poly_add_scaled(dict(a), b, -3)),
            ("bareiss_rank", lambda m=mod: m.bareiss_rank([r[:] for r in rows])),
        ]:
            t = best_of(fn, args.repeat)
            results[(label, name)] = t
            print(f"{label:<22} {name:<8} {t:>10.5f}")

    if _kernels_cy is not None:
        print()
        for label in ("poly_mul", "poly_add_scaled", "bareiss_rank"):
            ratio = results[(label, "python")] / results[(label, "cython")]
            print(f"{label}: compiled is {ratio:.2f}x the pure-Python speed")

    # the two backends must agree exactly
    if _kernels_cy is not None:
        assert _kernels_py.poly_mul(a, b) == _kernels_cy.poly_mul(a, b)
        assert _kernels_py.bareiss_rank([r[:] for r in rows]) == \
            _kernels_cy.bareiss_rank([r[:] for r in rows])
        print("\nagreement check: OK")


if __name__ == "__main__":
    main()
