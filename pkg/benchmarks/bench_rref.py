"""Compiled against numpy GF(p) elimination, plus one resolution end to end.

    python benchmarks/bench_rref.py [--sizes 50 100 200 400] [--repeat 3]
"""

import argparse
import time

import numpy as np

from gorsum import linalg as la
from gorsum.algebra import algebra_from_presentation
from gorsum.fields import GF
from gorsum.poly import PolyRing
from gorsum.resolution import minimal_free_resolution
from gorsum.sums import connected_sum_over_k

F = GF(32003)


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_rref(sizes, repeat, rng):
    print(f"{'n':>6} {'rank':>6} {'cython s':>10} {'numpy s':>10} {'speedup':>8}")
    for n in sizes:
        # rank-deficient so elimination meets zero columns too
        A = la.matmul(F, F.random_array(rng, (n, n // 2)), F.random_array(rng, (n // 2, n)))
        res = {}
        for name in ("cython", "numpy"):
            la.use_backend(name)
            res[name] = _best(lambda: la.rref(F, A), repeat)
        (tc, (Rc, pc)), (tn, (Rn, pn)) = res["cython"], res["numpy"]
        assert pc == pn and np.array_equal(Rc, Rn)
        print(f"{n:>6} {len(pc):>6} {tc:>10.4f} {tn:>10.4f} {tn / tc:>7.1f}x")


def bench_resolution(repeat):
    R = algebra_from_presentation(PolyRing(F, ["x", "y"]), ["x^2", "y^3"])[0]
    S = algebra_from_presentation(PolyRing(F, ["z"]), ["z^4"])[0]
    Q = connected_sum_over_k(R, S)[0].Q
    print(f"\nBetti numbers of k over a length-{Q.dim} connected sum, 6 steps")
    for name in ("cython", "numpy"):
        la.use_backend(name)
        t, bt = _best(lambda: minimal_free_resolution(Q, None, 6), repeat)
        print(f"  {name:7} {t:8.3f} s  {bt.betti}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if la.BACKEND != "cython":
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    bench_rref(args.sizes, args.repeat, np.random.default_rng(0))
    bench_resolution(args.repeat)


if __name__ == "__main__":
    main()
