"""Time the alternating Weyl-sum kernel under both backends.

Each case builds the residue histogram behind one S-matrix and checks
that numba and numpy produce identical integer counts.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from nsverlinde import _kernels
from nsverlinde.fusion import level_weights
from nsverlinde.rootdata import build_root_datum
from nsverlinde.weyl import enumerate_weyl

CASES = [("A3", 8), ("B3", 6), ("D4", 6), ("E6", 3), ("F4", 3)]


def inputs(name, k):
    rd = build_root_datum(name)
    group = enumerate_weyl(rd)
    table = level_weights(rd, k)
    nums = np.array(table.weights, dtype=np.int64).reshape(len(table), rd.rank) + 1
    pts = table.points
    return group.matrices, group.signs, nums, pts.ys, pts.modulus, group.order, len(table)


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    have_numba = _kernels._histogram_numba is not None
    print(f"{'case':8} {'|W|':>7} {'#P_k':>5} {'numpy s':>9} {'numba s':>9} {'speedup':>8}")
    for name, k in CASES:
        mats, signs, nums, ys, m, order, size = inputs(name, k)
        t_np, h_np = best_of(lambda: _kernels.residue_histogram(mats, signs, nums, ys, m, "numpy"), args.repeat)
        if have_numba:
            _kernels.residue_histogram(mats, signs, nums[:1], ys[:1], m, "numba")  # compile
            t_nb, h_nb = best_of(lambda: _kernels.residue_histogram(mats, signs, nums, ys, m, "numba"), args.repeat)
            assert np.array_equal(h_np, h_nb), f"backends disagree on {name} k={k}"
            print(f"{name} k={k:<3} {order:>7} {size:>5} {t_np:>9.4f} {t_nb:>9.4f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{name} k={k:<3} {order:>7} {size:>5} {t_np:>9.4f} {'n/a':>9} {'n/a':>8}")


if __name__ == "__main__":
    main()
