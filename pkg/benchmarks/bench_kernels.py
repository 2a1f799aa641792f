#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Imports both backends directly (ignoring RELIAFORGE_NO_NUMBA) and times the
hot operations on the bundled benchmark network: batched state evaluation,
gradient, damage sweep, exact enumeration, and one full ascent.

Usage: python benchmarks/bench_kernels.py [--batch N] [--repeats K]
"""

import argparse
import time

import numpy as np

from reliaforge import _kernels_numba as nb
from reliaforge import _kernels_numpy as np_impl
from reliaforge.arrays import build_arrays
from reliaforge.model import rtbs_network
from reliaforge.paths import enumerate_paths


def timeit(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--batch", type=int, default=100_000,
                        help="states per batch evaluation (default 100000)")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats, best-of (default 5)")
    args = parser.parse_args()

    network = rtbs_network()
    arrays = build_arrays(network, enumerate_paths(network))
    r0 = arrays.base_reliability
    upper = 1.0 - r0
    cost = arrays.cost
    ptr, elems, od = arrays.path_ptr, arrays.path_elems, arrays.od_ptr
    n = arrays.n_elements

    rng = np.random.default_rng(0)
    batch = rng.uniform(0.3, 1.0, (args.batch, n))
    x0 = rng.uniform(0.0, 1.0, n) * upper

    # local element numbering for the exact-enumeration case (first OD pair)
    a, b = od[0], od[1]
    local_ids = sorted({int(e) for p in range(a, b)
                        for e in elems[ptr[p]:ptr[p + 1]]})
    remap = {g: i for i, g in enumerate(local_ids)}
    lptr = [0]
    lelems = []
    for p in range(a, b):
        lelems.extend(remap[int(e)] for e in elems[ptr[p]:ptr[p + 1]])
        lptr.append(len(lelems))
    # pad to 20 elements so the enumeration is 2^20 states
    k = 20
    r_local = np.full(k, 0.99)
    r_local[: len(local_ids)] = r0[local_ids]
    lptr = np.asarray(lptr, dtype=np.int64)
    lelems = np.asarray(lelems, dtype=np.int64)

    cases = [
        ("index_batch[%d]" % args.batch,
         lambda impl: impl.system_index_batch(batch, ptr, elems, od)),
        ("gradient x1000",
         lambda impl: [impl.system_gradient(r0, ptr, elems, od, n) for _ in range(1000)]),
        ("damage_sweep x1000",
         lambda impl: [impl.victim_indices(r0, ptr, elems, od, n) for _ in range(1000)]),
        ("exact_2^%d" % k,
         lambda impl: impl.exact_up_probability(r_local, lptr, lelems)),
        ("ascent (one start)",
         lambda impl: impl.ascent(r0, upper, cost, 1.0, x0, ptr, elems, od,
                                  5000, 1e-10, 1e-6)),
    ]

    print("warming up numba (JIT compile)...")
    for _, fn in cases:
        fn(nb)

    print(f"{'kernel':<24} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    print("-" * 60)
    for name, fn in cases:
        t_np = timeit(lambda: fn(np_impl), args.repeats)
        t_nb = timeit(lambda: fn(nb), args.repeats)
        print(f"{name:<24} {t_np * 1e3:>10.2f}ms {t_nb * 1e3:>10.2f}ms "
              f"{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
