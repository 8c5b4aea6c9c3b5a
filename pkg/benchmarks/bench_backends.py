#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

Runs each hot kernel on a representative workload with both backends and
prints a timing table.  Works regardless of GMCLONE_BACKEND; the numba
column reports n/a when numba is not importable.

    python benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import itertools
import math
import time

import numpy as np

from gmclone import kernels
from gmclone.builder import GMParameters, build_gm
from gmclone.mps import mps_from_state
from gmclone.qubit import equatorial_qubit


def time_call(fn, *args, repeats):
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def workload_permutation():
    n = 8
    rng = np.random.default_rng(11)
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    amps /= np.linalg.norm(amps)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return (amps, perms)


def workload_contract():
    state = build_gm(GMParameters(8, equatorial_qubit(0.0)))  # 15 qubits
    mps, _ = mps_from_state(state, 1e-12)
    return (mps.sites, mps.left_boundary, mps.right_boundary)


def workload_popcount():
    return (np.arange(2**22, dtype=np.int64),)


BENCHES = [
    ("permutation_average (n=8, 8! perms)", workload_permutation,
     kernels.permutation_average_numpy, "permutation_average_numba"),
    ("contract_sweep (15-qubit cloner MPS)", workload_contract,
     kernels.contract_sweep_numpy, "contract_sweep_numba"),
    ("popcounts (2^22 indices)", workload_popcount,
     kernels.popcounts_numpy, "popcounts_numba"),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    print(f"active backend: {kernels.active_backend()}")
    header = f"{'kernel':<40} {'numpy':>10} {'numba':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, make_args, numpy_fn, numba_name in BENCHES:
        call_args = make_args()
        t_np = time_call(numpy_fn, *call_args, repeats=args.repeats)
        if kernels.USE_NUMBA:
            numba_fn = getattr(kernels, numba_name)
            numba_fn(*call_args)  # JIT warmup outside the timed region
            t_nb = time_call(numba_fn, *call_args, repeats=args.repeats)
            print(f"{label:<40} {t_np:>9.4f}s {t_nb:>9.4f}s {t_np / t_nb:>8.1f}x")
        else:
            print(f"{label:<40} {t_np:>9.4f}s {'n/a':>10} {'n/a':>9}")


if __name__ == "__main__":
    main()
