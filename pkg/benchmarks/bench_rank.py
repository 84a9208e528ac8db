#!/usr/bin/env python3
"""Benchmark the hot kernels: numba @njit path vs the pure-numpy fallback.

The workloads are the ones the verification pipelines actually run: exact
ranks of boundary matrices over GF(2) and GF(32003), face scans of restricted
complexes, and the end-to-end regularity of initial ideals of 7-vertex
graphs.  Run with EDGEIDEALS_BACKEND=numpy to confirm the fallback is what is
being compared against (this script imports both paths directly, so a single
run covers them).

Usage: python3 benchmarks/bench_rank.py [--repeat N]
"""

import argparse
import time

import numpy as np

from edgeideals import kernels
from edgeideals.adpaths import initial_ideal
from edgeideals.betti import initial_ideal_regularity
from edgeideals.graphs import complete_graph, parse_graph6

P = 32003


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_ranks(repeat, rng):
    rows, cols = 400, 450
    dense = rng.integers(-1, 2, size=(rows, cols)).astype(np.int64)
    bits = dense != 0
    packed = kernels.pack_rows_gf2(bits)

    results = []
    results.append(
        (
            "gf2 rank 400x450",
            timeit(lambda: kernels.gf2_rank(packed, cols), repeat)
            if kernels.backend() == "numba"
            else None,
            timeit(lambda: kernels.gf2_rank_numpy(packed.copy(), cols), repeat),
        )
    )
    results.append(
        (
            f"gfp rank 400x450 (p={P})",
            timeit(lambda: kernels.gfp_rank(dense, P), repeat)
            if kernels.backend() == "numba"
            else None,
            timeit(lambda: kernels.gfp_rank_numpy(dense, P), repeat),
        )
    )
    return results


def bench_faces(repeat, rng):
    m = 14
    gens = np.array(
        [int(mask) for mask in rng.integers(1, 1 << m, size=20)], dtype=np.uint32
    )
    return [
        (
            "face scan 2^14, 20 gens",
            timeit(lambda: kernels.face_masks(m, gens), repeat)
            if kernels.backend() == "numba"
            else None,
            timeit(lambda: kernels.face_masks_numpy(m, gens), repeat),
        )
    ]


def bench_homology(repeat):
    ideal = initial_ideal(complete_graph(6))
    masks = [g.mask for g in ideal.gens]
    full = 0
    for mk in masks:
        full |= mk
    size = bin(full).count("1")
    local = masks  # supports already live in the full window

    return [
        (
            "top homology, K6 full support, p=2",
            timeit(lambda: kernels.top_homology(size, local, 2, 1), repeat)
            if kernels.backend() == "numba"
            else None,
            timeit(lambda: kernels.top_homology_numpy(size, np.array(local, dtype=np.uint32), 2, 1), repeat),
        ),
        (
            f"homology vector, K6 full support, p={P}",
            timeit(lambda: kernels.homology_vector(size, local, P), repeat)
            if kernels.backend() == "numba"
            else None,
            timeit(lambda: kernels.homology_vector_numpy(size, np.array(local, dtype=np.uint32), P), repeat),
        ),
    ]


def bench_end_to_end(repeat):
    # a middling 7-vertex graph; regularity over both fields
    g = parse_graph6("F@vV?")
    ideal = initial_ideal(g)

    def run():
        initial_ideal_regularity(ideal, 2)
        initial_ideal_regularity(ideal, P)

    label = "regularity of init ideal, n=7 graph, both fields"
    if kernels.backend() == "numba":
        return [(label, timeit(run, repeat), None)]
    return [(label, None, timeit(run, repeat))]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    rng = np.random.default_rng(20240811)

    print(f"active backend: {kernels.backend()}")
    if kernels.backend() == "numba":
        kernels.warm_up()

    rows = []
    rows += bench_ranks(args.repeat, rng)
    rows += bench_faces(args.repeat, rng)
    rows += bench_homology(args.repeat)
    rows += bench_end_to_end(args.repeat)

    width = max(len(r[0]) for r in rows)
    print(f"\n{'workload':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for label, tn, tp in rows:
        ns = f"{tn * 1e3:9.2f}ms" if tn is not None else "        --"
        ps = f"{tp * 1e3:9.2f}ms" if tp is not None else "        --"
        if tn and tp:
            speed = f"{tp / tn:7.1f}x"
        else:
            speed = "      --"
        print(f"{label:<{width}}  {ns}  {ps}  {speed}")


if __name__ == "__main__":
    main()
