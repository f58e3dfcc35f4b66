#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs each hot kernel on a representative workload under both backends and
prints the timings side by side.  Set UNCERTAIN_OBJECTIVES_NO_NUMBA=1 to
check what the fallback costs in production use; here both paths are always
imported explicitly, so the comparison runs regardless of the flag.

Usage: python3 benchmarks/bench_kernels.py [--graphs 200000] [--repeat 3]
"""

import argparse
import itertools
import time

import numpy as np

from uncertain_objectives import _kernels


def _random_graph_rows(rng, n_graphs: int, n: int) -> np.ndarray:
    """Random digraph batch as bit-rows with edge density ~0.3."""
    dense = rng.random((n_graphs, n, n)) < 0.3
    for i in range(n):
        dense[:, i, i] = False
    rows = np.zeros((n_graphs, n), dtype=np.int64)
    for j in range(n):
        rows |= dense[:, :, j].astype(np.int64) << j
    return rows


def _time(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--graphs", type=int, default=200_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if not _kernels._HAVE_NUMBA:
        print("numba backend unavailable (flag set or import failed); "
              "both columns below run the numpy fallback")
        numba_impls = _kernels.NUMPY_IMPLS
    else:
        numba_impls = {
            "closure_rows": _kernels._closure_rows_nb,
            "cyclic_flags": _kernels._cyclic_flags_nb,
            "connected_flags": _kernels._connected_flags_nb,
            "pattern_valid_flags": _kernels._pattern_valid_flags_nb,
            "single_edge_pattern_flags": _kernels._single_edge_pattern_flags_nb,
            "pairwise_matrix": _kernels._pairwise_matrix_nb,
            "path_slacks": _kernels._path_slacks_nb,
        }
    numpy_impls = _kernels.NUMPY_IMPLS

    rng = np.random.default_rng(0)
    n = 5
    rows = _random_graph_rows(rng, args.graphs, n)
    closed = numpy_impls["closure_rows"](rows)

    k = 2
    removed_u = rng.integers(0, n, size=(args.graphs, k)).astype(np.int64)
    removed_v = (removed_u + 1 + rng.integers(0, n - 1, size=(args.graphs, k))) % n
    removed_len = np.full(args.graphs, k, dtype=np.int64)

    n_orders = 7
    perm = np.array(list(itertools.permutations(range(n_orders))), dtype=np.int64)
    probs = rng.random(len(perm))
    probs /= probs.sum()

    z = rng.random((n_orders, n_orders))
    z = np.triu(z, 1)
    z = z + np.triu(1 - z, 1).T
    np.fill_diagonal(z, 0.5)
    paths = np.array(list(itertools.permutations(range(n_orders), 4)), dtype=np.int64)
    paths = np.repeat(paths, 200, axis=0)

    workloads = {
        "closure_rows": (rows,),
        "cyclic_flags": (closed,),
        "connected_flags": (rows,),
        "pattern_valid_flags": (rows, removed_u, removed_v, removed_len),
        "single_edge_pattern_flags": (rows,),
        "pairwise_matrix": (perm, probs, n_orders),
        "path_slacks": (z, paths),
    }

    print(f"workload: {args.graphs} graphs (n={n}), {len(perm)} orders (n={n_orders}), "
          f"{len(paths)} paths; best of {args.repeat}")
    header = f"{'kernel':<28}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, work in workloads.items():
        nb_fn = numba_impls[name]
        np_fn = numpy_impls[name]
        nb_fn(*work)  # JIT warmup
        t_nb = _time(nb_fn, *work, repeat=args.repeat)
        t_np = _time(np_fn, *work, repeat=args.repeat)
        ratio = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{name:<28}{t_nb:>12.4f}{t_np:>12.4f}{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
