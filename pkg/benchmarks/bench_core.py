#!/usr/bin/env python3
"""Timing comparison of the compiled kernels against the pure-Python twins.

Run from the repo root:

    python3 benchmarks/bench_core.py [--articles 2000] [--nodes 20000]

The pure backend is loaded in-process by importing wikilink._core.pure
directly, so one run times both; outputs are also cross-checked so the
benchmark doubles as a coarse equivalence smoke test.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from wikilink._core import BACKEND, PairAccumulator, dijkstra_csr
from wikilink._core import pure


def _timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_pairs(rng, articles: int, concepts: int):
    batches = []
    for _ in range(articles):
        n = int(rng.integers(5, 60))
        ids = rng.choice(concepts, size=n, replace=False).astype(np.int64)
        boosted = (rng.random(n) < 0.2).astype(np.uint8)
        batches.append((ids, boosted))

    def run(accumulator_cls):
        acc = accumulator_cls()
        for ids, boosted in batches:
            acc.add_article(ids, boosted)
        return acc.items_arrays()

    t_active, (u1, v1, w1) = _timed(run, PairAccumulator)
    t_pure, (u2, v2, w2) = _timed(run, pure.PairAccumulator)
    assert np.array_equal(u1, u2) and np.array_equal(v1, v2) and np.array_equal(w1, w2)
    return t_active, t_pure


def bench_dijkstra(rng, nodes: int, arcs_per_node: int):
    m = nodes * arcs_per_node
    src = np.repeat(np.arange(nodes, dtype=np.int64), arcs_per_node)
    dst = rng.integers(0, nodes, size=m, dtype=np.int64)
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(nodes + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=nodes), out=indptr[1:])
    costs = rng.random(m) + 0.01

    def run(kernel):
        dist = np.empty(nodes, dtype=np.float64)
        pred = np.empty(nodes, dtype=np.int64)
        hops = np.empty(nodes, dtype=np.int64)
        kernel(indptr, dst, costs, 0, dist, pred, hops)
        return dist, pred, hops

    t_active, (d1, p1, h1) = _timed(run, dijkstra_csr)
    t_pure, (d2, p2, h2) = _timed(run, pure.dijkstra_csr)
    assert np.array_equal(d1, d2) and np.array_equal(p1, p2) and np.array_equal(h1, h2)
    return t_active, t_pure


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--articles", type=int, default=2000)
    parser.add_argument("--concepts", type=int, default=5000)
    parser.add_argument("--nodes", type=int, default=20000)
    parser.add_argument("--arcs-per-node", type=int, default=8)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"active backend: {BACKEND}")
    if BACKEND == "pure":
        print("note: compiled speedups unavailable; comparing pure against itself")

    t_active, t_pure = bench_pairs(rng, args.articles, args.concepts)
    print(f"pair accumulation  ({args.articles} articles): "
          f"{BACKEND} {t_active * 1e3:8.1f} ms   pure {t_pure * 1e3:8.1f} ms   "
          f"speedup x{t_pure / t_active:.1f}")

    t_active, t_pure = bench_dijkstra(rng, args.nodes, args.arcs_per_node)
    print(f"dijkstra           ({args.nodes} nodes):    "
          f"{BACKEND} {t_active * 1e3:8.1f} ms   pure {t_pure * 1e3:8.1f} ms   "
          f"speedup x{t_pure / t_active:.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
