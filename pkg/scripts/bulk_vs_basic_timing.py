#!/usr/bin/env python3
"""Timing comparison: batched peeling (BULK) vs single-vertex peeling (Basic).

Builds sparse random graphs containing one dense blob that survives k-truss
maintenance, so the starting candidate is large enough for the iteration
counts to matter, then reports iterations and wall time for both peelers.
"""
import argparse
import random
from fractions import Fraction

from atc.graph import Graph, QuerySpec
from atc.greedy import basic_search, bulk_search, iteration_bound


def blob_instance(n, blob_size, seed):
    rng = random.Random(seed)
    edges = []
    blob = rng.sample(range(n), blob_size)
    for i, u in enumerate(blob):
        for v in blob[i + 1:]:
            if rng.random() < 0.3:
                edges.append((u, v))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 4 / n:
                edges.append((u, v))
    g = Graph.from_edges(edges, extra_vertices=range(n))
    g.attach_attributes({v: (["hot"] if v in set(blob) and rng.random() < 0.7
                             else ["cold"]) for v in range(n)})
    q = QuerySpec(query_nodes=frozenset({g.internal(blob[0])}),
                  query_attrs=frozenset({g.attr_id("hot")}), k=4, d=4)
    return g, q


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--blob", type=int, default=150)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--epsilon", type=Fraction, default=Fraction(3, 100))
    args = ap.parse_args()

    bound = iteration_bound(args.n, 4, args.epsilon)
    print(f"n={args.n} blob={args.blob} epsilon={args.epsilon} "
          f"iteration bound={bound}")
    print(f"{'seed':<6}{'bulk iters':>11}{'bulk s':>8}"
          f"{'basic iters':>12}{'basic s':>9}{'speedup':>9}")
    for seed in range(args.seeds):
        g, q = blob_instance(args.n, args.blob, seed)
        q.epsilon = args.epsilon
        bulk_res, _ = bulk_search(g, q)
        basic_res, _ = basic_search(g, q)
        speedup = basic_res.wall_time / max(bulk_res.wall_time, 1e-9)
        print(f"{seed:<6}{bulk_res.iterations:>11}{bulk_res.wall_time:>8.3f}"
              f"{basic_res.iterations:>12}{basic_res.wall_time:>9.3f}"
              f"{speedup:>9.2f}")


if __name__ == "__main__":
    main()
