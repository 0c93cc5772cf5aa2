#!/usr/bin/env python3
"""Exact anagram-chromatic census of small graphs.

Computes the exact value for paths, cycles, stars, and perfect binary trees
up to a size cap, next to the general bounds (chromatic number below,
independent-set coloring above).  A quick way to see how fast the value
moves away from the chromatic number once the graph branches.

Usage:
    python scripts/small_graph_census.py [--max-n 9]
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from anagraph import color as color_mod
from anagraph import construct
from anagraph.core import Graph


def families(max_n):
    for n in range(2, max_n + 1):
        yield f"P{n}", Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    for n in range(3, max_n + 1):
        yield f"C{n}", Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    for leaves in range(2, max_n):
        if leaves + 1 <= max_n:
            yield f"K1,{leaves}", Graph.from_edges(leaves + 1,
                                                   [(0, i + 1) for i in range(leaves)])
    h = 1
    while (1 << (h + 1)) - 1 <= max_n:
        yield f"T{h}", construct.perfect_binary_tree(h).graph()
        h += 1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=9)
    args = ap.parse_args()

    print(f"{'graph':<8} {'n':>3} {'chromatic':>9} {'exact':>6} {'indep. bound':>13}")
    for name, graph in families(args.max_n):
        chi = color_mod.chromatic_number(graph)
        exact = color_mod.exact_anagram_chromatic(graph).value
        s = color_mod.greedy_independent_set(graph, seed=0)
        upper = graph.n - len(s) + 1
        print(f"{name:<8} {graph.n:>3} {chi:>9} {exact:>6} {upper:>13}")


if __name__ == "__main__":
    main()
