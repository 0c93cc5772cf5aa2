#!/usr/bin/env python3
"""Run each lower-bound attack against colorings that are too small, end to
end: build the family, color it, extract a witness, verify it.

Usage:
    python scripts/attack_demo.py [--seed 0]
"""
import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from anagraph import attack, construct
from anagraph.core import Coloring, verify_witness
from anagraph.util import derive_seed, splitmix64


def show(name, witness, verified, seconds):
    mark = "ok" if verified else "FAILED"
    length = len(witness.path.vertices) if witness else 0
    print(f"  {name:<28} witness length {length:>5}  verified={mark}  [{seconds:.2f}s]")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(derive_seed(args.seed, "attack-demo"))

    print("tree attack: random 2-coloring of the depth-18 perfect tree")
    t18 = construct.perfect_binary_tree(18)
    g18 = t18.graph()
    coloring = Coloring.normalize(rng.choices(range(2), k=t18.n))
    t0 = time.perf_counter()
    w = attack.tree_attack(t18, coloring)
    show("tree_attack(T18, 2 colors)", w, w is not None and verify_witness(g18, coloring, w),
         time.perf_counter() - t0)

    print("tree attack: lazy random 3-coloring of the depth-30 tree")
    t30 = construct.perfect_binary_tree(30)
    base = splitmix64(derive_seed(args.seed, "lazy"))
    color_fn = lambda v: splitmix64(base ^ (v * 0x9E3779B97F4A7C15 & (2**64 - 1))) % 3
    t0 = time.perf_counter()
    w = attack.tree_attack(t30, color_fn, palette_size=3)
    graph, small_coloring, small = attack.materialize_witness_region(t30, color_fn, w)
    show("tree_attack(T30, 3 colors)", w, verify_witness(graph, small_coloring, small),
         time.perf_counter() - t0)

    print("sibling-tree attack: random 2-coloring, 4096 leaves")
    sib, handle = construct.sibling_tree(1 << 12)
    coloring = Coloring.normalize(rng.choices(range(2), k=sib.n))
    t0 = time.perf_counter()
    w = attack.sibling_tree_attack(sib, handle, coloring)
    show("sibling_tree_attack(2^12)", w, w is not None and verify_witness(sib, coloring, w),
         time.perf_counter() - t0)

    print("composite attack: random 2-coloring of the 110-vertex 4-regular graph")
    comp, descriptor = construct.composite_four_regular(10)
    coloring = Coloring.normalize(rng.choices(range(2), k=comp.n))
    t0 = time.perf_counter()
    w = attack.composite_attack(comp, descriptor, coloring)
    show("composite_attack(k=10)", w, w is not None and verify_witness(comp, coloring, w),
         time.perf_counter() - t0)


if __name__ == "__main__":
    main()
