"""Find anagrams in a colored graph, or certify there are none.

Three search modes:

* ``exhaustive`` -- DFS over all simple paths from every root, testing each
  even window that ends at the newest vertex.  Complete, exponential in
  general; a step budget turns silent truncation into an explicit
  :class:`~anagraph.core.BudgetExhausted`.
* ``tree`` -- enumerates only the O(n^2) unique paths of a forest, checking
  each full path once.  Complete for forests and fast enough for thousands
  of vertices.
* ``randomized`` -- seeded self-avoiding walks with window checks; sound
  (every witness is verified) but incomplete.

The verdict "free" is only ever produced by a completed exhaustive or
forest scan, or by the structural shortcut where every vertex has a unique
color (no two halves of a path can then match).
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .core import (
    AnagramWitness,
    BudgetExhausted,
    Coloring,
    Graph,
    PathWitness,
    is_forest,
    verify_witness,
)
from .util import derive_seed, splitmix64


def _color_weights(palette_size: int) -> tuple:
    return tuple(splitmix64(0xC010F + 13 * c) for c in range(palette_size))


def _confirm_window(colors, path, i, length) -> bool:
    mid = (i + length) // 2
    return Counter(colors[v] for v in path[i:mid]) == Counter(colors[v] for v in path[mid:length])


def _exhaustive_scan(graph: Graph, coloring: Coloring, budget):
    """DFS over simple paths; returns a witness or None (= none exists).

    Every even window ending at the newest vertex gets the O(1) hash test;
    completeness follows because any path is a full prefix of itself in the
    DFS rooted at its first vertex.
    """
    colors = coloring.colors
    weights = _color_weights(coloring.palette_size)
    adjacency = graph.adjacency
    steps = 0

    for root in range(graph.n):
        path = [root]
        hashes = [0, weights[colors[root]]]
        onpath = [False] * graph.n
        onpath[root] = True
        iters = [iter(adjacency[root])]
        while iters:
            advanced = False
            for w in iters[-1]:
                if onpath[w]:
                    continue
                steps += 1
                if budget is not None and steps > budget:
                    raise BudgetExhausted(f"anagram search exceeded {budget} steps")
                path.append(w)
                hashes.append(hashes[-1] + weights[colors[w]])
                length = len(path)
                # starts with the same parity as `length` give even windows
                for i in range(length % 2, length - 1, 2):
                    if hashes[length] + hashes[i] == 2 * hashes[(i + length) // 2]:
                        if _confirm_window(colors, path, i, length):
                            return AnagramWitness(PathWitness(tuple(path[i:length])), (length - i) // 2)
                onpath[w] = True
                iters.append(iter(adjacency[w]))
                advanced = True
                break
            if not advanced:
                iters.pop()
                last = path.pop()
                hashes.pop()
                onpath[last] = False
    return None


def _forest_scan(graph: Graph, coloring: Coloring):
    """Complete anagram search on a forest via per-root tree DFS."""
    colors = coloring.colors
    weights = _color_weights(coloring.palette_size)
    adjacency = graph.adjacency

    for root in range(graph.n):
        # stack entries: (vertex, parent); path maintained alongside
        path = [root]
        hashes = [0, weights[colors[root]]]
        stack = [(iter(adjacency[root]), root, -1)]
        while stack:
            it, v, parent = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                path.append(w)
                hashes.append(hashes[-1] + weights[colors[w]])
                length = len(path)
                if length % 2 == 0:
                    if hashes[length] + hashes[0] == 2 * hashes[length // 2]:
                        if _confirm_window(colors, path, 0, length):
                            return AnagramWitness(PathWitness(tuple(path)), length // 2)
                stack.append((iter(adjacency[w]), w, v))
                advanced = True
                break
            if not advanced:
                stack.pop()
                path.pop()
                hashes.pop()
    return None


def _random_walk_scan(graph: Graph, coloring: Coloring, budget, seed):
    colors = coloring.colors
    weights = _color_weights(coloring.palette_size)
    rng = random.Random(derive_seed(seed, "detect.randomized"))
    adjacency = graph.adjacency
    if graph.n == 0:
        return None
    steps = 0
    budget = budget if budget is not None else 10**6
    while steps < budget:
        v = rng.randrange(graph.n)
        path = [v]
        hashes = [0, weights[colors[v]]]
        onpath = {v}
        while steps < budget:
            steps += 1
            options = [w for w in adjacency[path[-1]] if w not in onpath]
            if not options:
                break
            w = rng.choice(options)
            path.append(w)
            onpath.add(w)
            hashes.append(hashes[-1] + weights[colors[w]])
            length = len(path)
            for i in range(length % 2, length - 1, 2):
                if hashes[length] + hashes[i] == 2 * hashes[(i + length) // 2]:
                    if _confirm_window(colors, path, i, length):
                        return AnagramWitness(PathWitness(tuple(path[i:length])), (length - i) // 2)
    return None


def find_anagram(graph: Graph, coloring: Coloring, mode: str = "exhaustive",
                 budget: int | None = None, seed: int = 0):
    """Search for an anagram; returns a verified witness or None.

    None means "none exists" for exhaustive mode (which instead raises
    BudgetExhausted when cut short) and for tree mode on forests; for
    randomized mode it only means "not found".
    """
    if len(coloring) != graph.n:
        raise ValueError("coloring length does not match graph")
    if mode == "exhaustive":
        witness = _exhaustive_scan(graph, coloring, budget)
    elif mode == "tree":
        if not is_forest(graph):
            raise ValueError("tree mode requires a forest")
        witness = _forest_scan(graph, coloring)
    elif mode == "randomized":
        witness = _random_walk_scan(graph, coloring, budget, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if witness is not None:
        assert verify_witness(graph, coloring, witness)
    return witness


@dataclass(frozen=True)
class Certificate:
    status: str  # "free" | "witness" | "inconclusive"
    witness: AnagramWitness | None
    method: str


def certify_anagram_free(graph: Graph, coloring: Coloring, budget: int | None = None) -> Certificate:
    """Certify a coloring anagram-free, exhibit a witness, or give up.

    "free" is only reported when a complete argument exists: all colors
    distinct (structural), a full forest scan, or a finished exhaustive
    search.
    """
    if len(coloring) != graph.n:
        raise ValueError("coloring length does not match graph")
    if coloring.palette_size == graph.n and graph.n > 0:
        return Certificate("free", None, "distinct-colors")
    if is_forest(graph):
        witness = _forest_scan(graph, coloring)
        if witness is None:
            return Certificate("free", None, "forest-scan")
        return Certificate("witness", witness, "forest-scan")
    try:
        witness = _exhaustive_scan(graph, coloring, budget)
    except BudgetExhausted:
        return Certificate("inconclusive", None, "exhaustive")
    if witness is None:
        return Certificate("free", None, "exhaustive")
    return Certificate("witness", witness, "exhaustive")


def verify_independent_set_coloring(graph: Graph, independent_set, coloring: Coloring) -> bool:
    """O(n+m) structural certificate: one shared color on an independent set,
    a globally unique color everywhere else.  Any path then carries some
    vertex whose color appears exactly once on it, so no anagram exists.
    """
    if len(coloring) != graph.n:
        return False
    s = set(independent_set)
    if any(not (0 <= v < graph.n) for v in s):
        return False
    for v in s:
        for w in graph.adjacency[v]:
            if w in s:
                return False
    colors = coloring.colors
    if s:
        shared = colors[next(iter(s))]
        if any(colors[v] != shared for v in s):
            return False
    total = Counter(colors)
    for v in range(graph.n):
        if v not in s and total[colors[v]] != 1:
            return False
    return True
