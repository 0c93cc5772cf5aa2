"""Shared builders and independent brute-force oracles.

The oracles here deliberately avoid the package's own algorithms: anagram
search enumerates every simple path, matching counts go through the
permanent, chromatic numbers come from raw assignment enumeration.  Tests
compare library output against these.
"""
from __future__ import annotations

import heapq
import random
from collections import Counter
from itertools import combinations, permutations, product

import pytest

from anagraph.core import Graph


# -- standard graphs -----------------------------------------------------------

def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, list(combinations(range(n), 2)))


def star_graph(leaves):
    return Graph.from_edges(leaves + 1, [(0, i + 1) for i in range(leaves)])


def petersen():
    return Graph.from_edges(10, [
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
        (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)])


def random_tree(n, rng):
    """Uniform labeled tree by decoding a random Pruefer sequence."""
    if n == 1:
        return Graph.from_edges(1, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    deg = [1] * n
    for s in seq:
        deg[s] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        deg[s] -= 1
        if deg[s] == 1:
            heapq.heappush(leaves, s)
    edges.append(tuple(leaves))
    return Graph.from_edges(n, edges)


# -- independent oracles ---------------------------------------------------------

def all_simple_paths(graph):
    """Every simple path with at least one vertex, as tuples."""
    adj = graph.adjacency

    def dfs(path, used):
        yield tuple(path)
        for w in adj[path[-1]]:
            if not used[w]:
                used[w] = True
                path.append(w)
                yield from dfs(path, used)
                path.pop()
                used[w] = False

    for s in range(graph.n):
        used = [False] * graph.n
        used[s] = True
        yield from dfs([s], used)


def brute_force_anagram(graph, colors):
    """First anagram found by enumerating every path and split; None if free."""
    for p in all_simple_paths(graph):
        length = len(p)
        if length % 2 == 0 and length >= 2:
            half = length // 2
            if Counter(colors[v] for v in p[:half]) == Counter(colors[v] for v in p[half:]):
                return p
    return None


def brute_force_pi_per(graph):
    """Smallest palette admitting an anagram-free coloring, by enumeration."""
    n = graph.n
    for t in range(1, n + 1):
        for colors in product(range(t), repeat=n):
            if len(set(colors)) != t:
                continue
            if brute_force_anagram(graph, colors) is None:
                return t
    raise AssertionError("n distinct colors are always anagram-free")


def brute_force_chromatic(graph):
    n = graph.n
    edges = list(graph.edges())
    for t in range(1, n + 1):
        for colors in product(range(t), repeat=n):
            if all(colors[u] != colors[v] for u, v in edges):
                return t
    return n


def naive_abelian_square(symbols):
    """Quadratic window scan; smallest (start, half) or None."""
    n = len(symbols)
    for start in range(n):
        for half in range(1, (n - start) // 2 + 1):
            if Counter(symbols[start:start + half]) == \
                    Counter(symbols[start + half:start + 2 * half]):
                return (start, half)
    return None


def permanent_matching_count(graph):
    """Perfect matchings of a bipartite graph via the permanent of its
    biadjacency matrix (Ryser-free, raw permutation sum).  Requires a
    2-coloring to exist; returns None if the graph is not bipartite."""
    side = [None] * graph.n
    for s in range(graph.n):
        if side[s] is not None:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in graph.adjacency[v]:
                if side[w] is None:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    left = [v for v in range(graph.n) if side[v] == 0]
    right = [v for v in range(graph.n) if side[v] == 1]
    if len(left) != len(right):
        return 0
    index = {v: i for i, v in enumerate(right)}
    total = 0
    for perm in permutations(range(len(right))):
        if all(right[perm[i]] in graph.adjacency[left[i]] for i in range(len(left))):
            total += 1
    return total


@pytest.fixture
def rng():
    return random.Random(0xA11CE)
