"""Graph families: perfect binary trees, sibling trees, circular ladders,
the matched-copies 4-regular composite, and configuration-model samplers.

Binary trees use heap indexing (children of v are 2v+1 and 2v+2), so the
handle answers parent/child/depth queries in O(1) without storing the tree;
the explicit Graph is materialized on demand and guarded by a size limit.
All samplers are pure functions of (parameters, seed).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .core import Graph, GraphTooLarge, MultiGraph
from .util import derive_seed

MATERIALIZE_LIMIT = 2_000_000


@dataclass(frozen=True)
class BinaryTreeHandle:
    """Perfect binary tree of the given depth over heap-indexed vertices."""

    depth: int

    def __post_init__(self):
        if not (0 <= self.depth <= 60):
            raise ValueError("tree depth must be in [0, 60]")

    @property
    def n(self) -> int:
        return (1 << (self.depth + 1)) - 1

    @property
    def root(self) -> int:
        return 0

    def parent(self, v: int) -> int:
        if v == 0:
            raise ValueError("root has no parent")
        return (v - 1) // 2

    def children(self, v: int) -> tuple:
        left = 2 * v + 1
        return (left, left + 1) if left < self.n else ()

    def depth_of(self, v: int) -> int:
        return (v + 1).bit_length() - 1

    def is_leaf(self, v: int) -> bool:
        return 2 * v + 1 >= self.n

    def leaves(self) -> range:
        return range((1 << self.depth) - 1, self.n)

    def graph(self, limit: int = MATERIALIZE_LIMIT) -> Graph:
        if self.n > limit:
            raise GraphTooLarge(
                f"tree of depth {self.depth} has {self.n} vertices (limit {limit})")
        n = self.n
        adjacency = []
        for v in range(n):
            row = [] if v == 0 else [(v - 1) // 2]
            if 2 * v + 1 < n:
                row += [2 * v + 1, 2 * v + 2]
            adjacency.append(tuple(row))
        return Graph.from_adjacency(adjacency)


def perfect_binary_tree(h: int) -> BinaryTreeHandle:
    """Tree of depth h: 2^(h+1) - 1 vertices, 2^h leaves all at depth h."""
    return BinaryTreeHandle(h)


def sibling_tree(n_leaves: int):
    """Perfect binary tree with the given leaf count plus one edge per
    sibling pair (children of a common parent).  Planar by construction.

    Returns (graph, tree_handle); vertex ids are the heap indices of the
    underlying tree, so root-to-leaf tree paths are recoverable from the
    handle.
    """
    if n_leaves < 2 or n_leaves & (n_leaves - 1):
        raise ValueError("leaf count must be a power of two, at least 2")
    h = n_leaves.bit_length() - 1
    handle = BinaryTreeHandle(h)
    n = handle.n
    if n > MATERIALIZE_LIMIT:
        raise GraphTooLarge(f"sibling tree on {n} vertices exceeds limit")
    adjacency = []
    for v in range(n):
        row = []
        if v > 0:
            row.append((v - 1) // 2)
            sib = v + 1 if v % 2 == 1 else v - 1
            row.append(sib)
        if 2 * v + 1 < n:
            row += [2 * v + 1, 2 * v + 2]
        adjacency.append(tuple(sorted(row)))
    return Graph.from_adjacency(adjacency), handle


def circular_ladder(m: int) -> Graph:
    """Two (2m+1)-cycles joined by a perfect matching of rungs; cubic on
    2(2m+1) vertices.  The prism over an odd cycle."""
    if m < 1:
        raise ValueError("m must be >= 1")
    ell = 2 * m + 1
    edges = []
    for i in range(ell):
        edges.append((i, (i + 1) % ell))
        edges.append((ell + i, ell + (i + 1) % ell))
        edges.append((i, ell + i))
    return Graph.from_edges(2 * ell, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


@dataclass(frozen=True)
class CompositeDescriptor:
    """Layout of the matched-copies construction: k+1 blocks of k vertices,
    exactly one matching edge between each pair of blocks."""

    k: int
    blocks: tuple  # blocks[i] = tuple of global vertex ids
    matching: tuple  # (i, j, u, v): blocks i<j joined by edge {u, v}

    def block_of(self, v: int) -> int:
        return v // self.k

    def matching_edge(self, i: int, j: int):
        if i > j:
            i, j = j, i
        for bi, bj, u, v in self.matching:
            if (bi, bj) == (i, j):
                return (u, v)
        raise KeyError((i, j))


def _block_position(i: int, j: int, k: int) -> int:
    # Block i's vertices are labelled by the k other block indices j;
    # position of label j inside block i, in ascending label order.
    return j if j < i else j - 1


def composite_four_regular(k: int):
    """4-regular graph on (k+1)k vertices: k+1 Hamilton-connected cubic
    blocks plus a perfect matching with one edge between every block pair.

    Blocks are circular ladders (k = 2(2m+1)); k = 4 uses K4 instead.
    Returns (graph, descriptor).
    """
    if k == 4:
        block = complete_graph(4)
    elif k >= 6 and k % 4 == 2:
        block = circular_ladder((k - 2) // 4)
    else:
        raise ValueError("k must be 4 or of the form 2(2m+1) with m >= 1")
    n = (k + 1) * k
    edges = []
    for b in range(k + 1):
        base = b * k
        for u, v in block.edges():
            edges.append((base + u, base + v))
    matching = []
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            u = i * k + _block_position(i, j, k)
            v = j * k + _block_position(j, i, k)
            edges.append((u, v))
            matching.append((i, j, u, v))
    graph = Graph.from_edges(n, edges)
    blocks = tuple(tuple(range(b * k, (b + 1) * k)) for b in range(k + 1))
    return graph, CompositeDescriptor(k, blocks, tuple(matching))


@dataclass(frozen=True)
class Pairing:
    """Perfect matching on n*d points grouped into n cells of d points;
    cell of point p is p // d."""

    n: int
    d: int
    matching: tuple  # sorted tuple of sorted point pairs

    def cell(self, point: int) -> int:
        return point // self.d


def random_pairing(n: int, d: int, seed: int = 0) -> Pairing:
    """Uniform perfect matching on the n*d points (shuffle, pair consecutive)."""
    total = n * d
    if total % 2 != 0:
        raise ValueError("n*d must be even")
    rng = random.Random(derive_seed(seed, "pairing", n, d))
    points = list(range(total))
    rng.shuffle(points)
    pairs = []
    for i in range(0, total, 2):
        a, b = points[i], points[i + 1]
        pairs.append((a, b) if a < b else (b, a))
    return Pairing(n, d, tuple(sorted(pairs)))


def collapse(pairing: Pairing) -> MultiGraph:
    """Identify each cell to a vertex; point pairs become (multi)edges."""
    d = pairing.d
    return MultiGraph.from_edges(pairing.n, [(a // d, b // d) for a, b in pairing.matching])


def _simple_outcome_rate(d: int) -> float:
    # limiting probability that a random pairing collapses to a simple graph
    import math

    return math.exp(-(d - 1) / 2 - (d - 1) ** 2 / 4)


def _stub_repair_sample(n: int, d: int, rng: random.Random, max_restarts: int):
    """Degree-preserving sampler: pair shuffled stubs, keep the valid edges,
    re-shuffle only the stubs whose pairs collided; restart when the leftover
    stubs cannot form any new edge."""
    for _ in range(max_restarts):
        edges: set = set()
        stubs = [v for v in range(n) for _ in range(d)]
        dead = False
        while stubs and not dead:
            rng.shuffle(stubs)
            leftover = []
            it = iter(stubs)
            for a, b in zip(it, it):
                if a > b:
                    a, b = b, a
                if a == b or (a, b) in edges:
                    leftover += [a, b]
                else:
                    edges.add((a, b))
            if leftover:
                distinct = sorted(set(leftover))
                if not any((u, v) not in edges
                           for i, u in enumerate(distinct)
                           for v in distinct[i + 1:]):
                    dead = True
            stubs = leftover
        if not dead:
            return edges
    raise RuntimeError(f"stub repair failed after {max_restarts} restarts")


def random_regular(n: int, d: int, seed: int = 0, max_tries: int = 1000) -> Graph:
    """Simple d-regular graph, deterministic per seed.

    Rejection over uniform pairings (exactly uniform over simple graphs)
    whenever the cap gives it a realistic chance; the simple-outcome rate
    decays like exp(-d^2/4), so for larger d, or when the cap runs out, this
    falls back to a degree-preserving stub-repair sampler, which is
    approximately uniform.
    """
    if n * d % 2 != 0:
        raise ValueError("n*d must be even")
    if not 0 <= d < n:
        raise ValueError("need 0 <= d < n")
    if d == 0:
        return Graph.from_edges(n, [])
    if _simple_outcome_rate(d) * max_tries >= 1.0:
        for attempt in range(max_tries):
            pairing = random_pairing(n, d, derive_seed(seed, "regular", attempt))
            multi = collapse(pairing)
            if multi.is_simple():
                return multi.to_simple()
    rng = random.Random(derive_seed(seed, "regular-repair", n, d))
    edges = _stub_repair_sample(n, d, rng, max_restarts=max_tries)
    return Graph.from_edges(n, sorted(edges))


def random_matching(n_points: int, seed: int = 0) -> Graph:
    """Uniform perfect matching on n_points vertices, as a 1-regular graph."""
    if n_points % 2 != 0:
        raise ValueError("point count must be even")
    pairing = random_pairing(n_points, 1, seed)
    return Graph.from_edges(n_points, pairing.matching)
