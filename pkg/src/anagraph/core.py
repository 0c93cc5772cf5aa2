"""Graphs, colorings, paths, and anagram witnesses.

Vertices are dense integers 0..n-1.  A coloring assigns each vertex a dense
color id.  Two vertex sets "have the same coloring" when every color occurs
equally often in both; an anagram is an even path whose two halves have the
same coloring.  A monochromatic edge is the length-2 case, so every
anagram-free coloring is in particular a proper coloring.

All types are immutable after construction and safe to share across
concurrent tasks; the operations here are pure.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property


class BudgetExhausted(RuntimeError):
    """A bounded search ran out of steps before reaching a verdict."""


class GraphTooLarge(ValueError):
    """Refusing to materialize a structure beyond the configured size."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: no loops, no parallel edges.

    ``adjacency[v]`` is the sorted tuple of neighbors of ``v``; ``m`` is the
    edge count.  Build through :meth:`from_edges` (validating) or
    :meth:`from_adjacency` (trusted input, used by generators).
    """

    n: int
    adjacency: tuple
    m: int

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        neighbor_sets = [set() for _ in range(n)]
        count = 0
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e!r} out of range for n={n}")
            if u == v:
                raise ValueError(f"loop {e!r} not allowed in a simple graph")
            if v in neighbor_sets[u]:
                raise ValueError(f"parallel edge {e!r}")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
            count += 1
        adjacency = tuple(tuple(sorted(s)) for s in neighbor_sets)
        return Graph(n, adjacency, count)

    @staticmethod
    def from_adjacency(adjacency) -> "Graph":
        """Wrap pre-built sorted adjacency lists without re-validation."""
        adjacency = tuple(tuple(a) for a in adjacency)
        m = sum(len(a) for a in adjacency) // 2
        return Graph(len(adjacency), adjacency, m)

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adjacency[u]
        if len(self.adjacency[v]) < len(a):
            a, v = self.adjacency[v], u
        return v in a

    def edges(self):
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    @cached_property
    def adjacency_masks(self) -> tuple:
        """Neighborhoods as bitmasks; the workhorse for subset algorithms."""
        return tuple(sum(1 << w for w in nbrs) for nbrs in self.adjacency)

    def induced(self, vertices):
        """Induced subgraph plus the sorted vertex list mapping new->old ids."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        adj = [tuple(index[w] for w in self.adjacency[v] if w in index) for v in keep]
        return Graph.from_adjacency(adj), keep


@dataclass(frozen=True)
class MultiGraph:
    """Multigraph as a multiset of unordered vertex pairs; loops allowed."""

    n: int
    edges: tuple

    @staticmethod
    def from_edges(n: int, edges) -> "MultiGraph":
        norm = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)!r} out of range for n={n}")
            norm.append((u, v) if u <= v else (v, u))
        return MultiGraph(n, tuple(sorted(norm)))

    def degrees(self) -> list:
        # Loops count twice, so the degree sum is exactly 2 * len(edges).
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v or (u, v) in seen:
                return False
            seen.add((u, v))
        return True

    def to_simple(self) -> Graph:
        if not self.is_simple():
            raise ValueError("multigraph has loops or parallel edges")
        return Graph.from_edges(self.n, self.edges)


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color map with a dense palette 0..palette_size-1."""

    colors: tuple
    palette_size: int

    def __post_init__(self):
        used = set(self.colors)
        if used and (min(used) < 0 or max(used) >= self.palette_size):
            raise ValueError("color ids must lie in [0, palette_size)")
        if len(used) != self.palette_size:
            raise ValueError("palette_size must equal the number of distinct colors")

    @staticmethod
    def normalize(raw) -> "Coloring":
        """Renumber arbitrary hashable color labels densely by first appearance."""
        mapping = {}
        out = []
        for c in raw:
            if c not in mapping:
                mapping[c] = len(mapping)
            out.append(mapping[c])
        return Coloring(tuple(out), len(mapping))

    def __len__(self):
        return len(self.colors)

    def color_of(self, v: int) -> int:
        return self.colors[v]


@dataclass(frozen=True)
class PathWitness:
    """Vertex-simple path, stored as the ordered vertex sequence."""

    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return max(0, len(self.vertices) - 1)


@dataclass(frozen=True)
class AnagramWitness:
    """Even path plus its midpoint; self-verifying against a coloring."""

    path: PathWitness
    split: int


def is_simple_path(graph: Graph, vertices) -> bool:
    """True iff the sequence is a repeat-free path along edges of ``graph``."""
    if len(vertices) == 0:
        return False
    if len(set(vertices)) != len(vertices):
        return False
    for v in vertices:
        if not (0 <= v < graph.n):
            return False
    for a, b in zip(vertices, vertices[1:]):
        if not graph.has_edge(a, b):
            return False
    return True


def color_count(coloring: Coloring, vertex_set) -> Counter:
    """Occurrences of each color over a vertex set (zero entries omitted)."""
    colors = coloring.colors
    counts = Counter()
    for v in vertex_set:
        if not (0 <= v < len(colors)):
            raise ValueError(f"vertex {v} out of range")
        counts[colors[v]] += 1
    return counts


def is_anagram_path(coloring: Coloring, path) -> bool:
    """True iff the path has even length 2k (k>=1) and equal-count halves."""
    vertices = path.vertices if isinstance(path, PathWitness) else tuple(path)
    length = len(vertices)
    if length < 2 or length % 2 != 0:
        return False
    half = length // 2
    return color_count(coloring, vertices[:half]) == color_count(coloring, vertices[half:])


def verify_witness(graph: Graph, coloring: Coloring, witness: AnagramWitness) -> bool:
    """Full certificate check; malformed witnesses return False, never raise."""
    try:
        vertices = tuple(witness.path.vertices)
        split = witness.split
    except AttributeError:
        return False
    if len(vertices) != 2 * split or split < 1:
        return False
    if len(coloring) != graph.n:
        return False
    if not is_simple_path(graph, vertices):
        return False
    return is_anagram_path(coloring, vertices)


# -- small graph utilities used across modules --------------------------------

def connected_components(graph: Graph) -> list:
    seen = [False] * graph.n
    comps = []
    for s in range(graph.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for w in graph.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(graph: Graph) -> bool:
    return graph.n <= 1 or len(connected_components(graph)) == 1


def is_forest(graph: Graph) -> bool:
    return graph.m == graph.n - len(connected_components(graph))


def bfs_layers(graph: Graph, root: int) -> list:
    """Vertices grouped by distance from root (unreached vertices omitted)."""
    dist = [-1] * graph.n
    dist[root] = 0
    order = [root]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for w in graph.adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                order.append(w)
    layers = []
    for v in order:
        if dist[v] == len(layers):
            layers.append([v])
        else:
            layers[dist[v]].append(v)
    return layers
