"""Anagram-free coloring algorithms.

Upper-bound constructions (depth coloring for trees, separator recursion,
independent-set coloring) plus an exact branch-and-bound solver for the
anagram-chromatic number on small graphs, used as ground truth everywhere
else.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from math import ceil

from .construct import BinaryTreeHandle
from .core import (
    BudgetExhausted,
    Coloring,
    Graph,
    bfs_layers,
    connected_components,
    is_forest,
)
from .detect import certify_anagram_free
from .util import derive_seed


def depth_coloring(tree: BinaryTreeHandle) -> Coloring:
    """Color every vertex of a perfect binary tree by its depth: h+1 colors."""
    return Coloring(tuple(tree.depth_of(v) for v in range(tree.n)), tree.depth + 1)


def tree_centroid(graph: Graph) -> int:
    """Vertex of a forest whose removal leaves components of <= floor(n/2)
    vertices; works on the largest component, smallest id breaks ties."""
    if not is_forest(graph):
        raise ValueError("input has a cycle")
    if graph.n == 0:
        raise ValueError("empty graph has no centroid")
    comp = max(connected_components(graph), key=len)
    root = comp[0]
    in_comp = set(comp)
    size = {v: 1 for v in comp}
    parent = {root: -1}
    order = [root]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for w in graph.adjacency[v]:
            if w in in_comp and w not in parent:
                parent[w] = v
                order.append(w)
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    total = len(comp)
    best = None
    for v in order:
        pieces = [size[w] for w in graph.adjacency[v] if w in in_comp and parent.get(w) == v]
        if parent[v] != -1:
            pieces.append(total - size[v])
        worst = max(pieces, default=0)
        if worst <= total // 2 and (best is None or v < best):
            best = v
    assert best is not None  # every tree has a centroid
    return best


@dataclass(frozen=True)
class SeparatorResult:
    separator: tuple
    parts: tuple  # tuple of vertex tuples, pairwise non-adjacent once separator removed


def _validate_separator(graph: Graph, result: SeparatorResult):
    sep = set(result.separator)
    seen = set(sep)
    bound = ceil(2 * graph.n / 3)
    part_of = {}
    for idx, part in enumerate(result.parts):
        if len(part) > bound:
            raise ValueError(f"part of size {len(part)} exceeds {bound}")
        for v in part:
            if v in seen:
                raise ValueError("separator/parts overlap")
            seen.add(v)
            part_of[v] = idx
    if len(seen) != graph.n:
        raise ValueError("separator and parts must partition the vertices")
    for v, idx in part_of.items():
        for w in graph.adjacency[v]:
            if w not in sep and part_of[w] != idx:
                raise ValueError("parts are adjacent")


def centroid_separator(graph: Graph) -> SeparatorResult:
    """Exact one-vertex separator for forests, built on the centroid."""
    c = tree_centroid(graph)
    rest, _ = graph.induced([v for v in range(graph.n) if v != c])
    keep = [v for v in range(graph.n) if v != c]
    parts = tuple(tuple(keep[i] for i in comp) for comp in connected_components(rest))
    return SeparatorResult((c,), parts)


def bfs_layer_separator(graph: Graph) -> SeparatorResult:
    """Heuristic separator from BFS layers of a connected graph.

    Tries every single layer and every layer pair whose removal leaves the
    prefix / band / suffix each within 2n/3, keeping the smallest separator.
    The size of the result carries no general guarantee; parts always do.
    """
    n = graph.n
    comps = connected_components(graph)
    if len(comps) > 1:
        raise ValueError("separator needs a connected graph; split components first")
    if n == 1:
        return SeparatorResult((0,), ())
    # double sweep: root at an approximate diameter endpoint
    far = bfs_layers(graph, 0)[-1][0]
    layers = bfs_layers(graph, far)
    sizes = [len(layer) for layer in layers]
    prefix = [0]
    for s in sizes:
        prefix.append(prefix[-1] + s)
    limit = (2 * n) // 3

    # rank candidates by separator size, then by how balanced the remainder is
    candidates = []
    for i in range(len(layers)):
        below, above = prefix[i], n - prefix[i + 1]
        if below <= limit and above <= limit:
            candidates.append((sizes[i], max(below, above), (i,)))
    for i in range(len(layers)):
        if sizes[i] >= min(c[0] for c in candidates):
            continue
        for j in range(i + 1, len(layers)):
            below = prefix[i]
            band = prefix[j] - prefix[i + 1]
            above = n - prefix[j + 1]
            if below <= limit and band <= limit and above <= limit:
                candidates.append((sizes[i] + sizes[j], max(below, band, above), (i, j)))
    _, _, chosen = min(candidates)
    separator = sorted(v for i in chosen for v in layers[i])
    rest = [v for v in range(n) if v not in set(separator)]
    sub, keep = graph.induced(rest)
    parts = tuple(tuple(keep[i] for i in comp) for comp in connected_components(sub))
    result = SeparatorResult(tuple(separator), parts)
    _validate_separator(graph, result)
    return result


def separator_coloring(graph: Graph, oracle=None) -> Coloring:
    """Recursive separator coloring.

    Parts are colored recursively and share one palette, aligned by index;
    separator vertices receive colors above every part palette, one fresh
    color each within their own recursion node, reused at equal depth across
    sibling branches.  Any path crossing a separator then carries a color
    that occurs exactly once on it.
    """
    if oracle is None:
        oracle = centroid_separator if is_forest(graph) else bfs_layer_separator
    colors = [None] * graph.n

    def solve(vertices) -> int:
        if len(vertices) == 1:
            colors[vertices[0]] = 0
            return 1
        sub, keep = graph.induced(vertices)
        comps = connected_components(sub)
        if len(comps) > 1:
            return max(solve([keep[i] for i in comp]) for comp in comps)
        result = oracle(sub)
        _validate_separator(sub, result)
        palette = 0
        for part in result.parts:
            palette = max(palette, solve([keep[i] for i in part]))
        for offset, s in enumerate(sorted(result.separator)):
            colors[keep[s]] = palette + offset
        return palette + len(result.separator)

    if graph.n == 0:
        return Coloring((), 0)
    max(solve(comp) for comp in connected_components(graph))
    assert all(c is not None for c in colors)
    return Coloring.normalize(colors)


def greedy_independent_set(graph: Graph, seed: int = 0) -> tuple:
    """Maximal independent set by repeated minimum-degree selection with
    seeded tie-breaking."""
    rng = random.Random(derive_seed(seed, "greedy-indep"))
    alive = set(range(graph.n))
    degree = {v: graph.degree(v) for v in alive}
    chosen = []
    while alive:
        low = min(degree[v] for v in alive)
        ties = sorted(v for v in alive if degree[v] == low)
        v = ties[0] if len(ties) == 1 else rng.choice(ties)
        chosen.append(v)
        removed = {v} | (set(graph.adjacency[v]) & alive)
        alive -= removed
        for r in removed:
            for w in graph.adjacency[r]:
                if w in alive:
                    degree[w] -= 1
    return tuple(sorted(chosen))


def independent_set_coloring(graph: Graph, independent_set) -> Coloring:
    """Shared color on the independent set, fresh singleton colors elsewhere:
    exactly n - |S| + 1 colors."""
    s = sorted(set(independent_set))
    s_set = set(s)
    for v in s:
        if not (0 <= v < graph.n):
            raise ValueError(f"vertex {v} out of range")
        if any(w in s_set for w in graph.adjacency[v]):
            raise ValueError("set is not independent")
    colors = [0] * graph.n
    nxt = 1
    for v in range(graph.n):
        if v not in s_set:
            colors[v] = nxt
            nxt += 1
    return Coloring(tuple(colors), nxt if graph.n > len(s) else 1)


# -- exact solver --------------------------------------------------------------

def chromatic_number(graph: Graph, limit: int = 16) -> int:
    """Exact chromatic number by branch and bound over a degeneracy order."""
    if graph.n == 0:
        return 0
    if graph.n > limit:
        raise ValueError(f"chromatic_number limited to {limit} vertices")
    order = _degeneracy_order(graph)
    best = graph.n

    def assign(idx, colors, used):
        nonlocal best
        if used >= best:
            return
        if idx == len(order):
            best = used
            return
        v = order[idx]
        taken = {colors[w] for w in graph.adjacency[v] if colors[w] is not None}
        for c in range(min(used + 1, best)):
            if c in taken:
                continue
            colors[v] = c
            assign(idx + 1, colors, max(used, c + 1))
            colors[v] = None

    assign(0, {v: None for v in range(graph.n)}, 0)
    return best


def _degeneracy_order(graph: Graph) -> list:
    """Repeatedly strip a minimum-degree vertex; returns the reverse order,
    so early vertices are the most constrained."""
    alive = set(range(graph.n))
    degree = {v: graph.degree(v) for v in alive}
    stripped = []
    while alive:
        v = min(alive, key=lambda x: (degree[x], x))
        stripped.append(v)
        alive.remove(v)
        for w in graph.adjacency[v]:
            if w in alive:
                degree[w] -= 1
    return stripped[::-1]


@dataclass
class ExactSearchStats:
    nodes: int = 0
    prunes: int = 0
    per_palette: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExactColoringResult:
    value: int | None
    coloring: Coloring | None
    lower: int
    upper: int
    exact: bool
    stats: ExactSearchStats


def _partial_has_anagram(graph: Graph, colors) -> bool:
    """Anagram search over the currently colored induced subgraph.

    The solver keeps every visited partial coloring anagram-free, so any hit
    here necessarily involves the newest vertex; scanning the whole colored
    subgraph keeps the check simple and exact.
    """
    adjacency = graph.adjacency
    n = graph.n
    for root in range(n):
        if colors[root] is None:
            continue
        path = [root]
        onpath = [False] * n
        onpath[root] = True
        iters = [iter(adjacency[root])]
        while iters:
            advanced = False
            for w in iters[-1]:
                if colors[w] is None or onpath[w]:
                    continue
                path.append(w)
                length = len(path)
                for i in range(length % 2, length - 1, 2):
                    mid = (i + length) // 2
                    if Counter(colors[v] for v in path[i:mid]) == \
                       Counter(colors[v] for v in path[mid:length]):
                        return True
                onpath[w] = True
                iters.append(iter(adjacency[w]))
                advanced = True
                break
            if not advanced:
                iters.pop()
                onpath[path.pop()] = False
    return False


def exact_anagram_chromatic(graph: Graph, budget: int | None = None,
                            size_limit: int = 12) -> ExactColoringResult:
    """Minimum palette size admitting an anagram-free coloring.

    Tries palettes of increasing size; within each, branch and bound over a
    degeneracy order with color-symmetry breaking (a vertex may use at most
    one more color than the maximum already in use), pruning any partial
    coloring whose colored subgraph already contains an anagram.  The
    returned coloring is re-certified by the exhaustive detector.

    On budget exhaustion, returns the bracket established so far.
    """
    if graph.n == 0:
        return ExactColoringResult(0, Coloring((), 0), 0, 0, True, ExactSearchStats())
    if graph.n > size_limit:
        raise ValueError(f"exact solver limited to {size_limit} vertices")
    stats = ExactSearchStats()
    order = _degeneracy_order(graph)
    lower = chromatic_number(graph)

    def search(palette: int):
        colors = [None] * graph.n

        def go(idx: int, used: int):
            stats.nodes += 1
            if budget is not None and stats.nodes > budget:
                raise BudgetExhausted("exact solver budget exceeded")
            if idx == len(order):
                return True
            v = order[idx]
            for c in range(min(used + 1, palette)):
                colors[v] = c
                if _partial_has_anagram(graph, colors):
                    stats.prunes += 1
                else:
                    if go(idx + 1, max(used, c + 1)):
                        return True
                colors[v] = None
            return False

        if go(0, 0):
            return Coloring.normalize([colors[v] for v in range(graph.n)])
        return None

    for t in range(lower, graph.n + 1):
        start_nodes = stats.nodes
        try:
            found = search(t)
        except BudgetExhausted:
            stats.per_palette[t] = stats.nodes - start_nodes
            return ExactColoringResult(None, None, t, graph.n, False, stats)
        stats.per_palette[t] = stats.nodes - start_nodes
        if found is not None:
            cert = certify_anagram_free(graph, found)
            assert cert.status == "free"
            return ExactColoringResult(t, found, t, t, True, stats)
    raise AssertionError("palette of size n always succeeds")
