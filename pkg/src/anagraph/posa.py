"""Longest paths, rotations, boosters, expanders, and Hamiltonicity.

Exact answers come from bitmask dynamic programming over vertex subsets and
are limited to small graphs; the heuristic side is rotation-extension: grow
a path greedily, and when stuck, pivot the endpoint across one of its
neighbors on the path, reversing the tail.  A non-edge is a booster when its
addition makes the graph Hamiltonian or lengthens its longest path; the
endpoint pairs reachable by rotations from a longest path are boosters, so
the heuristic produces sound candidates whenever its start path is longest.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .core import BudgetExhausted, Graph, PathWitness, is_connected, is_simple_path
from .util import derive_seed

EXACT_LIMIT = 18


@dataclass(frozen=True)
class BoosterSet:
    pairs: frozenset  # frozenset of (u, v) tuples with u < v, all non-edges
    mode: str


# -- exact bitmask engines -----------------------------------------------------

def _ends_table(masks, n, start=None):
    """ends[mask] = bitmask of vertices where some simple path covering
    exactly `mask` can end; paths start at `start`, or anywhere if None."""
    size = 1 << n
    ends = [0] * size
    if start is None:
        for v in range(n):
            ends[1 << v] = 1 << v
    else:
        ends[1 << start] = 1 << start
    for mask in range(size):
        e = ends[mask]
        while e:
            low = e & -e
            v = low.bit_length() - 1
            e ^= low
            ext = masks[v] & ~mask
            while ext:
                lw = ext & -ext
                ends[mask | lw] |= lw
                ext ^= lw
    return ends


def _recover_path(masks, ends, mask, v):
    path = [v]
    while mask != (1 << v):
        prev_mask = mask ^ (1 << v)
        nxt = None
        cand = masks[v] & prev_mask
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            if ends[prev_mask] & low:
                nxt = u
                break
        assert nxt is not None
        mask, v = prev_mask, nxt
        path.append(v)
    path.reverse()
    return path


def _check_exact_size(graph: Graph):
    if graph.n > EXACT_LIMIT:
        raise ValueError(f"exact mode limited to {EXACT_LIMIT} vertices (got {graph.n})")


def longest_path_length(graph: Graph) -> int:
    """Exact number of edges on a longest path."""
    _check_exact_size(graph)
    if graph.n == 0:
        return 0
    masks = graph.adjacency_masks
    ends = _ends_table(masks, graph.n)
    best = 0
    for mask in range(1, 1 << graph.n):
        if ends[mask]:
            best = max(best, mask.bit_count() - 1)
    return best


def _longest_path_exact(graph: Graph) -> PathWitness:
    if graph.n == 0:
        return PathWitness(())
    masks = graph.adjacency_masks
    ends = _ends_table(masks, graph.n)
    best_mask, best_v = 1, 0
    for mask in range(1, 1 << graph.n):
        e = ends[mask]
        if e and mask.bit_count() > best_mask.bit_count():
            best_mask, best_v = mask, (e & -e).bit_length() - 1
    return PathWitness(tuple(_recover_path(masks, ends, best_mask, best_v)))


def hamilton_path_exact(graph: Graph, u: int, v: int):
    """Hamilton path from u to v, or None; exact for n <= EXACT_LIMIT."""
    _check_exact_size(graph)
    if u == v:
        raise ValueError("endpoints must differ")
    if graph.n == 1:
        return None
    masks = graph.adjacency_masks
    ends = _ends_table(masks, graph.n, start=u)
    full = (1 << graph.n) - 1
    if not ends[full] & (1 << v):
        return None
    return PathWitness(tuple(_recover_path(masks, ends, full, v)))


def hamilton_cycle_exact(graph: Graph):
    """Hamilton cycle as a vertex tuple (closed implicitly), or None."""
    _check_exact_size(graph)
    n = graph.n
    if n < 3:
        return None
    masks = graph.adjacency_masks
    ends = _ends_table(masks, n, start=0)
    full = (1 << n) - 1
    closers = ends[full] & masks[0]
    if not closers:
        return None
    v = (closers & -closers).bit_length() - 1
    return tuple(_recover_path(masks, ends, full, v))


# -- rotation-extension heuristics ---------------------------------------------

def _extend_tail(adj, path, onpath, rng):
    grew = False
    while True:
        options = [w for w in adj[path[-1]] if not onpath[w]]
        if not options:
            return grew
        w = options[0] if len(options) == 1 else rng.choice(options)
        path.append(w)
        onpath[w] = True
        grew = True


def _rotate(path, pivot_index):
    # endpoint z with edge to path[pivot_index]: reverse the tail after it
    path[pivot_index + 1:] = reversed(path[pivot_index + 1:])


def _maximal_path(graph: Graph, rng, stall_limit=50, steps_box=None, budget=None):
    """Grow one path with extension + rotations until spanning or stalled."""
    adj = graph.adjacency
    n = graph.n
    start = rng.randrange(n)
    path = [start]
    onpath = [False] * n
    onpath[start] = True
    _extend_tail(adj, path, onpath, rng)
    stalls = 0
    while len(path) < n and stalls < stall_limit:
        if steps_box is not None:
            steps_box[0] += 1
            if budget is not None and steps_box[0] > budget:
                break
        # try the other endpoint as well before rotating
        path.reverse()
        if _extend_tail(adj, path, onpath, rng):
            stalls = 0
            continue
        pos = {v: i for i, v in enumerate(path)}
        z = path[-1]
        pivots = [pos[w] for w in adj[z] if pos[w] < len(path) - 2]
        if not pivots:
            break
        _rotate(path, rng.choice(pivots))
        stalls += 1
        if _extend_tail(adj, path, onpath, rng):
            stalls = 0
    return path


def longest_path(graph: Graph, mode: str = "exact", budget: int | None = None,
                 seed: int = 0) -> PathWitness:
    """Longest path, exact (small n) or via rotation restarts (lower bound)."""
    if mode == "exact":
        return _longest_path_exact(graph)
    if mode != "rotation":
        raise ValueError(f"unknown mode {mode!r}")
    if graph.n == 0:
        return PathWitness(())
    rng = random.Random(derive_seed(seed, "posa.longest"))
    budget = budget if budget is not None else 200_000
    steps_box = [0]
    best: list = []
    while steps_box[0] < budget:
        steps_box[0] += 1
        path = _maximal_path(graph, rng, steps_box=steps_box, budget=budget)
        if len(path) > len(best):
            best = path
            if len(best) == graph.n:
                break
    assert is_simple_path(graph, best)
    return PathWitness(tuple(best))


def _rotation_endpoint_closure(graph: Graph, path):
    """All endpoints reachable by rotations that keep path[0] fixed.

    Returns {endpoint: full path ending there}; every returned path covers
    the same vertex set as the input.
    """
    adj = graph.adjacency
    start_tail = path[-1]
    seen = {start_tail: list(path)}
    queue = [list(path)]
    while queue:
        cur = queue.pop()
        pos = {v: i for i, v in enumerate(cur)}
        z = cur[-1]
        for w in adj[z]:
            i = pos.get(w)
            if i is None or i >= len(cur) - 2:
                continue
            new_tail = cur[i + 1]
            if new_tail in seen:
                continue
            rotated = cur[:i + 1] + cur[i + 1:][::-1]
            seen[new_tail] = rotated
            queue.append(rotated)
    return seen


def rotation_booster_pairs(graph: Graph, path) -> frozenset:
    """Endpoint pairs (non-edges) reachable by two-sided rotations of a fixed
    maximal path.  Sound boosters whenever the input path is longest."""
    pairs = set()
    for tail, p in _rotation_endpoint_closure(graph, path).items():
        rev = p[::-1]
        for other in _rotation_endpoint_closure(graph, rev):
            if other != tail and not graph.has_edge(tail, other):
                pairs.add((min(tail, other), max(tail, other)))
    return frozenset(pairs)


def boosters(graph: Graph, mode: str = "exact", budget: int | None = None,
             seed: int = 0) -> BoosterSet:
    """Boosters of a graph.

    exact: applies the definition non-edge by non-edge (Hamiltonian graphs
    short-circuit: every non-edge keeps them Hamiltonian).  rotation: the
    endpoint-pair set of a heuristically grown maximal path.
    """
    non_edges = [(u, v) for u, v in combinations(range(graph.n), 2)
                 if not graph.has_edge(u, v)]
    if mode == "rotation":
        path = longest_path(graph, mode="rotation", budget=budget, seed=seed)
        return BoosterSet(rotation_booster_pairs(graph, list(path.vertices)), "rotation")
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    _check_exact_size(graph)
    if hamilton_cycle_exact(graph) is not None:
        return BoosterSet(frozenset(non_edges), "exact")
    base_len = longest_path_length(graph)
    found = set()
    for u, v in non_edges:
        bigger = Graph.from_edges(graph.n, list(graph.edges()) + [(u, v)])
        if longest_path_length(bigger) > base_len or hamilton_cycle_exact(bigger) is not None:
            found.add((u, v))
    return BoosterSet(frozenset(found), "exact")


def is_p_expander(graph: Graph, p: int, mode: str = "exact", trials: int = 2000,
                  seed: int = 0) -> bool:
    """Connected and every vertex set of size <= p has an external
    neighborhood at least twice its size.

    Sampled mode is one-sided: False verdicts are certain, True is only
    "no violation in `trials` random sets".
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if not is_connected(graph):
        return False
    masks = graph.adjacency_masks

    def expands(subset) -> bool:
        umask = 0
        nmask = 0
        for v in subset:
            umask |= 1 << v
            nmask |= masks[v]
        return (nmask & ~umask).bit_count() >= 2 * len(subset)

    if mode == "exact":
        for size in range(1, p + 1):
            for subset in combinations(range(graph.n), size):
                if not expands(subset):
                    return False
        return True
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(derive_seed(seed, "expander", p))
    for _ in range(trials):
        size = rng.randint(1, p)
        subset = rng.sample(range(graph.n), size)
        if not expands(subset):
            return False
    return True


@dataclass(frozen=True)
class HamiltonResult:
    cycle: tuple | None  # vertex tuple, closed implicitly
    proven_absent: bool
    method: str


def _verify_cycle(graph: Graph, cycle) -> bool:
    if len(cycle) != graph.n or len(set(cycle)) != graph.n:
        return False
    return all(graph.has_edge(cycle[i], cycle[(i + 1) % len(cycle)])
               for i in range(len(cycle)))


def hamilton_cycle(graph: Graph, seed: int = 0, budget: int | None = None) -> HamiltonResult:
    """Rotation-extension search with restarts; exact fallback for small n.

    A None cycle with proven_absent=False only means the heuristic gave up.
    """
    n = graph.n
    if n < 3 or not is_connected(graph) or min(graph.degree(v) for v in range(n)) < 2:
        # these conditions rule out a Hamilton cycle at any size
        return HamiltonResult(None, True, "degenerate")
    rng = random.Random(derive_seed(seed, "posa.hamilton"))
    budget = budget if budget is not None else 50_000
    steps_box = [0]
    while steps_box[0] < budget:
        steps_box[0] += 1
        path = _maximal_path(graph, rng, steps_box=steps_box, budget=budget)
        if len(path) < n:
            continue
        # spanning path: close it directly or pivot the tail until closable
        closure = {path[-1]: path}
        queue = [path]
        head = path[0]
        adj = graph.adjacency
        while queue:
            cur = queue.pop()
            if graph.has_edge(cur[-1], head):
                cycle = tuple(cur)
                assert _verify_cycle(graph, cycle)
                return HamiltonResult(cycle, False, "rotation")
            pos = {v: i for i, v in enumerate(cur)}
            for w in adj[cur[-1]]:
                i = pos[w]
                if i >= len(cur) - 2:
                    continue
                new_tail = cur[i + 1]
                if new_tail in closure:
                    continue
                rotated = cur[:i + 1] + cur[i + 1:][::-1]
                closure[new_tail] = rotated
                queue.append(rotated)
    if n <= EXACT_LIMIT:
        cycle = hamilton_cycle_exact(graph)
        if cycle is not None:
            assert _verify_cycle(graph, cycle)
            return HamiltonResult(cycle, False, "exact")
        return HamiltonResult(None, True, "exact")
    return HamiltonResult(None, False, "rotation")


def hamilton_path_between(graph: Graph, u: int, v: int, budget: int | None = None):
    """Hamilton path between two fixed vertices; exact bitmask DP for small
    n, pruned backtracking beyond that."""
    if u == v:
        raise ValueError("endpoints must differ")
    if graph.n <= EXACT_LIMIT:
        return hamilton_path_exact(graph, u, v)
    budget = budget if budget is not None else 2_000_000
    adj = graph.adjacency
    n = graph.n
    steps = 0
    path = [u]
    onpath = [False] * n
    onpath[u] = True

    def backtrack():
        nonlocal steps
        steps += 1
        if steps > budget:
            raise BudgetExhausted("hamilton path search budget exceeded")
        cur = path[-1]
        if len(path) == n:
            return cur == v
        for w in sorted(adj[cur], key=lambda x: len(adj[x])):
            if onpath[w] or (w == v and len(path) < n - 1):
                continue
            path.append(w)
            onpath[w] = True
            if backtrack():
                return True
            path.pop()
            onpath[w] = False
        return False

    if backtrack():
        return PathWitness(tuple(path))
    return None


def is_hamilton_connected(graph: Graph, budget: int | None = None) -> bool:
    """Every vertex pair joined by a Hamilton path; exhaustive over pairs."""
    if graph.n < 2:
        return False
    for u, v in combinations(range(graph.n), 2):
        if hamilton_path_between(graph, u, v, budget=budget) is None:
            return False
    return True


@dataclass(frozen=True)
class AbsorptionResult:
    cycle: tuple | None
    used_edges: tuple
    steps: tuple  # (step index, edge) per accepted addition
    failure_stage: str | None


def absorb_boosters(base: Graph, pool, seed: int = 0, budget: int | None = None,
                    exact_limit: int = 14) -> AbsorptionResult:
    """Add pool edges one at a time, each a booster of the current graph,
    until it turns Hamiltonian or no pool edge qualifies.

    Candidates come from rotation endpoint pairs first; on small graphs each
    accepted edge is verified to be a true booster, and a full exact booster
    scan runs when the rotation candidates stall.  The loop is capped at |V|
    additions; failures name the stage that stalled.
    """
    n = base.n
    pool = {(min(u, v), max(u, v)) for u, v in pool}
    for u, v in pool:
        if base.has_edge(u, v):
            raise ValueError(f"pool edge {(u, v)} already in base graph")
    budget = budget if budget is not None else 5_000
    current_edges = list(base.edges())
    used: list = []
    log: list = []

    for step in range(n + 1):
        current = Graph.from_edges(n, current_edges)
        ham = hamilton_cycle(current, seed=derive_seed(seed, "absorb", step), budget=budget)
        if ham.cycle is not None:
            return AbsorptionResult(ham.cycle, tuple(used), tuple(log), None)
        if not pool:
            return AbsorptionResult(None, tuple(used), tuple(log),
                                    f"step {step}: pool exhausted, not Hamiltonian")
        path = longest_path(current, mode="rotation", budget=max(200, budget // 5),
                            seed=derive_seed(seed, "absorb-path", step))
        candidates = sorted(rotation_booster_pairs(current, list(path.vertices)) & pool)
        chosen = None
        if n <= exact_limit:
            base_len = longest_path_length(current)
            for e in candidates:
                if _is_exact_booster(current, e, base_len):
                    chosen = e
                    break
            if chosen is None:
                exact = boosters(current, mode="exact")
                scan = sorted(exact.pairs & pool)
                chosen = scan[0] if scan else None
        else:
            chosen = candidates[0] if candidates else None
        if chosen is None:
            return AbsorptionResult(None, tuple(used), tuple(log),
                                    f"step {step}: no pool edge is a booster")
        pool.remove(chosen)
        current_edges.append(chosen)
        used.append(chosen)
        log.append((step, chosen))
    return AbsorptionResult(None, tuple(used), tuple(log),
                            f"cap reached: {n} additions without a Hamilton cycle")


def _is_exact_booster(graph: Graph, edge, base_len: int) -> bool:
    bigger = Graph.from_edges(graph.n, list(graph.edges()) + [edge])
    return (hamilton_cycle_exact(bigger) is not None
            or longest_path_length(bigger) > base_len)
