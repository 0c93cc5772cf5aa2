"""Constructive lower-bound attacks: given a coloring with too few colors,
produce a verified anagram witness.

Three strategies, all ending in an exact collision test on hashed color
multisets:

* trees -- find an essentially monochromatic subtree (all of its root,
  leaves, and branch vertices share one color), hash the color multisets of
  its root-to-leaf paths, and turn any collision into an anagram folded at
  the paths' lowest common vertex;
* sibling trees -- hash all root-to-leaf tree paths and splice the two
  colliding suffixes through the sibling edge at their divergence point;
* the 4-regular composite -- hash the color counts of block unions, take a
  colliding pair, and route a path through the disjoint difference blocks
  with a Hamilton path inside each block.

Colorings may be given as a Coloring (explicit trees) or any callable
vertex -> color, which is what makes depth-30 trees workable: only the
explored subtree is ever materialized.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .construct import BinaryTreeHandle, CompositeDescriptor
from .core import AnagramWitness, Coloring, Graph, PathWitness, color_count, verify_witness
from .posa import hamilton_path_between
from .util import derive_seed


def _shift_counts(running: dict, delta: Counter, sign: int):
    for col, cnt in delta.items():
        new = running.get(col, 0) + sign * cnt
        if new:
            running[col] = new
        else:
            del running[col]


def _color_fn(coloring):
    if isinstance(coloring, Coloring):
        colors = coloring.colors
        return colors.__getitem__
    if callable(coloring):
        return coloring
    raise TypeError("coloring must be a Coloring or a callable vertex -> color")


@dataclass(frozen=True)
class SubtreeWitness:
    """Essentially monochromatic subtree of a host binary tree.

    ``children`` maps each effective vertex to its pair of effective
    children (None at effective leaves); intermediate host vertices on the
    connecting paths are implicit and recovered by parent walks.
    """

    root: int
    color: int
    effective_depth: int
    children: dict

    def effective_vertices(self) -> tuple:
        return tuple(sorted(self.children))

    def leaves(self) -> tuple:
        return tuple(sorted(v for v, kids in self.children.items() if kids is None))


def find_mono_subtree(tree: BinaryTreeHandle, coloring, targets) -> SubtreeWitness:
    """Essentially i-colored subtree of effective depth >= targets[i], for
    some color i.

    Recursion: a root of color i either owns two such subtrees of depth
    targets[i]-1 (one per child, joined through the root), or some child
    already contains a full-target subtree of another color.  Requires
    tree depth >= sum(targets).
    """
    targets = list(targets)
    if any(t < 0 for t in targets):
        raise ValueError("targets must be non-negative")
    if tree.depth < sum(targets):
        raise ValueError("tree depth must be at least the sum of the targets")
    color_of = _color_fn(coloring)
    d = len(targets)

    def rec(v, t):
        i = color_of(v)
        if not 0 <= i < d:
            raise ValueError(f"color {i} outside the {d}-color target vector")
        if t[i] == 0:
            return i, {v: None}, v, 0
        t2 = t.copy()
        t2[i] -= 1
        jl, ml, rl, dl = rec(2 * v + 1, t2)
        if jl != i:
            return jl, ml, rl, dl
        jr, mr, rr, dr = rec(2 * v + 2, t2)
        if jr != i:
            return jr, mr, rr, dr
        merged = {**ml, **mr, v: (rl, rr)}
        return i, merged, v, 1 + min(dl, dr)

    col, children, root, depth = rec(tree.root, targets)
    witness = SubtreeWitness(root, col, depth, children)
    assert depth >= targets[col]
    assert len(witness.leaves()) >= 1 << depth
    return witness


def _host_segment(tree: BinaryTreeHandle, ancestor: int, descendant: int) -> list:
    """Vertices from just below `ancestor` down to `descendant`, inclusive."""
    seg = []
    v = descendant
    while v != ancestor:
        seg.append(v)
        v = tree.parent(v)
    seg.reverse()
    return seg


def _subtree_leaf_paths(tree: BinaryTreeHandle, witness: SubtreeWitness):
    """Full host-vertex paths from the subtree root to each effective leaf."""
    paths = []

    def walk(v, acc):
        kids = witness.children[v]
        if kids is None:
            paths.append(list(acc))
            return
        for child in kids:
            seg = _host_segment(tree, v, child)
            walk(child, acc + seg)

    walk(witness.root, [witness.root])
    return paths


def _fold_collision(p1, p2, color_of):
    """Anagram from two equal-multiset paths sharing a prefix: climb from
    leaf 1 to the divergence vertex, then descend towards leaf 2, dropping
    leaf 2 itself.  Works because the divergence vertex and both leaves all
    carry the subtree color."""
    j = 0
    while j < min(len(p1), len(p2)) and p1[j] == p2[j]:
        j += 1
    v = p1[j - 1]
    s1, s2 = p1[j:], p2[j:]
    path = s1[::-1] + [v] + s2[:-1]
    return AnagramWitness(PathWitness(tuple(path)), len(s1))


def _multiset_key(counts: Counter) -> tuple:
    return tuple(sorted(counts.items()))


def tree_attack(tree: BinaryTreeHandle, coloring, palette_size: int | None = None,
                targets: list | None = None):
    """Anagram witness on a perfect binary tree, or None.

    Default targets are the equal split floor(h/d) over the d colors; an
    escalating ladder of smaller equal targets runs first, since random
    colorings almost always collide on a shallow subtree already.  The final
    rung is the full equal-target search, whose collision is guaranteed
    whenever the number of path multisets stays below 2^(h/d).
    """
    color_of = _color_fn(coloring)
    if palette_size is None:
        if not isinstance(coloring, Coloring):
            raise ValueError("palette_size is required for callable colorings")
        palette_size = coloring.palette_size
    d = palette_size
    full = tree.depth // d
    if targets is not None:
        ladder = [list(targets)]
    else:
        rungs = sorted({t for t in (3, 5, 7, full) if 0 <= t <= full})
        ladder = [[t] * d for t in (rungs or [0])]

    for rung in ladder:
        subtree = find_mono_subtree(tree, coloring, rung)
        seen: dict = {}
        for path in _subtree_leaf_paths(tree, subtree):
            key = _multiset_key(Counter(color_of(v) for v in path))
            if key in seen:
                witness = _fold_collision(seen[key], path, color_of)
                _check_attack_witness(tree, coloring, witness)
                return witness
            seen[key] = path
    return None


def _check_attack_witness(tree, coloring, witness):
    color_of = _color_fn(coloring)
    vs = witness.path.vertices
    k = witness.split
    assert len(vs) == 2 * k and len(set(vs)) == len(vs)
    for a, b in zip(vs, vs[1:]):
        adjacent = (a != tree.root and tree.parent(a) == b) or \
                   (b != tree.root and tree.parent(b) == a)
        assert adjacent, "non-adjacent step"
    assert Counter(color_of(v) for v in vs[:k]) == Counter(color_of(v) for v in vs[k:])


def materialize_witness_region(tree: BinaryTreeHandle, coloring, witness: AnagramWitness):
    """Explicit (graph, coloring, witness) for the explored region only.

    Vertices are remapped to 0..m-1; the induced subgraph of a tree on the
    path vertices contains exactly the path edges, so verification against
    the extracted graph is verification in the host tree.
    """
    color_of = _color_fn(coloring)
    vertices = sorted(set(witness.path.vertices))
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for v in vertices:
        if v != tree.root:
            p = tree.parent(v)
            if p in index:
                edges.append((index[p], index[v]))
    graph = Graph.from_edges(len(vertices), edges)
    coloring_small = Coloring.normalize([color_of(v) for v in vertices])
    path_small = tuple(index[v] for v in witness.path.vertices)
    return graph, coloring_small, AnagramWitness(PathWitness(path_small), witness.split)


def sibling_tree_attack(graph: Graph, tree: BinaryTreeHandle, coloring):
    """Anagram witness on a sibling tree, or None.

    Hashes the color multiset of every root-to-leaf tree path (these are the
    unique shortest paths; sibling edges never shorten them).  Two colliding
    paths, stripped of their common prefix, splice into one even path
    through the sibling edge at the divergence vertex's children.
    """
    color_of = _color_fn(coloring)
    seen: dict = {}
    for leaf in tree.leaves():
        path = _host_segment(tree, tree.root, leaf)
        path.insert(0, tree.root)
        key = _multiset_key(Counter(color_of(v) for v in path))
        if key in seen:
            p1, p2 = seen[key], path
            j = 0
            while p1[j] == p2[j]:
                j += 1
            s1, s2 = p1[j:], p2[j:]
            spliced = s1[::-1] + s2
            witness = AnagramWitness(PathWitness(tuple(spliced)), len(s1))
            cl = coloring if isinstance(coloring, Coloring) else None
            if cl is not None:
                assert verify_witness(graph, cl, witness)
            return witness
        seen[key] = path
    return None


def composite_attack(graph: Graph, descriptor: CompositeDescriptor, coloring: Coloring,
                     sample_limit: int = 1 << 25, seed: int = 0):
    """Anagram witness on the matched-copies 4-regular graph, or None.

    Compares color-count vectors over block unions (all 2^(k+1) of them, or
    a seeded sample when k is large).  A collision S, T reduces to disjoint
    S' = S - T and T' = T - S with equal counts; the witness walks the
    blocks of S' then T' in index order, entering and leaving each block
    through its unique matching edges and crossing it on a Hamilton path.
    """
    k = descriptor.k
    counts = [color_count(coloring, block) for block in descriptor.blocks]

    total = 1 << (k + 1)
    collision = None
    if total <= sample_limit:
        # Gray-code walk: consecutive masks differ in one block, so one
        # running count vector serves the whole enumeration.
        running: dict = {}
        seen = {(): 0}
        mask = 0
        for i in range(1, total):
            b = (i & -i).bit_length() - 1
            mask ^= 1 << b
            _shift_counts(running, counts[b], 1 if mask >> b & 1 else -1)
            key = tuple(sorted(running.items()))
            if key in seen:
                collision = (seen[key], mask)
                break
            seen[key] = mask
    else:
        rng = random.Random(derive_seed(seed, "composite-sample"))
        seen = {}
        trials = min(sample_limit, 1 << 20)
        for _ in range(trials):
            mask = rng.randrange(1, total)
            acc = Counter()
            for b in range(k + 1):
                if mask >> b & 1:
                    acc += counts[b]
            key = _multiset_key(acc)
            if key in seen and seen[key] != mask:
                collision = (seen[key], mask)
                break
            seen[key] = mask
    if collision is None:
        return None

    s_mask, t_mask = collision
    s_only = s_mask & ~t_mask
    t_only = t_mask & ~s_mask
    assert s_only and t_only, "exact count collision cannot be nested"
    order = [b for b in range(k + 1) if s_only >> b & 1]
    half_blocks = len(order)
    order += [b for b in range(k + 1) if t_only >> b & 1]

    # entry/exit vertices per block along the route, via the matching edges
    route = []
    for idx, b in enumerate(order):
        entry = exit_ = None
        if idx > 0:
            u, v = descriptor.matching_edge(order[idx - 1], b)
            entry = v if u // k == order[idx - 1] else u
        if idx + 1 < len(order):
            u, v = descriptor.matching_edge(b, order[idx + 1])
            exit_ = u if u // k == b else v
        if entry is None:
            entry = next(x for x in descriptor.blocks[b] if x != exit_)
        if exit_ is None:
            exit_ = next(x for x in descriptor.blocks[b] if x != entry)
        route.append((b, entry, exit_))

    path = []
    for b, entry, exit_ in route:
        block_graph, keep = graph.induced(descriptor.blocks[b])
        index = {v: i for i, v in enumerate(keep)}
        segment = hamilton_path_between(block_graph, index[entry], index[exit_])
        if segment is None:
            raise RuntimeError(f"block {b} is not Hamilton-connected: construction bug")
        path.extend(keep[i] for i in segment.vertices)

    witness = AnagramWitness(PathWitness(tuple(path)), half_blocks * k)
    assert verify_witness(graph, coloring, witness)
    return witness
