"""The random-regular-graph pipeline and its supporting lemma checkers.

Given a d-regular graph colored with too few colors, the pipeline derives an
anagram witness in stages: (1) trim to an even core Z where every color
class has even size and every vertex keeps a degree floor, (2) split Z into
two disjoint same-coloring halves by coin-flipping same-color pairs, (3)
build a Hamilton cycle inside each half, (4) bridge the halves by any
crossing edge, (5) unroll both cycles into one path whose halves are the two
sets.  Every stage can fail on desk-scale inputs; failures are reported by
stage, and a returned witness is always verified first.

The theory-side constants (quasirandomness coefficients, the dense-set
thresholds) live in parameter dataclasses with the published defaults; those
defaults need astronomically large degree to bite, so experiments use the
documented relaxed preset and the checks report rather than assume.
"""
from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .core import Coloring, Graph, AnagramWitness, PathWitness, color_count, verify_witness
from .posa import hamilton_cycle
from .util import derive_seed


@dataclass(frozen=True)
class PropertyParams:
    """Quasirandomness constants.

    (P1): sets U with |U| <= a1*(log d/d)*n span at most a2*|U|*log d edges.
    (P2): disjoint T, U with |T| >= p2_t*(log d/d)*n and |U| >= p2_u*(log
    d/d)*n have at least |T|*|U|*d*p2_density/n crossing edges.
    """

    a1: float = 30.0
    a2: float = 100.0
    p2_t: float = 10.0
    p2_u: float = 100.0
    p2_density: float = 1.0 / 20.0


@dataclass(frozen=True)
class SplitParams:
    """Core/split thresholds, as multiples of log d.

    delta (removal floor) defaults to alpha/removal_degree_divisor * log d;
    side_floor (within-side degree) to alpha/degree_floor_divisor * log d.
    core_target fixes |X| as a fraction of n (None = the published formula,
    clamped).  The paper-scale alpha makes both floors unsatisfiable at desk
    sizes, hence the relaxed preset.
    """

    alpha: float = 1e5
    removal_degree_divisor: float = 40.0
    degree_floor_divisor: float = 160.0
    core_target: float | None = None
    retries: int = 100
    delta: float | None = None
    side_floor: float | None = None

    @staticmethod
    def relaxed() -> "SplitParams":
        return SplitParams(alpha=40.0, core_target=0.0, retries=200)

    def delta_value(self, d: float) -> float:
        if self.delta is not None:
            return self.delta
        return self.alpha / self.removal_degree_divisor * math.log(max(d, 2.0))

    def side_floor_value(self, d: float) -> float:
        if self.side_floor is not None:
            return self.side_floor
        return self.alpha / self.degree_floor_divisor * math.log(max(d, 2.0))

    def x_target(self, n: int, d: float) -> int:
        if self.core_target is not None:
            return int(self.core_target * n)
        frac = 1.0 - self.alpha * math.log(max(d, 2.0)) / max(d, 2.0)
        return max(0, int(frac * n))


class CoreCollapsed(RuntimeError):
    """Even-core construction removed every vertex."""


class SplitRetriesExceeded(RuntimeError):
    """No balanced split met the degree floor within the retry budget."""


# -- edge distribution ----------------------------------------------------------

@dataclass(frozen=True)
class EdgeDistributionReport:
    d: float
    p1_threshold: float
    p1_feasible: bool
    p1_tested: int
    p1_max_ratio: float | None
    p1_violations: tuple
    p2_t_threshold: float
    p2_u_threshold: float
    p2_feasible: bool
    p2_tested: int
    p2_min_ratio: float | None
    p2_violations: tuple

    @property
    def ok(self) -> bool:
        return not self.p1_violations and not self.p2_violations


def _edges_inside(masks, subset_mask) -> int:
    total = 0
    m = subset_mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        total += (masks[v] & subset_mask).bit_count()
    return total // 2


def _edges_between(masks, t_mask, u_mask) -> int:
    total = 0
    m = t_mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        total += (masks[v] & u_mask).bit_count()
    return total


def check_edge_distribution(graph: Graph, params: PropertyParams = PropertyParams(),
                            mode: str = "sampled", trials: int = 1000, seed: int = 0,
                            d: float | None = None) -> EdgeDistributionReport:
    """Test the two quasirandomness properties, exactly or by sampling.

    Thresholds scale with log d / d; when they exceed n the property is
    vacuous at this size and the report flags it infeasible rather than
    passing silently.  Violations carry the offending sets.
    """
    n = graph.n
    if d is None:
        d = 2 * graph.m / n if n else 0.0
    logd = math.log(d) if d > 1 else 0.0
    masks = graph.adjacency_masks

    p1_cap = params.a1 * logd / d * n if d > 1 else 0.0
    p1_feasible = p1_cap >= 1
    p1_tested = 0
    p1_max = None
    p1_viol = []

    p2_t = params.p2_t * logd / d * n if d > 1 else float("inf")
    p2_u = params.p2_u * logd / d * n if d > 1 else float("inf")
    t0, u0 = math.ceil(max(p2_t, 1)), math.ceil(max(p2_u, 1))
    p2_feasible = t0 + u0 <= n
    p2_tested = 0
    p2_min = None
    p2_viol = []

    def p1_check(subset):
        nonlocal p1_tested, p1_max
        p1_tested += 1
        mask = 0
        for v in subset:
            mask |= 1 << v
        e = _edges_inside(masks, mask)
        ratio = (e / (len(subset) * logd)) if logd > 0 else (float("inf") if e else 0.0)
        if p1_max is None or ratio > p1_max:
            p1_max = ratio
        if e > params.a2 * len(subset) * logd and len(p1_viol) < 16:
            p1_viol.append(tuple(subset))

    def p2_check(t_set, u_set):
        nonlocal p2_tested, p2_min
        p2_tested += 1
        t_mask = sum(1 << v for v in t_set)
        u_mask = sum(1 << v for v in u_set)
        e = _edges_between(masks, t_mask, u_mask)
        floor = len(t_set) * len(u_set) * d * params.p2_density / n
        ratio = e / floor if floor > 0 else float("inf")
        if p2_min is None or ratio < p2_min:
            p2_min = ratio
        if e < floor and len(p2_viol) < 16:
            p2_viol.append((tuple(t_set), tuple(u_set)))

    if mode == "exact":
        if n > 20:
            raise ValueError("exact mode limited to 20 vertices")
        if p1_feasible:
            for size in range(1, min(int(p1_cap), n) + 1):
                for subset in combinations(range(n), size):
                    p1_check(subset)
        if p2_feasible:
            for t_size in range(t0, n - u0 + 1):
                for t_set in combinations(range(n), t_size):
                    rest = [v for v in range(n) if v not in set(t_set)]
                    for u_size in range(u0, len(rest) + 1):
                        for u_set in combinations(rest, u_size):
                            p2_check(t_set, u_set)
    elif mode == "sampled":
        rng = random.Random(derive_seed(seed, "edge-dist"))
        if p1_feasible:
            hi = min(int(p1_cap), n)
            for _ in range(trials):
                size = rng.randint(1, hi)
                p1_check(rng.sample(range(n), size))
        if p2_feasible:
            for _ in range(trials):
                t_set = rng.sample(range(n), t0)
                rest = [v for v in range(n) if v not in set(t_set)]
                u_set = rng.sample(rest, u0)
                p2_check(t_set, u_set)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    return EdgeDistributionReport(
        d=d, p1_threshold=p1_cap, p1_feasible=p1_feasible, p1_tested=p1_tested,
        p1_max_ratio=p1_max, p1_violations=tuple(p1_viol),
        p2_t_threshold=p2_t, p2_u_threshold=p2_u, p2_feasible=p2_feasible,
        p2_tested=p2_tested, p2_min_ratio=p2_min, p2_violations=tuple(p2_viol))


# -- even core and dense split --------------------------------------------------

@dataclass(frozen=True)
class CoreResult:
    z: tuple
    x: tuple
    removed: tuple  # (low-degree vertex, same-color partner) per round
    delta: float


def build_even_core(graph: Graph, coloring: Coloring, params: SplitParams) -> CoreResult:
    """Trim to a set Z with all color classes even and min internal degree
    >= delta.

    X takes one representative from each odd class, padded with same-color
    pairs (largest classes first) up to the size target; then vertices under
    the degree floor leave together with a same-color partner until none
    remain.  Raises CoreCollapsed when Z empties.
    """
    n = graph.n
    if len(coloring) != n:
        raise ValueError("coloring does not match graph")
    d = 2 * graph.m / n if n else 0.0
    delta = params.delta_value(d)

    classes: dict = {}
    for v in range(n):
        classes.setdefault(coloring.colors[v], []).append(v)
    x = [members[0] for members in classes.values() if len(members) % 2 == 1]
    reserved = set(x)

    target = params.x_target(n, d)
    if target > len(x):
        pool = {c: [v for v in members if v not in reserved]
                for c, members in classes.items()}
        while len(x) + 2 <= target:
            color = max(pool, key=lambda c: (len(pool[c]), -c))
            if len(pool[color]) < 2:
                break
            a, b = pool[color][0], pool[color][1]
            pool[color] = pool[color][2:]
            x += [a, b]
            reserved |= {a, b}

    alive = set(range(n)) - reserved
    degree = {v: sum(1 for w in graph.adjacency[v] if w in alive) for v in alive}
    removed = []
    while alive:
        low = sorted(v for v in alive if degree[v] < delta)
        if not low:
            break
        v = low[0]
        partner = min((w for w in alive if w != v and
                       coloring.colors[w] == coloring.colors[v]), default=None)
        assert partner is not None, "even classes always hold a partner"
        removed.append((v, partner))
        for gone in (v, partner):
            alive.remove(gone)
            for w in graph.adjacency[gone]:
                if w in alive:
                    degree[w] -= 1
    if not alive:
        raise CoreCollapsed(
            f"degree floor {delta:.2f} removed all vertices "
            f"({len(removed)} removal rounds)")
    z = tuple(sorted(alive))
    counts = Counter(coloring.colors[v] for v in z)
    assert all(c % 2 == 0 for c in counts.values())
    assert all(degree[v] >= delta for v in z)
    return CoreResult(z, tuple(sorted(reserved)), tuple(removed), delta)


@dataclass(frozen=True)
class DenseSetPair:
    v1: tuple
    v2: tuple
    pairs: tuple  # the same-color pairing that was coin-flipped


def split_dense_pair(graph: Graph, coloring: Coloring, z, params: SplitParams,
                     seed: int = 0) -> DenseSetPair:
    """Split Z into equal halves with identical colorings and a per-vertex
    within-side degree floor.

    Each color class is paired up arbitrarily (sorted order); every pair is
    coin-flipped across the two sides, guaranteeing equal color counts, and
    the flip is retried with fresh seeds until the floor holds everywhere.
    """
    z = sorted(z)
    z_set = set(z)
    d = 2 * graph.m / graph.n if graph.n else 0.0
    floor = params.side_floor_value(d)
    classes: dict = {}
    for v in z:
        classes.setdefault(coloring.colors[v], []).append(v)
    if any(len(m) % 2 for m in classes.values()):
        raise ValueError("every color class in Z must have even size")
    pairs = []
    for c in sorted(classes):
        members = classes[c]
        pairs += [(members[i], members[i + 1]) for i in range(0, len(members), 2)]

    best_shortfall = None
    for attempt in range(params.retries):
        rng = random.Random(derive_seed(seed, "split", attempt))
        side1, side2 = [], []
        for a, b in pairs:
            if rng.getrandbits(1):
                side1.append(a)
                side2.append(b)
            else:
                side1.append(b)
                side2.append(a)
        ok = True
        shortfall = 0
        for side in (side1, side2):
            members = set(side)
            for v in side:
                deg = sum(1 for w in graph.adjacency[v] if w in members)
                if deg < floor:
                    ok = False
                    shortfall += 1
        if ok:
            v1, v2 = tuple(sorted(side1)), tuple(sorted(side2))
            assert color_count(coloring, v1) == color_count(coloring, v2)
            assert not set(v1) & set(v2) and len(v1) == len(v2)
            return DenseSetPair(v1, v2, tuple(pairs))
        if best_shortfall is None or shortfall < best_shortfall:
            best_shortfall = shortfall
    raise SplitRetriesExceeded(
        f"floor {floor:.2f} unmet after {params.retries} flips "
        f"(best attempt had {best_shortfall} short vertices)")


# -- the pipeline ----------------------------------------------------------------

@dataclass(frozen=True)
class PipelineResult:
    witness: AnagramWitness | None
    stage: str  # last stage reached: "verified" on success, else the failure
    detail: str
    v1: tuple = ()
    v2: tuple = ()
    cycle_lengths: tuple = ()


def anagram_pipeline(graph: Graph, coloring: Coloring,
                     params: SplitParams | None = None, seed: int = 0,
                     hamilton_budget: int = 20_000) -> PipelineResult:
    """Run the full witness pipeline; never returns an unverified witness."""
    params = params if params is not None else SplitParams.relaxed()
    try:
        core = build_even_core(graph, coloring, params)
    except CoreCollapsed as exc:
        return PipelineResult(None, "even_core", str(exc))
    if not core.z:
        return PipelineResult(None, "even_core", "core is empty")
    try:
        pair = split_dense_pair(graph, coloring, core.z, params, seed=seed)
    except SplitRetriesExceeded as exc:
        return PipelineResult(None, "split", str(exc))

    cycles = []
    for label, side in (("hamilton_v1", pair.v1), ("hamilton_v2", pair.v2)):
        sub, keep = graph.induced(side)
        result = hamilton_cycle(sub, seed=derive_seed(seed, label),
                                budget=hamilton_budget)
        if result.cycle is None:
            return PipelineResult(None, label,
                                  f"no Hamilton cycle on {len(side)} vertices "
                                  f"({result.method})",
                                  pair.v1, pair.v2)
        cycles.append([keep[i] for i in result.cycle])

    v1_set, v2_set = set(pair.v1), set(pair.v2)
    bridge = None
    for u in pair.v1:
        for w in graph.adjacency[u]:
            if w in v2_set:
                bridge = (u, w)
                break
        if bridge:
            break
    if bridge is None:
        return PipelineResult(None, "crossing_edge", "no edge between the sides",
                              pair.v1, pair.v2,
                              (len(cycles[0]), len(cycles[1])))

    path = _unroll(cycles[0], bridge[0], forward=True) + \
        _unroll(cycles[1], bridge[1], forward=False)
    witness = AnagramWitness(PathWitness(tuple(path)), len(pair.v1))
    if not verify_witness(graph, coloring, witness):
        return PipelineResult(None, "assemble", "assembled path failed verification",
                              pair.v1, pair.v2,
                              (len(cycles[0]), len(cycles[1])))
    return PipelineResult(witness, "verified", "",
                          pair.v1, pair.v2, (len(cycles[0]), len(cycles[1])))


def _unroll(cycle, anchor, forward: bool):
    """Walk the whole cycle ending at the anchor (forward) or starting at it
    (backward), covering each vertex once."""
    i = cycle.index(anchor)
    if forward:
        return [cycle[(i + 1 + j) % len(cycle)] for j in range(len(cycle))]
    return [cycle[(i + j) % len(cycle)] for j in range(len(cycle))]


# -- matching lemma validators ---------------------------------------------------

def count_perfect_matchings(graph: Graph, limit: int = 24) -> int:
    """Exact perfect-matching count by memoized bitmask recursion; also
    asserts the degree-product bound that caps it."""
    n = graph.n
    if n > limit:
        raise ValueError(f"matching count limited to {limit} vertices")
    if n % 2 != 0:
        return 0
    masks = graph.adjacency_masks
    full = (1 << n) - 1
    memo = {full: 1}

    def rec(mask):
        if mask in memo:
            return memo[mask]
        free = ~mask & full
        v = (free & -free).bit_length() - 1
        total = 0
        cand = masks[v] & free
        while cand:
            low = cand & -cand
            total += rec(mask | (1 << v) | low)
            cand ^= low
        memo[mask] = total
        return total

    count = rec(0)
    bound = bregman_matching_bound(graph)
    assert count <= bound * (1 + 1e-9) + 1e-9, (count, bound)
    return count


def bregman_matching_bound(graph: Graph) -> float:
    """prod_i (deg_i!)^(1/(2 deg_i)); isolated vertices contribute 1."""
    out = 1.0
    for v in range(graph.n):
        r = graph.degree(v)
        if r > 0:
            out *= math.factorial(r) ** (1.0 / (2 * r))
    return out


@dataclass(frozen=True)
class AvoidanceReport:
    probability: float
    beta: float
    reference_bound: float  # exp(-8*beta*N/9); valid only for large N
    mode: str
    trials: int
    stderr: float


def matching_avoidance_probability(n_points: int, forbidden, mode: str = "exact",
                                   trials: int = 100_000, seed: int = 0) -> AvoidanceReport:
    """Probability that a uniform perfect matching avoids the forbidden edge
    set; exact by matching counts, or Monte-Carlo.  The asymptotic reference
    bound is reported alongside, never asserted."""
    if n_points % 2 != 0:
        raise ValueError("point count must be even")
    forb = {(min(u, v), max(u, v)) for u, v in forbidden}
    beta = len(forb) / n_points**2 if n_points else 0.0
    bound = math.exp(-8 * beta * n_points / 9)

    if mode == "exact":
        if n_points > 20:
            raise ValueError("exact mode limited to 20 points")
        allowed = [(u, v) for u, v in combinations(range(n_points), 2)
                   if (u, v) not in forb]
        num = count_perfect_matchings(Graph.from_edges(n_points, allowed))
        den = count_perfect_matchings(
            Graph.from_edges(n_points, list(combinations(range(n_points), 2))))
        return AvoidanceReport(num / den, beta, bound, "exact", 0, 0.0)
    if mode != "monte_carlo":
        raise ValueError(f"unknown mode {mode!r}")

    rng = random.Random(derive_seed(seed, "avoidance"))
    points = list(range(n_points))
    hits = 0
    for _ in range(trials):
        rng.shuffle(points)
        ok = True
        for i in range(0, n_points, 2):
            a, b = points[i], points[i + 1]
            if ((a, b) if a < b else (b, a)) in forb:
                ok = False
                break
        hits += ok
    p = hits / trials
    stderr = math.sqrt(max(p * (1 - p), 1e-12) / trials)
    return AvoidanceReport(p, beta, bound, "monte_carlo", trials, stderr)


def union_regular_pair(n: int, d1: int, d2: int, seed: int = 0):
    """Union of two independent regular graphs, exposing which edges came
    from which part; overlapping edges count for the first graph only."""
    from .construct import random_regular

    g1 = random_regular(n, d1, derive_seed(seed, "union-g1"))
    g2 = random_regular(n, d2, derive_seed(seed, "union-g2"))
    e1 = set(g1.edges())
    e2 = set(g2.edges()) - e1
    union = Graph.from_edges(n, sorted(e1 | e2))
    return union, tuple(sorted(e1)), tuple(sorted(e2))
