import random
from itertools import combinations

import pytest

from anagraph import construct, posa
from anagraph.core import Graph, is_simple_path

from conftest import complete, cycle_graph, path_graph, petersen


def test_longest_path_examples():
    assert posa.longest_path(path_graph(4)).edge_count == 3
    assert posa.longest_path(complete(4)).edge_count == 3
    assert posa.longest_path(petersen()).edge_count == 9


def test_longest_path_rotation_lower_bound(rng):
    for _ in range(10):
        n = rng.randint(4, 12)
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.4]
        g = Graph.from_edges(n, edges)
        exact = posa.longest_path(g).edge_count
        heur = posa.longest_path(g, mode="rotation", budget=3000, seed=1)
        assert is_simple_path(g, heur.vertices) or heur.vertices == ()
        assert heur.edge_count <= exact


def test_boosters_cycle_all_non_edges():
    c5 = cycle_graph(5)
    out = posa.boosters(c5)
    assert out.pairs == frozenset({(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)})


def test_boosters_path_single():
    out = posa.boosters(path_graph(4))
    assert out.pairs == frozenset({(0, 3)})


def test_rotation_boosters_sound_on_longest_paths(rng):
    # rotation pairs from a true longest path are a subset of exact boosters
    for _ in range(15):
        n = rng.randint(4, 9)
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.45]
        g = Graph.from_edges(n, edges)
        from anagraph.core import is_connected

        if not is_connected(g):
            continue
        longest = posa.longest_path(g)
        rot = posa.rotation_booster_pairs(g, list(longest.vertices))
        exact = posa.boosters(g).pairs
        assert rot <= exact


def test_expander_examples():
    assert posa.is_p_expander(complete(7), 2)
    assert not posa.is_p_expander(cycle_graph(6), 2)
    assert posa.is_p_expander(cycle_graph(6), 1)
    disconnected = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
    assert not posa.is_p_expander(disconnected, 1)


def test_expander_sampled_one_sided(rng):
    g = cycle_graph(6)
    # sampled mode may miss violations but never invents them
    assert posa.is_p_expander(complete(7), 2, mode="sampled", trials=200, seed=1)
    hits = sum(not posa.is_p_expander(g, 2, mode="sampled", trials=500, seed=s)
               for s in range(5))
    assert hits >= 4  # the adjacent-pair violation is found almost surely


def test_booster_lemma_on_non_hamiltonian_expanders(rng):
    # every non-Hamiltonian accepted p-expander carries at least p^2/2
    # boosters; sparse random expanders are nearly always Hamiltonian, so two
    # classic non-Hamiltonian ones anchor the check
    k23 = Graph.from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    fixtures = [petersen(), k23]
    samples = []
    for _ in range(80):
        n = rng.randint(4, 9)
        m = rng.randint(n, min(2 * n, n * (n - 1) // 2 - 1))
        edges = rng.sample(list(combinations(range(n), 2)), m)
        samples.append(Graph.from_edges(n, edges))
    checked = 0
    for g in fixtures + samples:
        p = 0
        for cand in range(1, g.n // 3 + 1):
            if posa.is_p_expander(g, cand):
                p = cand
            else:
                break
        if p == 0 or posa.hamilton_cycle_exact(g) is not None:
            continue
        checked += 1
        assert len(posa.boosters(g).pairs) >= p * p / 2
    assert checked >= 2  # at least the two fixtures


def test_hamilton_cycle_examples():
    c5 = cycle_graph(5)
    res = posa.hamilton_cycle(c5, seed=0)
    assert res.cycle is not None and len(res.cycle) == 5
    pet = posa.hamilton_cycle(petersen(), seed=0, budget=3000)
    assert pet.cycle is None and pet.proven_absent


def test_hamilton_cycle_random_regular_rate():
    found = sum(posa.hamilton_cycle(construct.random_regular(40, 4, seed=s),
                                    seed=s).cycle is not None
                for s in range(20))
    assert found >= 18


def test_hamilton_path_between_examples():
    k4 = complete(4)
    for u, v in combinations(range(4), 2):
        path = posa.hamilton_path_between(k4, u, v)
        assert path is not None and len(path.vertices) == 4
    prism = construct.circular_ladder(1)
    assert all(posa.hamilton_path_between(prism, u, v) is not None
               for u, v in combinations(range(6), 2))
    assert posa.hamilton_path_between(path_graph(4), 1, 2) is None
    with pytest.raises(ValueError):
        posa.hamilton_path_between(k4, 2, 2)


def test_hamilton_connected_examples():
    assert posa.is_hamilton_connected(complete(4))
    assert not posa.is_hamilton_connected(cycle_graph(6))


def test_absorb_closing_edge():
    base = path_graph(5)
    res = posa.absorb_boosters(base, [(0, 4)], seed=0)
    assert res.cycle is not None
    assert res.used_edges == ((0, 4),)


def test_absorb_already_hamiltonian():
    res = posa.absorb_boosters(cycle_graph(5), [], seed=0)
    assert res.cycle is not None
    assert res.used_edges == ()


def test_absorb_non_booster_pool_fails_with_stage():
    res = posa.absorb_boosters(path_graph(4), [(0, 2)], seed=0)
    assert res.cycle is None
    assert res.failure_stage is not None and "booster" in res.failure_stage


def test_absorb_pool_must_avoid_base_edges():
    with pytest.raises(ValueError):
        posa.absorb_boosters(path_graph(4), [(0, 1)], seed=0)


def test_absorb_steps_strictly_lengthen_small_instances(rng):
    for s in range(6):
        g = construct.random_regular(12, 4, seed=s)
        edges = sorted(g.edges())
        shuffle_rng = random.Random(s)
        shuffle_rng.shuffle(edges)
        cut = 3 * len(edges) // 4
        base = Graph.from_edges(12, edges[:cut])
        pool = edges[cut:]
        res = posa.absorb_boosters(base, pool, seed=s, budget=3000)
        current = list(base.edges())
        ell = posa.longest_path_length(base)
        for _, e in res.steps:
            current.append(e)
            bigger = Graph.from_edges(12, current)
            new_ell = posa.longest_path_length(bigger)
            assert new_ell > ell or posa.hamilton_cycle_exact(bigger) is not None
            ell = new_ell
        assert len(res.steps) <= 12
