import pytest
from collections import Counter

from hypothesis import given, strategies as st

from anagraph.core import (
    AnagramWitness,
    Coloring,
    Graph,
    PathWitness,
    color_count,
    connected_components,
    is_anagram_path,
    is_forest,
    is_simple_path,
    verify_witness,
)

from conftest import cycle_graph, path_graph


def test_graph_from_edges_validates():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 5)])


def test_graph_basics():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.m == 3
    assert g.neighbors(1) == (0, 2)
    assert g.has_edge(2, 3) and not g.has_edge(0, 3)
    assert list(g.edges()) == [(0, 1), (1, 2), (2, 3)]
    assert is_forest(g)
    assert connected_components(g) == [[0, 1, 2, 3]]


def test_induced_subgraph_maps_ids():
    g = cycle_graph(5)
    sub, keep = g.induced([1, 2, 4])
    assert keep == [1, 2, 4]
    assert list(sub.edges()) == [(0, 1)]  # only 1-2 survives


def test_coloring_normalize():
    c = Coloring.normalize([7, 7, 3, 7, 5])
    assert c.colors == (0, 0, 1, 0, 2)
    assert c.palette_size == 3
    with pytest.raises(ValueError):
        Coloring((0, 2), 2)  # sparse ids


def test_color_count_examples():
    c = Coloring((0, 1, 0), 2)
    assert color_count(c, [0, 1, 2]) == Counter({0: 2, 1: 1})
    assert color_count(Coloring((0,), 1), []) == Counter()
    c2 = Coloring((0, 1, 1, 0), 2)
    assert color_count(c2, [0, 1]) == color_count(c2, [2, 3])
    with pytest.raises(ValueError):
        color_count(c, [5])


def test_is_anagram_path_examples():
    c = Coloring((0, 1, 1, 0), 2)
    assert is_anagram_path(c, (0, 1, 2, 3))
    assert not is_anagram_path(Coloring((0, 1, 0), 2), (0, 1, 2))  # odd
    assert is_anagram_path(Coloring((0, 0), 1), (0, 1))  # adjacent equal pair


def test_verify_witness_examples():
    g = cycle_graph(4)
    c = Coloring((0, 1, 0, 1), 2)
    good = AnagramWitness(PathWitness((0, 1, 2, 3)), 2)
    assert verify_witness(g, c, good)
    non_adjacent = AnagramWitness(PathWitness((0, 2, 1, 3)), 2)
    assert not verify_witness(g, c, non_adjacent)
    repeated = AnagramWitness(PathWitness((0, 1, 0, 1)), 2)
    assert not verify_witness(g, c, repeated)
    bad_split = AnagramWitness(PathWitness((0, 1, 2, 3)), 1)
    assert not verify_witness(g, c, bad_split)


def test_verify_witness_implies_anagram_predicate():
    g = path_graph(6)
    c = Coloring((0, 1, 2, 2, 1, 0), 3)
    w = AnagramWitness(PathWitness((0, 1, 2, 3, 4, 5)), 3)
    assert verify_witness(g, c, w)
    assert is_anagram_path(c, w.path.vertices)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=30), st.data())
def test_color_count_additive_over_disjoint_sets(raw, data):
    coloring = Coloring.normalize(raw)
    n = len(raw)
    cut = data.draw(st.integers(0, n))
    picks = data.draw(st.permutations(range(n)))
    s1, s2 = list(picks[:cut]), list(picks[cut:])
    assert color_count(coloring, s1) + color_count(coloring, s2) == \
        color_count(coloring, s1 + s2)


@given(st.lists(st.integers(0, 3), min_size=2, max_size=16))
def test_anagram_predicate_reversal_and_renaming_invariance(raw):
    coloring = Coloring.normalize(raw)
    path = tuple(range(len(raw)))
    value = is_anagram_path(coloring, path)
    assert is_anagram_path(coloring, path[::-1]) == value
    renamed = Coloring.normalize([coloring.palette_size - 1 - c for c in coloring.colors])
    assert is_anagram_path(renamed, path) == value


def test_simple_path_checks():
    g = path_graph(4)
    assert is_simple_path(g, (0, 1, 2))
    assert not is_simple_path(g, (0, 2))
    assert not is_simple_path(g, (0, 1, 0))
    assert not is_simple_path(g, ())
