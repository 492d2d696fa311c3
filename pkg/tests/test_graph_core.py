from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

import oracles
from edgeideal.errors import NotBipartiteError, NotConnectedError, SubsetOutOfRangeError
from edgeideal.graph_core import (BipartiteView, Graph, bipartite_complement, complement,
                                  complete_bipartite, complete_graph, connected_components,
                                  count_induced_cycles, count_nonisolated_components, cycle_graph,
                                  detect_bipartition, disjoint_union, empty_graph, induced_matching_number,
                                  induced_subgraph, is_chordal, is_cycle_subset, is_connected,
                                  matching_graph, min_induced_cycle, path_graph, to_mask)
from strategies import bipartite_views, graphs


def test_graph_rejects_asymmetric_and_loops():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph(1, (0b1,))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_complement_examples():
    assert complement(cycle_graph(4)).edges() == [(0, 2), (1, 3)]
    assert complement(empty_graph(4)) == complete_graph(4)
    c5 = complement(cycle_graph(5))
    assert c5.num_edges == 5 and all(c5.degree(v) == 2 for v in range(5)) and is_connected(c5)


@given(graphs())
def test_complement_is_involution(g):
    assert complement(complement(g)) == g


def test_bipartite_complement_examples():
    assert bipartite_complement(cycle_graph(6)).edges() == [(0, 3), (1, 4), (2, 5)]
    assert bipartite_complement(complete_bipartite(2, 3)).num_edges == 0
    c8 = cycle_graph(8)
    assert bipartite_complement(bipartite_complement(c8)) == c8


def test_bipartite_complement_errors():
    with pytest.raises(NotBipartiteError):
        bipartite_complement(cycle_graph(5))
    with pytest.raises(NotConnectedError):
        bipartite_complement(matching_graph(2))
    view = BipartiteView(matching_graph(2), (0, 2), (1, 3))
    assert bipartite_complement(matching_graph(2), view, allow_disconnected=True).edges() == [(0, 3), (1, 2)]


@given(bipartite_views())
def test_bipartite_complement_is_involution_on_a_view(view):
    g = view.parent
    bc = bipartite_complement(g, view, allow_disconnected=True)
    back = bipartite_complement(bc, BipartiteView(bc, view.side_x, view.side_y), allow_disconnected=True)
    assert back.adj == g.adj
    flipped = [[1 - a for a in row] for row in view.biadjacency]
    assert BipartiteView(bc, view.side_x, view.side_y).biadjacency == flipped


def test_detect_bipartition():
    v = detect_bipartition(cycle_graph(6))
    assert v and sorted(map(len, (v.side_x, v.side_y))) == [3, 3]
    odd = detect_bipartition(cycle_graph(5))
    assert not odd
    w = odd.witness
    assert len(w) % 2 == 1 and all(cycle_graph(5).has_edge(w[k], w[(k + 1) % len(w)]) for k in range(len(w)))
    e = detect_bipartition(path_graph(2))
    assert (e.side_x, e.side_y) == ((0,), (1,))


@given(graphs())
def test_detect_bipartition_matches_networkx(g):
    view = detect_bipartition(g)
    assert bool(view) == nx.is_bipartite(oracles.nx_graph(g.n, g.edges()))
    if not view:
        w = view.witness
        assert len(w) % 2 == 1
        assert all(g.has_edge(w[k], w[(k + 1) % len(w)]) for k in range(len(w)))


def test_induced_subgraph():
    g = cycle_graph(6)
    assert induced_subgraph(g, range(6)) == g
    h = induced_subgraph(g, [0, 1, 3])
    assert h.edges() == [(0, 1)]
    assert induced_subgraph(complete_graph(4), [0, 2, 3]) == complete_graph(3)
    with pytest.raises(SubsetOutOfRangeError):
        induced_subgraph(g, [7])


def test_chordality_examples():
    assert is_chordal(path_graph(6))
    assert not is_chordal(cycle_graph(4))
    # complement of C_6 contains the induced 4-cycle 0-2-3-5 (triangular prism)
    assert not is_chordal(complement(cycle_graph(6)))
    assert oracles.min_hole(6, complement(cycle_graph(6)).edges()) == 4


def test_chordality_exhaustive_up_to_7_vertices():
    for h in nx.graph_atlas_g()[1:]:
        g = Graph.from_edges(h.number_of_nodes(), list(h.edges()))
        assert is_chordal(g) == (min_induced_cycle(g, 4) is None) == nx.is_chordal(h)


@settings(max_examples=60)
@given(graphs(min_n=8, max_n=8))
def test_chordality_eight_vertices(g):
    assert is_chordal(g) == (min_induced_cycle(g, 4) is None)


def test_min_induced_cycle_examples():
    assert min_induced_cycle(cycle_graph(5)) == 5
    assert min_induced_cycle(complete_graph(5)) is None
    c6 = cycle_graph(6)
    # C_6^bc = 3K_2 is disconnected, so the second complement reuses the first bipartition
    view = detect_bipartition(c6)
    bc = bipartite_complement(c6, view)
    back = bipartite_complement(bc, BipartiteView(bc, view.side_x, view.side_y), allow_disconnected=True)
    assert back == c6 and min_induced_cycle(back) == 6
    with pytest.raises(ValueError):
        min_induced_cycle(c6, 3)


def test_count_induced_cycles_examples():
    assert count_induced_cycles(cycle_graph(5), 5) == 1
    assert count_induced_cycles(cycle_graph(6), 6) == 1
    assert count_induced_cycles(cycle_graph(6), 4) == 0
    assert count_induced_cycles(complete_bipartite(3, 3), 4) == 9


@settings(max_examples=80)
@given(graphs(min_n=4, max_n=9))
def test_count_induced_cycles_matches_brute_force(g):
    for t in range(4, g.n + 1):
        brute = oracles.induced_cycle_subsets(g.n, g.edges(), t)
        assert count_induced_cycles(g, t) == len(brute)
        assert all(is_cycle_subset(g.adj, to_mask(w)) for w in brute)


@settings(max_examples=60)
@given(bipartite_views(max_rows=5, max_cols=5))
def test_bipartite_graphs_have_only_even_holes(view):
    t = min_induced_cycle(view.parent, 4)
    assert t is None or t % 2 == 0


def test_induced_matching_examples():
    assert induced_matching_number(matching_graph(3)) == 3
    from edgeideal.cycle_formulas import cbc_graph
    assert induced_matching_number(cbc_graph(3)) == 3
    for s in range(4, 8):
        assert induced_matching_number(cbc_graph(s)) == 2
    for n in range(2, 7):
        assert induced_matching_number(complete_graph(n)) == 1
    assert induced_matching_number(empty_graph(3)) == 0


@settings(max_examples=80)
@given(graphs(max_n=8))
def test_induced_matching_matches_brute_force(g):
    if g.num_edges > 20:
        return
    mu = induced_matching_number(g)
    assert mu == oracles.induced_matching_number(g.n, g.edges())
    assert (mu >= 1) == (g.num_edges > 0)


def test_components():
    assert len(connected_components(matching_graph(3))) == 3
    assert count_nonisolated_components(matching_graph(3)) == 3
    assert len(connected_components(empty_graph(4))) == 4
    assert count_nonisolated_components(empty_graph(4)) == 0
    g = disjoint_union(path_graph(3), empty_graph(1))
    assert len(connected_components(g)) == 2 and count_nonisolated_components(g) == 1


@given(graphs())
def test_components_match_networkx(g):
    ours = sorted(map(tuple, connected_components(g)))
    theirs = sorted(tuple(sorted(c)) for c in nx.connected_components(oracles.nx_graph(g.n, g.edges())))
    assert ours == theirs


def test_biadjacency_round_trip():
    view = BipartiteView.from_matrix([[1, 0, 1], [0, 1, 1]])
    assert view.biadjacency == [[1, 0, 1], [0, 1, 1]]
    assert view.parent.label(0) == "x1" and view.parent.label(2) == "y1"
    with pytest.raises(NotBipartiteError):
        BipartiteView(complete_graph(3), (0,), (1, 2))
    with pytest.raises(ValueError):
        BipartiteView(path_graph(3), (0,), (1,))


def test_every_pair_is_an_edge_or_non_edge_of_complement():
    g = cycle_graph(7)
    c = complement(g)
    for u, v in combinations(range(7), 2):
        assert g.has_edge(u, v) != c.has_edge(u, v)
