"""Acceptance criteria 1-11.  Each prints one PASS/FAIL line; all tolerances are exact.

Runs after every other test module (see conftest) so that criterion 7 audits
every diagram produced during the session.
"""

import json
import time
from itertools import combinations

import networkx as nx
import pytest

import oracles
from acceptance_log import DIAGRAM_LOG, criterion
from edgeideal import cycle_formulas as cf
from edgeideal.betti import BettiDiagram, betti_diagram, check_propagation, strand_bounds_hold
from edgeideal.cli import main as cli_main
from edgeideal.corpus import (DEFAULT_SEED, atlas_graphs, bipartite_shapes, canonical_biadjacency,
                              connected_bipartite_graphs, labeled_connected_bipartite,
                              random_bipartite_corpus)
from edgeideal.graph_core import (Graph, bipartite_complement, complement, detect_bipartition,
                                  is_connected, matching_graph)
from edgeideal.homology import (IndependenceComplexView, homology_with_reductions,
                                reduced_euler_characteristic, reduced_homology)
from edgeideal.polarization import betti_nonsquarefree, totally_disjoint_triples
from edgeideal.strands import (first_nonlinear_general, froberg_linear, reg3_bipartite,
                               report_matches_diagram, strand_report)
from edgeideal.verify import example_ideal, run_verify

_cache = {}


def bipartite_corpus():
    """Connected bipartite graphs up to 8 vertices plus the 500-graph random corpus, with diagrams."""
    if "bip" not in _cache:
        graphs = connected_bipartite_graphs(8) + random_bipartite_corpus(DEFAULT_SEED, 500, 9, 12)
        _cache["bip"] = [(g, betti_diagram(g)) for g in graphs]
    return _cache["bip"]


def general_corpus():
    """Every graph with an edge on at most 7 vertices, up to isomorphism."""
    if "gen" not in _cache:
        _cache["gen"] = [(g, betti_diagram(g)) for g in atlas_graphs(7)]
    return _cache["gen"]


# --- 1 -----------------------------------------------------------------------------------

@pytest.mark.parametrize("s", [3, 4, 5])
@pytest.mark.parametrize("p", [2, 3])
def test_c1_closed_formula_equals_engine(s, p):
    with criterion(1, "full_diagram_cbc(s) == betti_diagram(C_2s^bc), s=3,4,5, GF(2) and GF(3)"):
        start = time.perf_counter()
        engine = betti_diagram(cf.cbc_graph(s), p)
        assert time.perf_counter() - start < 120
        assert cf.full_diagram_cbc(s).entries == engine.entries


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
def test_c1_slow_s6(p):
    with criterion(1, "full_diagram_cbc(s) == betti_diagram(C_2s^bc), s=3,4,5, GF(2) and GF(3)"):
        assert cf.full_diagram_cbc(6).entries == betti_diagram(cf.cbc_graph(6), p).entries


# --- 2 -----------------------------------------------------------------------------------

@pytest.mark.parametrize("s", [3, 4, 5])
def test_c2_regularity_four(s):
    with criterion(2, "reg(C_2s^bc) = 4, beta_{2s-4,2s} = 1, nothing past row 4, s=3..5"):
        d = betti_diagram(cf.cbc_graph(s))
        assert d.regularity() == 4
        assert d[(2 * s - 4, 2 * s)] == 1
        assert all(j - i <= 4 for i, j in d.entries)
        assert [(i, j) for i, j in d.entries if j - i == 4] == [(2 * s - 4, 2 * s)]


# --- 3 -----------------------------------------------------------------------------------

@pytest.mark.parametrize("s", [3, 4, 5, 6])
def test_c3_row_end_identities(s):
    with criterion(3, "beta_{s-3,s-1} = beta_{0,2} = s(s-2), beta_{1,4} = beta_{2s-5,2s-2} = s(2s-5)"):
        sources = [cf.full_diagram_cbc(s)]
        if s <= 5:
            sources.append(betti_diagram(cf.cbc_graph(s)))
        for d in sources:
            assert d[(s - 3, s - 1)] == d[(0, 2)] == s * (s - 2)
            assert d[(1, 4)] == d[(2 * s - 5, 2 * s - 2)] == s * (2 * s - 5)


# --- 4 -----------------------------------------------------------------------------------

def test_c4_froberg_exhaustive_six_vertices():
    with criterion(4, "froberg_linear <=> reg 2 on all 2^15 labeled 6-vertex graphs (straight sweep)"):
        pairs = list(combinations(range(6), 2))
        start = time.perf_counter()
        bad = []
        for bits in range(1, 1 << 15):
            g = Graph.from_edges(6, [pairs[k] for k in range(15) if (bits >> k) & 1])
            reg = betti_diagram(g, use_reductions=False).regularity()
            if froberg_linear(g) != (reg == 2):
                bad.append((bits, reg))
        elapsed = time.perf_counter() - start
        assert not bad, bad[:5]
        assert elapsed < 600


# --- 5 -----------------------------------------------------------------------------------

def test_c5_reg3_exhaustive_up_to_8_vertices():
    with criterion(5, "reg3_bipartite <=> reg 3: all connected bipartite graphs <= 8 vertices + 500 random"):
        classes = {}
        bad = []
        for n_x, n_y in bipartite_shapes(8):
            for rows, g in labeled_connected_bipartite(n_x, n_y):
                key = canonical_biadjacency(rows, n_y)
                if key not in classes:
                    classes[key] = betti_diagram(g).regularity()
                if reg3_bipartite(g) != (classes[key] == 3):
                    bad.append((n_x, n_y, rows))
        assert not bad, bad[:5]
        # isomorphism classes per vertex count match the known sequence 1, 1, 3, 5, 17, 44, 182
        sizes = [len(connected_bipartite_graphs(n, n)) for n in range(2, 9)]
        assert sizes == [1, 1, 3, 5, 17, 44, 182]
        assert len(classes) == sum(sizes)


def test_c5_reg3_random_corpus():
    with criterion(5, "reg3_bipartite <=> reg 3: all connected bipartite graphs <= 8 vertices + 500 random"):
        corpus = random_bipartite_corpus(DEFAULT_SEED, 500, 9, 12)
        assert len(corpus) == 500
        assert all(9 <= g.n <= 12 and is_connected(g) and detect_bipartition(g) for g in corpus)
        bad = [g.edges() for g, d in bipartite_corpus()[-500:]
               if reg3_bipartite(g) != (d.regularity() == 3)]
        assert not bad, bad[:3]


# --- 6 -----------------------------------------------------------------------------------

def test_c6_first_strand_bipartite():
    with criterion(6, "StrandReport (i, degree, count) matches the engine on every corpus graph"):
        checked = 0
        for g, d in bipartite_corpus():
            if d.regularity() <= 3:
                continue
            rep = strand_report(g)
            assert rep.first_nonlinear_i == rep.t - 4 and rep.strand_degree == rep.t
            assert not report_matches_diagram(rep, d), (g.edges(), report_matches_diagram(rep, d))
            # the first entry off rows 2 and 3 sits at (t-4, t) with the predicted count
            off = sorted((i, j) for i, j in d.entries if j - i >= 4)
            assert off[0] == (rep.first_nonlinear_i, rep.t)
            assert max(j for i, j in d.entries if i == rep.first_nonlinear_i) == rep.t
            checked += 1
        assert checked > 0


def test_c6_first_strand_general():
    with criterion(6, "StrandReport (i, degree, count) matches the engine on every corpus graph"):
        checked = 0
        for g, d in general_corpus() + bipartite_corpus()[:-500]:
            if d.regularity() <= 2:
                continue
            rep = first_nonlinear_general(g)
            assert not report_matches_diagram(rep, d), (g.edges(), report_matches_diagram(rep, d))
            off = sorted((i, j) for i, j in d.entries if j - i >= 3)
            assert off[0] == (rep.t - 3, rep.t)
            assert rep.strand_count == len(oracles.induced_cycle_subsets(
                g.n, complement(g).edges(), rep.t))
            checked += 1
        assert checked > 500


# --- 8 -----------------------------------------------------------------------------------

@pytest.mark.parametrize("s", [3, 4, 5, 6])
def test_c8_component_counts(s):
    with criterion(8, "component-count formula == enumeration (s=3..6); neighborhood identity (s<=7)"):
        t = 2 * s
        cyc = oracles.nx_graph(t, [(i, (i + 1) % t) for i in range(t)])
        for j in range(1, t):
            brute = {}
            for w in combinations(range(t), j):
                sizes = [len(c) for c in nx.connected_components(cyc.subgraph(w))]
                key = (sum(1 for z in sizes if z > 1), sum(1 for z in sizes if z == 1))
                brute[key] = brute.get(key, 0) + 1
            for m in range(1, j // 2 + 1):
                for a in range(0, j - 2 * m + 1):
                    assert cf.count_subsets_by_components(s, j, m, a) == brute.get((m, a), 0), (j, m, a)


@pytest.mark.parametrize("s", [3, 4, 5, 6, 7])
def test_c8_neighborhood_identity(s):
    with criterion(8, "component-count formula == enumeration (s=3..6); neighborhood identity (s<=7)"):
        t = 2 * s
        for k in range(1, s):
            for w_x in combinations(range(s), k):
                assert cf.neighborhood_identity_check(s, w_x)
                # plain-set restatement: x_i sits at 2i with cycle neighbours 2i-1 and 2i+1
                nbrs = {(2 * i + d) % t for i in w_x for d in (-1, 1)}
                runs = sum(1 for i in w_x if (i - 1) % s not in w_x)
                assert len(nbrs) == k + runs


# --- 9 -----------------------------------------------------------------------------------

def test_c9_worked_example():
    with criterion(9, "example ideal: beta_{2,6} = 1, one totally disjoint triple, no induced C_6 in G^bc"):
        ideal = example_ideal()
        assert ideal.generators() == ["x1^2", "x1*x5", "x2*x5", "x2*x7", "x3*x5", "x3*x6", "x3*x7", "x4*x6"]
        d = betti_nonsquarefree(ideal).diagram
        assert d[(2, 6)] == 1
        count, _ = totally_disjoint_triples(ideal.looped_graph())
        assert count == 1
        bc = bipartite_complement(ideal.sqf_graph())
        assert oracles.induced_cycle_subsets(bc.n, bc.edges(), 6) == []
        # frozen from the independent oracle on the polarized graph
        pol = [(0, 7), (0, 4), (1, 4), (1, 6), (2, 4), (2, 5), (2, 6), (3, 5)]
        assert d.entries == oracles.betti_table(8, pol)


# --- 10 ----------------------------------------------------------------------------------

def _euler_by_faces(g, mask):
    verts = [v for v in range(g.n) if (mask >> v) & 1]
    levels = oracles.independent_sets(verts, g.edges())
    return sum((-1) ** (k - 1) * len(level) for k, level in enumerate(levels))


def _fixture_dims(g, p):
    view = IndependenceComplexView(g, g.vertex_mask)
    plain = reduced_homology(view, p)
    fast = homology_with_reductions(view, p)
    assert plain.dims == fast.dims
    assert plain.euler() == reduced_euler_characteristic(g.adj, g.vertex_mask) == _euler_by_faces(g, g.vertex_mask)
    return plain.dims


@pytest.mark.parametrize("m", range(1, 7))
@pytest.mark.parametrize("p", [2, 3])
def test_c10_sigma_and_theta(m, p):
    with criterion(10, "Sigma_m, Theta_m (m<=6) and the proper-subset classification (s=3,4,5)"):
        sigma = _fixture_dims(matching_graph(m), p)
        assert sigma == (0,) * (m - 1) + (1,)
        theta = _fixture_dims(bipartite_complement(matching_graph(m), allow_disconnected=True), p)
        assert theta == ((0, m - 1) if m > 1 else ())


@pytest.mark.parametrize("s", [3, 4, 5])
def test_c10_subset_classification(s):
    with criterion(10, "Sigma_m, Theta_m (m<=6) and the proper-subset classification (s=3,4,5)"):
        g = cf.cbc_graph(s)
        assert _fixture_dims(g, 2) == (0, 0, 1)
        for k in range(1, 2 * s):
            for w in combinations(range(2 * s), k):
                mask = sum(1 << v for v in w)
                hv = reduced_homology(IndependenceComplexView(g, mask))
                assert hv.dims == cf.classify_subset_homology(s, w), w
                assert hv.euler() == _euler_by_faces(g, mask)


# --- 11 ----------------------------------------------------------------------------------

def test_c11_determinism(capsys):
    with criterion(11, "verify JSON is byte-identical at 1 thread and at N threads"):
        one = run_verify("quick", threads=1).to_json()
        many = run_verify("quick", threads=3).to_json()
        assert one == many
        assert json.loads(one)["passed"]
        outs = []
        for t in ("1", "2"):
            assert cli_main(["verify", "--scale", "quick", "--json", "--threads", t]) == 0
            outs.append(capsys.readouterr().out)
        assert outs[0] == outs[1]
        g = cf.cbc_graph(5)
        assert betti_diagram(g, workers=1).to_json() == betti_diagram(g, workers=2).to_json()


# --- 7 (last: audits everything emitted before it) ---------------------------------------

def test_c7_propagation_and_strand_bounds_everywhere():
    with criterion(7, "propagation and strand bounds hold on every diagram produced in the run"):
        assert not check_propagation(BettiDiagram({(0, 2): 1, (1, 5): 1}))  # negative control
        for s in range(3, 8):
            d = cf.full_diagram_cbc(s)
            assert check_propagation(d) and strand_bounds_hold(d)
        report = run_verify("quick")
        prop = [s for s in report.suites if s.name == "propagation"][0]
        assert prop.checks > 0 and not prop.failures
        assert DIAGRAM_LOG["count"] > 30000
        assert not DIAGRAM_LOG["violations"], DIAGRAM_LOG["violations"][:3]
