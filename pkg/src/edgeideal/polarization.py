"""Quadratic monomial ideals with squares, handled through polarization.

Each square ``x_i^2`` becomes ``x_i y_i`` with a fresh variable ``y_i``
(a whisker on ``x_i`` in graph terms).  Multigraded Betti numbers are
unchanged once ``y_i`` is given the degree of ``x_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .betti import BettiDiagram, betti_diagram, multigraded_diagram
from .errors import NotBipartiteError, NotConnectedError
from .graph_core import (Graph, bipartite_complement, complement, detect_bipartition,
                         is_connected, min_induced_cycle)
from .homology import FACE_LIMIT


@dataclass(frozen=True)
class QuadraticIdeal:
    """Minimal generators: ``x_i^2`` for ``i in squares`` and ``x_u x_v`` for ``{u, v} in edges``."""

    n_vars: int
    squares: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "squares", frozenset(self.squares))
        object.__setattr__(self, "edges", frozenset(tuple(sorted(e)) for e in self.edges))
        if not self.squares:
            raise ValueError("a quadratic ideal here needs at least one square; use Graph otherwise")
        for i in self.squares:
            if not 0 <= i < self.n_vars:
                raise ValueError(f"square x{i + 1}^2 out of range")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"x{u + 1}*x{v + 1} is a square, list it under squares")
            if not (0 <= u < self.n_vars and 0 <= v < self.n_vars):
                raise ValueError(f"generator x{u + 1}*x{v + 1} out of range")

    @classmethod
    def from_generators(cls, n_vars: int, generators) -> QuadraticIdeal:
        """``generators``: pairs ``(u, v)`` of 0-based indices, ``u == v`` for a square."""
        squares, edges = set(), set()
        for u, v in generators:
            key = (min(u, v), max(u, v))
            target = squares if u == v else edges
            item = u if u == v else key
            if item in target:
                raise ValueError(f"duplicate generator x{key[0] + 1}*x{key[1] + 1}")
            target.add(item)
        return cls(n_vars, frozenset(squares), frozenset(edges))

    def sqf_graph(self) -> Graph:
        return Graph.from_edges(self.n_vars, sorted(self.edges), [f"x{i + 1}" for i in range(self.n_vars)])

    def looped_graph(self) -> LoopedGraph:
        return LoopedGraph(self.sqf_graph(), frozenset(self.squares))

    def generators(self) -> list[str]:
        out = [f"x{i + 1}^2" for i in sorted(self.squares)]
        out += [f"x{u + 1}*x{v + 1}" for u, v in sorted(self.edges)]
        return out


@dataclass(frozen=True)
class LoopedGraph:
    """Graph with loops: ``base`` holds the simple edges, ``loops`` the looped vertices."""

    base: Graph
    loops: frozenset[int]

    def edge_list(self) -> list[tuple[int, int]]:
        """Simple edges followed by loops ``(u, u)``."""
        return self.base.edges() + [(u, u) for u in sorted(self.loops)]

    def adjacent(self, a: int, b: int) -> bool:
        if a == b:
            return a in self.loops
        return self.base.has_edge(a, b)


def polarize(ideal: QuadraticIdeal) -> Graph:
    """Simple graph of the polarization; ``y_i`` vertices follow the ``x``'s in square order."""
    n = ideal.n_vars
    squares = sorted(ideal.squares)
    edges = list(sorted(ideal.edges))
    edges += [(x, n + k) for k, x in enumerate(squares)]
    labels = [f"x{i + 1}" for i in range(n)] + [f"y{x + 1}" for x in squares]
    return Graph.from_edges(n + len(squares), edges, labels)


def depolarization_map(ideal: QuadraticIdeal) -> list[int]:
    """Variable index of ``x`` that each polarized vertex is graded like."""
    return list(range(ideal.n_vars)) + sorted(ideal.squares)


@dataclass
class NonSquarefreeBetti:
    diagram: BettiDiagram
    # (i, multidegree exponent vector on x_1..x_n, beta_{i,m})
    multigraded: list[tuple[int, tuple[int, ...], int]]


def fold_multidegree(ideal: QuadraticIdeal, support) -> tuple[int, ...]:
    fold = depolarization_map(ideal)
    m = [0] * ideal.n_vars
    for v in support:
        m[fold[v]] += 1
    return tuple(m)


def betti_nonsquarefree(ideal: QuadraticIdeal, p: int = 2, max_vertices: int | None = None,
                        workers: int | None = 1, face_limit: int = FACE_LIMIT,
                        multigraded: bool = True) -> NonSquarefreeBetti:
    """Betti numbers of the ideal, computed on its polarization."""
    g = polarize(ideal)
    d = betti_diagram(g, p, max_vertices, workers, face_limit=face_limit)
    entries = []
    if multigraded:
        for e in multigraded_diagram(g, p, max_vertices, workers, face_limit=face_limit):
            entries.append((e.i, fold_multidegree(ideal, e.support), e.count))
    return NonSquarefreeBetti(d, entries)


def totally_disjoint(lg: LoopedGraph, e1: tuple[int, int], e2: tuple[int, int]) -> bool:
    """No edge (or loop) of ``lg`` joins an endpoint of ``e1`` to one of ``e2``."""
    return not any(lg.adjacent(a, b) for a in set(e1) for b in set(e2))


def totally_disjoint_triples(lg: LoopedGraph, witness_cap: int = 64):
    """Count unordered triples of pairwise totally disjoint edges, loops included.

    Returns ``(count, witnesses)`` with at most ``witness_cap`` witnesses.
    """
    edges = lg.edge_list()
    ok = {(i, k) for i, k in combinations(range(len(edges)), 2) if totally_disjoint(lg, edges[i], edges[k])}
    count = 0
    witnesses = []
    for a, b, c in combinations(range(len(edges)), 3):
        if (a, b) in ok and (a, c) in ok and (b, c) in ok:
            count += 1
            if len(witnesses) < witness_cap:
                witnesses.append((edges[a], edges[b], edges[c]))
    return count, witnesses


def has_totally_disjoint_pair(lg: LoopedGraph) -> bool:
    edges = lg.edge_list()
    return any(totally_disjoint(lg, e1, e2) for e1, e2 in combinations(edges, 2))


def _require_bipartite(ideal: QuadraticIdeal):
    g = ideal.sqf_graph()
    view = detect_bipartition(g)
    if not view:
        raise NotBipartiteError(witness=view.witness)
    if not is_connected(g):
        raise NotConnectedError("the graph of the squarefree generators must be connected")
    return g, view


def reg3_nonsquarefree(ideal: QuadraticIdeal) -> bool:
    """Regularity exactly 3, read from the looped graph ``G`` of the ideal.

    All three conditions are needed: two totally disjoint edges or an induced
    ``C_l`` (``l >= 5``) in ``G^c``; no three pairwise totally disjoint edges;
    no induced cycle of length at least 8 in ``G^bc``.  Complements are taken
    of the loopless graph.
    """
    g, view = _require_bipartite(ideal)
    lg = ideal.looped_graph()
    first = has_totally_disjoint_pair(lg) or min_induced_cycle(complement(g), 5) is not None
    if not first:
        return False
    if totally_disjoint_triples(lg, witness_cap=0)[0]:
        return False
    return min_induced_cycle(bipartite_complement(g, view), 8) is None
