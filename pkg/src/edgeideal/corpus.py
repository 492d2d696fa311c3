"""Graph and ideal families for cross-validation runs.

Exhaustive families are deduplicated up to isomorphism.  Random families
are driven by :class:`random.Random` so a seed reproduces them exactly.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations, product

import networkx as nx

from .graph_core import BipartiteView, Graph, is_connected
from .polarization import QuadraticIdeal

DEFAULT_SEED = 0x5EED_ED6E


def _matrix_rows(bits: int, n: int, m: int) -> tuple[int, ...]:
    """Row bitmasks (over ``m`` columns) of the matrix packed in ``bits``."""
    mask = (1 << m) - 1
    return tuple((bits >> (m * r)) & mask for r in range(n))


def _graph_of_rows(rows, m: int) -> Graph:
    return BipartiteView.from_matrix([[(r >> c) & 1 for c in range(m)] for r in rows]).parent


def canonical_biadjacency(rows, m: int) -> tuple:
    """Invariant of a 0/1 matrix under row and column permutations.

    For each row order, read the columns as integers and sort them; keep the
    smallest result.  Square matrices also try the transpose, so two
    connected bipartite graphs get the same key exactly when isomorphic.
    """
    def best(rs, width):
        out = None
        for perm in permutations(rs):
            cols = sorted(sum(((row >> c) & 1) << k for k, row in enumerate(perm)) for c in range(width))
            key = tuple(cols)
            if out is None or key < out:
                out = key
        return out

    n = len(rows)
    key = (n, m, best(rows, m))
    if n == m:
        tr = tuple(sum(((rows[r] >> c) & 1) << r for r in range(n)) for c in range(m))
        key = min(key, (n, m, best(tr, n)))
    return key


def labeled_connected_bipartite(n_x: int, n_y: int):
    """Every biadjacency matrix of shape ``n_x`` by ``n_y`` whose graph is connected.

    Yields ``(rows, graph)`` with rows as column bitmasks.
    """
    for bits in range(1 << (n_x * n_y)):
        rows = _matrix_rows(bits, n_x, n_y)
        if not all(rows):
            continue
        g = _graph_of_rows(rows, n_y)
        if is_connected(g):
            yield rows, g


@lru_cache(maxsize=None)
def _bipartite_classes(n_x: int, n_y: int) -> tuple:
    seen = {}
    for rows, g in labeled_connected_bipartite(n_x, n_y):
        key = canonical_biadjacency(rows, n_y)
        if key not in seen:
            seen[key] = g
    return tuple(seen.values())


def connected_bipartite_graphs(max_n: int, min_n: int = 2) -> list[Graph]:
    """One connected bipartite graph per isomorphism class on ``min_n..max_n`` vertices."""
    out = []
    for n in range(max(min_n, 2), max_n + 1):
        for n_x in range(1, n // 2 + 1):
            out.extend(_bipartite_classes(n_x, n - n_x))
    return out


def bipartite_shapes(max_n: int):
    """``(n_x, n_y)`` with ``n_x <= n_y`` and ``n_x + n_y <= max_n``."""
    return [(a, n - a) for n in range(2, max_n + 1) for a in range(1, n // 2 + 1)]


def atlas_graphs(max_n: int, min_edges: int = 1) -> list[Graph]:
    """All graphs on at most ``max_n <= 7`` vertices up to isomorphism."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() <= max_n and h.number_of_edges() >= min_edges:
            out.append(Graph.from_edges(h.number_of_nodes(), list(h.edges())))
    return out


def random_connected_bipartite(rng: random.Random, n: int, density: float | None = None) -> Graph:
    """Rejection-sample a connected bipartite graph on ``n`` vertices."""
    while True:
        n_x = rng.randint(1, n - 1)
        n_y = n - n_x
        p = density if density is not None else rng.uniform(0.25, 0.8)
        rows = tuple(sum(1 << c for c in range(n_y) if rng.random() < p) for _ in range(n_x))
        if not all(rows):
            continue
        g = _graph_of_rows(rows, n_y)
        if is_connected(g):
            return g


def random_bipartite_corpus(seed: int, count: int, n_min: int, n_max: int) -> list[Graph]:
    rng = random.Random(seed)
    return [random_connected_bipartite(rng, rng.randint(n_min, n_max)) for _ in range(count)]


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_graph_corpus(seed: int, count: int, n_min: int, n_max: int) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_graph(rng, rng.randint(n_min, n_max), rng.uniform(0.2, 0.8))
        if g.num_edges:
            out.append(g)
    return out


def ideal_corpus(max_vars: int = 6, max_squares: int = 2) -> list[QuadraticIdeal]:
    """Ideals whose squarefree part is a connected bipartite graph on all variables.

    Graphs run over isomorphism classes; square placements over all vertex
    subsets of size ``1..max_squares``.
    """
    out = []
    for g in connected_bipartite_graphs(max_vars):
        for k in range(1, max_squares + 1):
            for sq in combinations(range(g.n), k):
                out.append(QuadraticIdeal(g.n, frozenset(sq), frozenset(g.edges())))
    return out


def random_ideal_corpus(seed: int, count: int, n_min: int = 7, n_max: int = 9,
                        max_squares: int = 3) -> list[QuadraticIdeal]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        g = random_connected_bipartite(rng, rng.randint(n_min, n_max))
        k = rng.randint(1, max_squares)
        sq = rng.sample(range(g.n), k)
        out.append(QuadraticIdeal(g.n, frozenset(sq), frozenset(g.edges())))
    return out


def all_labeled_graphs(n: int):
    """Every graph on ``n`` labeled vertices, edge sets in binary order."""
    pairs = list(combinations(range(n), 2))
    for bits in product((0, 1), repeat=len(pairs)):
        yield Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])
