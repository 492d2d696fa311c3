"""Closed formulas for the Betti diagram of the bipartite complement of ``C_2s``.

Vertex convention: ``C_2s`` is the cycle ``0 - 1 - ... - (2s-1) - 0``; the even
positions form side X (``x_{i+1}`` is vertex ``2i``) and the odd positions
side Y (``y_{i+1}`` is vertex ``2i+1``), so ``x_i`` is adjacent to ``y_{i-1}``
and ``y_i`` on the cycle.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .betti import BettiDiagram
from .graph_core import (Graph, bipartite_complement, connected_components, cycle_graph,
                         induced_subgraph, popcount)


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num}/{den} is not an integer")
    return q


def _check_s(s: int):
    if s < 3:
        raise ValueError("s must be at least 3")


def cbc_graph(s: int) -> Graph:
    """The bipartite complement of the even cycle ``C_2s``."""
    _check_s(s)
    return bipartite_complement(cycle_graph(2 * s))


def first_row(s: int, j: int) -> int:
    """``beta_{j-2,j}``, counted by the number ``k`` of X-vertices and ``c`` of arcs."""
    _check_s(s)
    if j < 2 or j >= s:
        return 0
    total = 0
    for k in range(1, j):
        for c in range(1, k + 1):
            num = s * binom(k - 1, c - 1) * binom(s - k - 1, c - 1) * binom(s - k - c, j - k)
            total += _exact_div(num, c)
    return total


def count_subsets_by_components(s: int, j: int, m: int, a: int) -> int:
    """Proper ``j``-subsets of ``C_2s`` inducing ``a`` isolated vertices and ``m`` larger components."""
    _check_s(s)
    t = 2 * s
    if m < 1 or a < 0:
        raise ValueError("needs m >= 1 non-trivial components and a >= 0 isolated vertices")
    if j < 2 * m + a or j >= t:
        return 0
    num = t * binom(t - j - m, a) * binom(j - m - a - 1, m - 1) * binom(t - j - 1, m - 1)
    return _exact_div(num, m)


def second_row(s: int, j: int) -> int:
    """``beta_{j-3,j}``: each subset with ``m >= 2`` non-trivial components adds ``m - 1``."""
    _check_s(s)
    if j < 4 or j > 2 * s - 2:
        return 0
    total = 0
    for m in range(2, j // 2 + 1):
        for a in range(0, j - 2 * m + 1):
            total += (m - 1) * count_subsets_by_components(s, j, m, a)
    return total


def second_row_display(s: int, j: int) -> int:
    """The same number, arranged with the ``t (m-1)/m`` factor pulled out of the inner sum."""
    _check_s(s)
    t = 2 * s
    if j < 4 or j > t - 2:
        return 0
    total = 0
    for m in range(2, j // 2 + 1):
        inner = sum(binom(j - m - a - 1, m - 1) * binom(t - j - m, a) for a in range(0, j - 2 * m + 1))
        total += _exact_div(t * (m - 1) * binom(t - j - 1, m - 1) * inner, m)
    return total


def full_diagram_cbc(s: int, first=first_row, second=second_row) -> BettiDiagram:
    """Betti diagram of ``I(C_2s^bc)`` from the closed formulas alone."""
    _check_s(s)
    entries = {}
    for j in range(2, s):
        v = first(s, j)
        if v:
            entries[(j - 2, j)] = v
    for j in range(4, 2 * s - 1):
        v = second(s, j)
        if v:
            entries[(j - 3, j)] = v
    entries[(2 * s - 4, 2 * s)] = 1
    return BettiDiagram(dict(sorted(entries.items())), 2 * s)


# --- oracles and identities -----------------------------------------------------------

def brute_force_component_counts(s: int, j: int) -> dict[tuple[int, int], int]:
    """``(m, a) -> #`` proper ``j``-subsets of ``C_2s``, by direct enumeration."""
    c = cycle_graph(2 * s)
    out: dict[tuple[int, int], int] = {}
    for w in combinations(range(2 * s), j):
        comps = connected_components(induced_subgraph(c, w))
        a = sum(1 for comp in comps if len(comp) == 1)
        m = len(comps) - a
        out[(m, a)] = out.get((m, a), 0) + 1
    return out


def neighborhood_identity_check(s: int, w_x) -> bool:
    """``|N_{C_2s}(W_X)| = |W_X| + #components of C_X[W_X]``.

    ``C_X`` is the cycle ``x_1 x_2 ... x_s`` (consecutive X-vertices share a
    neighbour on ``C_2s``).  ``w_x`` lists X-vertices as indices ``0..s-1``.
    """
    _check_s(s)
    idx = sorted(set(w_x))
    if not idx or any(not 0 <= i < s for i in idx):
        raise ValueError("w_x must be a nonempty subset of range(s)")
    c = cycle_graph(2 * s)
    nbrs = 0
    for i in idx:
        nbrs |= c.adj[2 * i]
    cx = cycle_graph(s)
    comps = len(connected_components(induced_subgraph(cx, idx)))
    return popcount(nbrs) == len(idx) + comps


def classify_subset_homology(s: int, w) -> tuple[int, ...]:
    """Predicted trimmed ``dims`` of ``Delta(C_2s^bc[W])`` for a proper subset ``W``.

    Reads only ``W_X``, ``W_Y`` and ``k_W`` (non-singleton components of
    ``C_2s[W]``); no homology is computed.
    """
    _check_s(s)
    idx = sorted(set(w))
    if len(idx) >= 2 * s or any(not 0 <= v < 2 * s for v in idx):
        raise ValueError("w must be a proper subset of the 2s cycle vertices")
    has_x = any(v % 2 == 0 for v in idx)
    has_y = any(v % 2 == 1 for v in idx)
    if not (has_x and has_y):
        return ()
    comps = connected_components(induced_subgraph(cycle_graph(2 * s), idx))
    k = sum(1 for comp in comps if len(comp) > 1)
    if k == 0:
        return (1,)
    return (0, k - 1) if k > 1 else ()
