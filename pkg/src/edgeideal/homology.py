"""Reduced homology of independence complexes over a prime field.

The faces of the independence complex of ``G[W]`` are the independent subsets
of ``W``.  :func:`reduced_homology` builds the full reduced chain complex and
takes ranks; :func:`reduce_biadjacency` implements the vertex-deletion rules
for bipartite graphs, read off the biadjacency matrix, which
:func:`homology_with_reductions` uses to shrink the complex first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, EmptySubsetError, FaceLimitExceededError, NotBipartiteError
from .graph_core import Graph, detect_bipartition, induced_subgraph, iter_bits, popcount, to_mask
from .linalg import check_prime, rank_gf2, rank_mod_p

FACE_LIMIT = 1 << 22

# rule 1 (zero line) first, rule 2 (isolated 1, degree shift) last
DEFAULT_RULE_ORDER = (1, 3, 4, 5, 2)


@dataclass(frozen=True)
class IndependenceComplexView:
    """Independence complex of ``parent`` restricted to ``subset``."""

    parent: Graph
    subset: int

    @classmethod
    def of(cls, g: Graph, subset=None) -> IndependenceComplexView:
        return cls(g, g.vertex_mask if subset is None else to_mask(subset))


@dataclass(frozen=True)
class HomologyVector:
    """``dims[i]`` is the dimension of the ``i``-th reduced homology group."""

    dims: tuple[int, ...]
    field_char: int = 2

    def __post_init__(self):
        dims = tuple(self.dims)
        while dims and dims[-1] == 0:
            dims = dims[:-1]
        object.__setattr__(self, "dims", dims)

    def __getitem__(self, i: int) -> int:
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def is_zero(self) -> bool:
        return not self.dims

    def euler(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))


# --- chain complex ---------------------------------------------------------------

def _enumerate_faces(adj, w: int, face_limit: int) -> list[list[int]]:
    """Nonempty independent subsets of ``w``, grouped by size (level k = size k+1)."""
    level = []
    for v in iter_bits(w):
        level.append((1 << v, w & ~((2 << v) - 1) & ~adj[v]))
    levels = []
    total = 1 + len(level)
    while level:
        levels.append([face for face, _ in level])
        nxt = []
        for face, cand in level:
            c = cand
            while c:
                low = c & -c
                nxt.append((face | low, c & ~low & ~adj[low.bit_length() - 1]))
                c ^= low
        total += len(nxt)
        if total > face_limit:
            raise FaceLimitExceededError(
                f"complex on {sorted(iter_bits(w))} has more than {face_limit} faces", subset=w)
        level = nxt
    return levels


def _boundary_rank(lower: list[int], upper: list[int], p: int) -> int:
    index = {face: i for i, face in enumerate(lower)}
    if p == 2:
        cols = []
        for face in upper:
            col = 0
            f = face
            while f:
                low = f & -f
                col |= 1 << index[face ^ low]
                f ^= low
            cols.append(col)
        return rank_gf2(cols)
    mat = np.zeros((len(lower), len(upper)), dtype=np.int64)
    for j, face in enumerate(upper):
        f = face
        pos = 0
        while f:
            low = f & -f
            mat[index[face ^ low], j] = 1 if pos % 2 == 0 else p - 1
            pos += 1
            f ^= low
    return rank_mod_p(mat, p)


def _chain_dims(adj, w: int, p: int, face_limit: int = FACE_LIMIT):
    """Reduced Betti numbers of the independence complex on ``w`` (``w`` nonempty)."""
    levels = _enumerate_faces(adj, w, face_limit)
    counts = [len(level) for level in levels]
    ranks = [1]  # augmentation map onto the empty face
    for k in range(1, len(levels)):
        ranks.append(_boundary_rank(levels[k - 1], levels[k], p))
    ranks.append(0)
    dims = [counts[k] - ranks[k] - ranks[k + 1] for k in range(len(levels))]
    return dims, counts


def complement_components(adj, w: int) -> int:
    """Connected components of the complement of ``G[W]`` (the 1-skeleton)."""
    count = 0
    remaining = w
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= w & ~adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        remaining &= ~comp
        count += 1
    return count


def reduced_homology(view: IndependenceComplexView, p: int = 2,
                     face_limit: int = FACE_LIMIT) -> HomologyVector:
    """Reduced homology from boundary-matrix ranks of the full chain complex."""
    check_prime(p)
    w = view.subset
    if not w:
        raise EmptySubsetError("reduced homology needs a nonempty vertex subset")
    adj = view.parent.adj
    dims, counts = _chain_dims(adj, w, p, face_limit)
    if dims[0] != complement_components(adj, w) - 1:
        raise ConsistencyError(f"H~_0 rank count disagrees with 1-skeleton components on {sorted(iter_bits(w))}")
    euler = sum((-1) ** k * f for k, f in enumerate(counts)) - 1
    if sum((-1) ** k * d for k, d in enumerate(dims)) != euler:
        raise ConsistencyError(f"Euler characteristic mismatch on {sorted(iter_bits(w))}")
    return HomologyVector(tuple(dims), p)


def reduced_euler_characteristic(adj, w: int) -> int:
    """Signed face count ``sum (-1)^dim`` including the empty face.

    Uses the independence-polynomial recursion ``I(G) = I(G - v) - I(G - N[v])``
    at ``x = -1``, so it never touches the boundary matrices.
    """
    memo: dict[int, int] = {}

    def ind(mask: int) -> int:
        if not mask:
            return 1
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        v = low.bit_length() - 1
        val = ind(mask ^ low) - ind(mask & ~low & ~adj[v])
        memo[mask] = val
        return val

    return -ind(w)


# --- biadjacency reductions ------------------------------------------------------

@dataclass
class ReductionOutcome:
    """Fixed point of the reduction rules.

    When ``acyclic`` is false, ``matrix`` is the residual biadjacency matrix on
    the surviving rows ``row_ids`` and columns ``col_ids`` and, for
    ``i >= degree_shift``, ``H~_i`` of the input equals ``H~_{i - degree_shift}``
    of the residual; all lower degrees vanish.
    """

    acyclic: bool
    matrix: list[list[int]] = field(default_factory=list)
    row_ids: list[int] = field(default_factory=list)
    col_ids: list[int] = field(default_factory=list)
    degree_shift: int = 0
    removed: list[tuple[str, int, int]] = field(default_factory=list)


def _column_masks(rows: dict[int, int], cols: int) -> dict[int, int]:
    out = {}
    for c in iter_bits(cols):
        bit = 1 << c
        m = 0
        for r, row in rows.items():
            if row & bit:
                m |= 1 << r
        out[c] = m
    return out


def _single_bit(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def _apply_rule(rule: int, rows: dict[int, int], cols: int):
    """Try one application of ``rule``; returns an action tuple or None."""
    if rule == 1:
        union = 0
        for r, row in rows.items():
            if not row:
                return ("acyclic", "x", r)
            union |= row
        if union != cols:
            return ("acyclic", "y", (cols & ~union).bit_length() - 1)
        return None
    if rule == 3:
        if len(rows) > 1:
            for r, row in rows.items():
                if row == cols:
                    return ("del", "x", r)
        if popcount(cols) > 1:
            full = cols
            for row in rows.values():
                full &= row
            if full:
                return ("del", "y", (full & -full).bit_length() - 1)
        return None
    colmask = _column_masks(rows, cols)
    row_set = to_mask(rows)
    if rule == 4:
        for r, row in rows.items():
            zeros = cols & ~row
            if _single_bit(zeros):
                c = zeros.bit_length() - 1
                if row_set & ~colmask[c] & ~(1 << r):
                    return ("del", "x", r)
        for c, cm in colmask.items():
            zeros = row_set & ~cm
            if _single_bit(zeros):
                r = zeros.bit_length() - 1
                if cols & ~rows[r] & ~(1 << c):
                    return ("del", "y", c)
        return None
    if rule == 5:
        # zeros(r) within zeros(r') means N(x_r') within N(x_r): drop x_r
        for r, row in rows.items():
            for r2, row2 in rows.items():
                if r2 != r and row2 & ~row == 0:
                    return ("del", "x", r)
        for c, cm in colmask.items():
            for c2, cm2 in colmask.items():
                if c2 != c and cm2 & ~cm == 0:
                    return ("del", "y", c)
        return None
    if rule == 2:
        if len(rows) == 1 and popcount(cols) == 1:
            return None  # K_2 itself: stop at the Sigma_1 base
        for r, row in rows.items():
            if _single_bit(row):
                c = row.bit_length() - 1
                if colmask[c] == 1 << r:
                    return ("pair", r, c)
        return None
    raise ValueError(f"unknown reduction rule {rule}")


def _reduce(rows: dict[int, int], cols: int, order=DEFAULT_RULE_ORDER, log=None):
    """Core loop on row bitsets; returns ``(acyclic, rows, cols, shift)``."""
    rows = dict(rows)
    shift = 0
    while True:
        for rule in order:
            action = _apply_rule(rule, rows, cols)
            if action is not None:
                break
        else:
            return False, rows, cols, shift
        kind = action[0]
        if kind == "acyclic":
            if log is not None:
                log.append((action[1], action[2], 1))
            return True, rows, cols, shift
        if kind == "del":
            _, side, idx = action
            if side == "x":
                del rows[idx]
            else:
                cols &= ~(1 << idx)
                mask = ~(1 << idx)
                for r in rows:
                    rows[r] &= mask
            if log is not None:
                log.append((side, idx, rule))
        else:
            _, r, c = action
            del rows[r]
            cols &= ~(1 << c)
            shift += 1
            if log is not None:
                log.append(("x", r, 2))
                log.append(("y", c, 2))


def reduce_biadjacency(matrix: Sequence[Sequence[int]], order=DEFAULT_RULE_ORDER) -> ReductionOutcome:
    """Apply the reduction rules to a 0/1 biadjacency matrix until none fires."""
    if not matrix or not matrix[0]:
        raise ValueError("biadjacency matrix must be nonempty")
    n_cols = len(matrix[0])
    rows = {}
    for i, row in enumerate(matrix):
        if len(row) != n_cols:
            raise ValueError("ragged biadjacency matrix")
        rows[i] = sum(1 << j for j, a in enumerate(row) if a)
    log: list = []
    acyclic, rows, cols, shift = _reduce(rows, (1 << n_cols) - 1, order, log)
    removed = [(f"{side}{idx + 1}", idx, rule) for side, idx, rule in log]
    if acyclic:
        return ReductionOutcome(True, degree_shift=shift, removed=removed)
    col_ids = list(iter_bits(cols))
    row_ids = sorted(rows)
    residual = [[(rows[r] >> c) & 1 for c in col_ids] for r in row_ids]
    return ReductionOutcome(False, residual, row_ids, col_ids, shift, removed)


# --- bipartite fast path ---------------------------------------------------------

class ResidualCache:
    """Homology of residual biadjacency matrices, keyed by the exact matrix."""

    def __init__(self):
        self._store: dict = {}

    def dims(self, rows: dict[int, int], cols: int, p: int, face_limit: int) -> tuple[int, ...]:
        col_list = list(iter_bits(cols))
        packed = []
        for r in sorted(rows):
            row = rows[r]
            packed.append(sum(1 << k for k, c in enumerate(col_list) if (row >> c) & 1))
        key = (p, len(col_list), tuple(packed))
        hit = self._store.get(key)
        if hit is None:
            hit = _residual_dims(packed, len(col_list), p, face_limit)
            self._store[key] = hit
        return hit

    def __len__(self):
        return len(self._store)


def _residual_dims(packed: list[int], m: int, p: int, face_limit: int) -> tuple[int, ...]:
    n = len(packed)
    if n == 1 and m == 1:
        return (1,)
    adj = [row << n for row in packed] + [0] * m
    for x, row in enumerate(packed):
        for k in iter_bits(row):
            adj[n + k] |= 1 << x
    dims, _ = _chain_dims(adj, (1 << (n + m)) - 1, p, face_limit)
    return tuple(dims)


def bipartite_dims(adj, xs: int, ys: int, w: int, p: int = 2, cache: ResidualCache | None = None,
                   face_limit: int = FACE_LIMIT, order=DEFAULT_RULE_ORDER) -> tuple[int, ...]:
    """Reduced Betti numbers of the independence complex of ``G[W]``, ``G`` bipartite.

    ``xs``/``ys`` are the sides of a bipartition of ``G`` (restricted to ``W``
    they bipartition ``G[W]``).  ``H~_0`` comes from counting components of the
    1-skeleton; higher degrees from the reductions plus a residual computation.
    """
    wx, wy = w & xs, w & ys
    if not wx or not wy:
        return ()  # W independent: the complex is a simplex
    rows = {x: adj[x] & wy for x in iter_bits(wx)}
    acyclic, rows, cols, shift = _reduce(rows, wy, order)
    h0 = complement_components(adj, w) - 1
    if acyclic:
        if h0:
            raise ConsistencyError(f"acyclic reduction but H~_0 = {h0} on {sorted(iter_bits(w))}")
        return ()
    if cache is None:
        residual = _residual_dims(_pack(rows, cols), popcount(cols), p, face_limit)
    else:
        residual = cache.dims(rows, cols, p, face_limit)
    dims = [0] * shift + list(residual)
    if (dims[0] if dims else 0) != h0:
        raise ConsistencyError(f"H~_0 = {h0} from components, reductions say {dims[:1]}")
    while dims and dims[-1] == 0:
        dims.pop()
    return tuple(dims)


def _pack(rows, cols):
    col_list = list(iter_bits(cols))
    return [sum(1 << k for k, c in enumerate(col_list) if (rows[r] >> c) & 1) for r in sorted(rows)]


def homology_with_reductions(view: IndependenceComplexView, p: int = 2, bipartition=None,
                             face_limit: int = FACE_LIMIT, check_euler: bool = True,
                             order=DEFAULT_RULE_ORDER) -> HomologyVector:
    """Same answer as :func:`reduced_homology`, via the biadjacency reductions.

    ``bipartition`` is an ``(X, Y)`` pair of vertex collections covering the
    subset; when omitted it is detected from the induced subgraph.
    """
    check_prime(p)
    g, w = view.parent, view.subset
    if not w:
        raise EmptySubsetError("reduced homology needs a nonempty vertex subset")
    if bipartition is None:
        sides = detect_bipartition(g)
        if not sides:
            # only the induced subgraph has to be bipartite
            sub = induced_subgraph(g, w)
            local = detect_bipartition(sub)
            if not local:
                raise NotBipartiteError(witness=local.witness)
            verts = list(iter_bits(w))
            xs = to_mask(verts[i] for i in local.side_x)
            ys = to_mask(verts[i] for i in local.side_y)
        else:
            xs, ys = sides.x_mask, sides.y_mask
    else:
        xs, ys = to_mask(bipartition[0]), to_mask(bipartition[1])
        for x in iter_bits(xs & w):
            if g.adj[x] & xs & w:
                raise NotBipartiteError(f"edge inside the X side at vertex {x}")
        for y in iter_bits(ys & w):
            if g.adj[y] & ys & w:
                raise NotBipartiteError(f"edge inside the Y side at vertex {y}")
        if w & ~(xs | ys):
            raise ValueError("bipartition does not cover the subset")
    dims = bipartite_dims(g.adj, xs, ys, w, p, None, face_limit, order)
    hv = HomologyVector(dims, p)
    if check_euler and hv.euler() != reduced_euler_characteristic(g.adj, w):
        raise ConsistencyError(f"Euler characteristic mismatch on {sorted(iter_bits(w))}")
    return hv


def is_acyclic_fast(adj, w: int) -> bool:
    """Cheap sufficient test for acyclicity: some vertex of ``G[W]`` is isolated (a cone)."""
    for v in iter_bits(w):
        if not adj[v] & w:
            return True
    return False
