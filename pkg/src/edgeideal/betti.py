"""Graded and multigraded Betti numbers of edge ideals via Hochster's formula.

``beta_{i,W}(I(G)) = dim H~_{|W|-i-2}(Ind(G[W]))`` for squarefree multidegrees
``W``; the graded numbers ``beta_{i,j}`` sum these over all ``|W| = j``.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyIdealError, TooManyVerticesError
from .graph_core import Graph, detect_bipartition, iter_bits, popcount, to_mask
from .homology import (FACE_LIMIT, IndependenceComplexView, ResidualCache, _chain_dims,
                       bipartite_dims, homology_with_reductions, is_acyclic_fast, reduced_homology)
from .linalg import check_prime

DEFAULT_MAX_VERTICES = 22
BITSET_LIMIT = 64
_CHUNK = 1 << 15

# callables invoked with every diagram the engine emits
_observers: list = []


def add_observer(fn) -> None:
    _observers.append(fn)


def remove_observer(fn) -> None:
    if fn in _observers:
        _observers.remove(fn)


@dataclass
class BettiDiagram:
    """Sparse ``(i, j) -> beta_{i,j}``; zero entries are never stored."""

    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    n_vertices: int = 0
    field_char: int = 2

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}
        for (i, j), v in self.entries.items():
            if v < 0 or j < i + 2:
                raise ValueError(f"invalid Betti entry beta_{i},{j} = {v}")

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other):
        if not isinstance(other, BettiDiagram):
            return NotImplemented
        return self.entries == other.entries

    def __bool__(self):
        return bool(self.entries)

    @property
    def columns(self) -> list[int]:
        return sorted({i for i, _ in self.entries})

    def regularity(self) -> int:
        return regularity(self)

    def max_degree(self, i: int) -> int | None:
        js = [j for (a, j) in self.entries if a == i]
        return max(js) if js else None

    def min_degree(self, i: int) -> int | None:
        js = [j for (a, j) in self.entries if a == i]
        return min(js) if js else None

    def to_dict(self) -> dict:
        out = {
            "field": self.field_char,
            "entries": [{"i": i, "j": j, "value": v} for (i, j), v in sorted(self.entries.items())],
        }
        out["regularity"] = regularity(self) if self.entries else None
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> BettiDiagram:
        entries = {(e["i"], e["j"]): e["value"] for e in data["entries"]}
        return cls(entries, field_char=data.get("field", 2))

    def render(self) -> str:
        """Table with columns ``i`` and rows ``j - i``; zeros shown as ``.``."""
        if not self.entries:
            return "0"
        cols = range(max(self.columns) + 1)
        rows = range(min(j - i for i, j in self.entries), regularity(self) + 1)
        cells = [[str(self.entries.get((i, i + r), ".")) for i in cols] for r in rows]
        totals = [str(sum(v for (a, _), v in self.entries.items() if a == i)) for i in cols]
        width = max(len(c) for c in [str(i) for i in cols] + totals + [x for row in cells for x in row])
        labels = ["", "total:"] + [f"{r}:" for r in rows]
        lw = max(len(s) for s in labels)
        lines = [" " * lw + " " + " ".join(str(i).rjust(width) for i in cols)]
        lines.append("total:".rjust(lw) + " " + " ".join(t.rjust(width) for t in totals))
        for r, row in zip(rows, cells):
            lines.append(f"{r}:".rjust(lw) + " " + " ".join(x.rjust(width) for x in row))
        return "\n".join(lines)


@dataclass(frozen=True)
class MultigradedEntry:
    i: int
    support: tuple[int, ...]
    count: int


def regularity(d: BettiDiagram) -> int:
    if not d.entries:
        raise EmptyIdealError("the zero ideal has no regularity")
    return max(j - i for i, j in d.entries)


def check_propagation(d: BettiDiagram) -> bool:
    """``beta_{i,j} = beta_{i,j+1} = 0`` must force ``beta_{i+1,j+2} = 0`` (j >= i+2)."""
    for (a, b) in d.entries:
        i, j = a - 1, b - 2
        if i >= 0 and j >= i + 2:
            if (i, j) not in d.entries and (i, j + 1) not in d.entries:
                return False
    return True


def strand_extrema(d: BettiDiagram) -> list[tuple[int, int, int]]:
    """``(i, l_i, u_i)`` for every homological index present."""
    return [(i, d.min_degree(i), d.max_degree(i)) for i in d.columns]


def strand_bounds_hold(d: BettiDiagram) -> bool:
    """``u_{i+1} <= u_i + 2`` and ``l_i >= l_0 + i``."""
    ext = strand_extrema(d)
    if not ext:
        return True
    by_i = {i: (lo, hi) for i, lo, hi in ext}
    l0 = by_i.get(0, (None, None))[0]
    for i, (lo, hi) in by_i.items():
        if l0 is not None and lo < l0 + i:
            return False
        nxt = by_i.get(i + 1)
        if nxt is not None and nxt[1] > hi + 2:
            return False
    return True


# --- multigraded numbers -------------------------------------------------------------

def multigraded_betti(g: Graph, w, p: int = 2, use_reductions: bool = True,
                      face_limit: int = FACE_LIMIT) -> list[tuple[int, int]]:
    """``[(i, beta_{i,W})]`` for the squarefree multidegree supported on ``w``."""
    mask = to_mask(w)
    size = popcount(mask)
    if size < 2:
        raise ValueError("multidegree support must have at least two vertices")
    view = IndependenceComplexView(g, mask)
    hv = None
    if use_reductions:
        sides = detect_bipartition(g)
        if sides:
            hv = homology_with_reductions(view, p, (sides.side_x, sides.side_y), face_limit)
    if hv is None:
        hv = reduced_homology(view, p, face_limit)
    return sorted((size - k - 2, d) for k, d in enumerate(hv.dims) if d)


# --- graded sweep ------------------------------------------------------------------------

def _survivors(adj, n: int, lo: int, hi: int, prefilter: bool):
    """Masks in ``[lo, hi)`` with at least two vertices (and no isolated vertex)."""
    if not prefilter:
        return [w for w in range(lo, hi) if w & (w - 1)]
    masks = np.arange(lo, hi, dtype=np.uint64)
    keep = (masks & (masks - np.uint64(1))) != 0
    for v in range(n):
        inside = (masks >> np.uint64(v)) & np.uint64(1)
        isolated = (inside == 1) & ((masks & np.uint64(adj[v])) == 0)
        keep &= ~isolated
    return masks[keep].tolist()


def _sweep_chunk(args):
    adj, n, xs, ys, p, lo, hi, use_reductions, face_limit, multigraded = args
    bipartite = xs is not None
    cache = ResidualCache() if bipartite else None
    prefilter = use_reductions and n > 10
    acc: Counter = Counter()
    multi = []
    for w in _survivors(adj, n, lo, hi, prefilter):
        if bipartite:
            dims = bipartite_dims(adj, xs, ys, w, p, cache, face_limit)
        else:
            if use_reductions and is_acyclic_fast(adj, w):
                continue
            dims = _chain_dims(adj, w, p, face_limit)[0]
        if not dims:
            continue
        size = popcount(w)
        for k, d in enumerate(dims):
            if d:
                acc[(size - k - 2, size)] += d
                if multigraded:
                    multi.append((size - k - 2, w, d))
    return acc, multi


def _plan(g: Graph, p: int, max_vertices: int | None, use_reductions: bool, face_limit: int,
          multigraded: bool):
    check_prime(p)
    limit = DEFAULT_MAX_VERTICES if max_vertices is None else max_vertices
    if g.n > min(limit, BITSET_LIMIT):
        raise TooManyVerticesError(f"graph has {g.n} vertices; engine cap is {min(limit, BITSET_LIMIT)}")
    xs = ys = None
    if use_reductions:
        sides = detect_bipartition(g)
        if sides:
            xs, ys = sides.x_mask, sides.y_mask
    total = 1 << g.n
    step = max(_CHUNK, total // 64) if total > _CHUNK else total
    return [(g.adj, g.n, xs, ys, p, lo, min(lo + step, total), use_reductions, face_limit, multigraded)
            for lo in range(0, total, step)]


def _run(tasks, workers: int | None):
    workers = resolve_workers(workers)
    if workers == 1 or len(tasks) == 1:
        return [_sweep_chunk(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_chunk, tasks))


def resolve_workers(workers: int | None) -> int:
    if workers is None or workers <= 0:
        return os.cpu_count() or 1
    return workers


def betti_diagram(g: Graph, p: int = 2, max_vertices: int | None = None, workers: int | None = 1,
                  use_reductions: bool = True, face_limit: int = FACE_LIMIT) -> BettiDiagram:
    """Full graded Betti diagram of ``I(g)`` by a sweep over all vertex subsets.

    Bipartite inputs go through the biadjacency reductions; other graphs only
    skip subsets with an isolated vertex (the complex is then a cone).  With
    ``use_reductions=False`` every subset is sent to the chain-complex rank
    computation.  The result does not depend on ``workers``.
    """
    tasks = _plan(g, p, max_vertices, use_reductions, face_limit, False)
    total: Counter = Counter()
    for acc, _ in _run(tasks, workers):
        total.update(acc)
    d = BettiDiagram(dict(sorted(total.items())), g.n, p)
    for fn in _observers:
        fn(d, g)
    return d


def multigraded_diagram(g: Graph, p: int = 2, max_vertices: int | None = None, workers: int | None = 1,
                        use_reductions: bool = True, face_limit: int = FACE_LIMIT) -> list[MultigradedEntry]:
    """Every nonzero ``beta_{i,W}``, ordered by ``(i, |W|, W)``."""
    tasks = _plan(g, p, max_vertices, use_reductions, face_limit, True)
    out = []
    for _, multi in _run(tasks, workers):
        out.extend(multi)
    out.sort(key=lambda e: (e[0], popcount(e[1]), e[1]))
    return [MultigradedEntry(i, tuple(iter_bits(w)), d) for i, w, d in out]
