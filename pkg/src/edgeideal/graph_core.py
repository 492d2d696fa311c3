"""Simple graphs on indexed vertices, stored as bitset adjacency rows.

Vertex ``v`` of a graph on ``n`` vertices is the integer ``v`` in ``range(n)``;
a vertex set is an ``int`` whose bit ``v`` is set when ``v`` belongs to it.
All functions here are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import NotBipartiteError, NotConnectedError, SubsetOutOfRangeError

MAX_VERTICES = 10_000


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def to_mask(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, int):
        return vertices
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``adj[u]`` is the neighbourhood bitset of ``u``."""

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n > MAX_VERTICES:
            raise ValueError(f"graph has {self.n} vertices, cap is {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label count does not match vertex count")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {u} has a neighbour out of range")
            if (row >> u) & 1:
                raise ValueError(f"loop at vertex {u}")
            for v in iter_bits(row):
                if not (self.adj[v] >> u) & 1:
                    raise ValueError(f"adjacency not symmetric at {{{u},{v}}}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {{{u},{v}}} out of range for {n} vertices")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, u: int) -> list[int]:
        return list(iter_bits(self.adj[u]))

    def degree(self, u: int) -> int:
        return popcount(self.adj[u])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


# --- small constructors -------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(x, a + y) for x in range(a) for y in range(b)])


def matching_graph(m: int) -> Graph:
    """``mK_2``: vertices ``2k`` and ``2k+1`` joined for each ``k < m``."""
    return Graph.from_edges(2 * m, [(2 * k, 2 * k + 1) for k in range(m)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    adj = g.adj + tuple(row << shift for row in h.adj)
    labels = None
    if g.labels is not None or h.labels is not None:
        labels = tuple(g.label(v) for v in range(g.n)) + tuple(h.label(v) for v in range(h.n))
    return Graph(g.n + h.n, adj, labels)


# --- complements and induced subgraphs ---------------------------------------

def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << u) for u, row in enumerate(g.adj)), g.labels)


def induced_subgraph(g: Graph, w: Iterable[int] | int) -> Graph:
    """Subgraph induced on ``w``, relabelled ``0..|w|-1`` in increasing order."""
    mask = to_mask(w)
    if mask < 0 or mask & ~g.vertex_mask:
        raise SubsetOutOfRangeError(f"subset {sorted(iter_bits(mask))} not contained in V(G)")
    verts = list(iter_bits(mask))
    pos = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        row = 0
        for u in iter_bits(g.adj[v] & mask):
            row |= 1 << pos[u]
        adj.append(row)
    return Graph(len(verts), tuple(adj), tuple(g.label(v) for v in verts))


def connected_components(g: Graph, within: int | None = None) -> list[list[int]]:
    """Vertex sets of the connected components, ordered by smallest vertex."""
    remaining = g.vertex_mask if within is None else within
    comps = []
    while remaining:
        comp = _component_mask(g.adj, remaining & -remaining, remaining)
        comps.append(list(iter_bits(comp)))
        remaining &= ~comp
    return comps


def _component_mask(adj, seed: int, within: int) -> int:
    comp = frontier = seed
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & within & ~comp
        comp |= frontier
    return comp


def count_components(adj, within: int) -> int:
    count = 0
    while within:
        within &= ~_component_mask(adj, within & -within, within)
        count += 1
    return count


def count_nonisolated_components(g: Graph) -> int:
    """Number of components that are not isolated vertices."""
    return sum(1 for comp in connected_components(g) if len(comp) > 1)


def is_connected(g: Graph) -> bool:
    return g.n == 0 or count_components(g.adj, g.vertex_mask) == 1


# --- bipartite graphs ----------------------------------------------------------

@dataclass(frozen=True)
class BipartiteView:
    """A bipartition ``side_x`` / ``side_y`` of a bipartite graph."""

    parent: Graph
    side_x: tuple[int, ...]
    side_y: tuple[int, ...]

    def __post_init__(self):
        xs, ys = to_mask(self.side_x), to_mask(self.side_y)
        if xs & ys or (xs | ys) != self.parent.vertex_mask:
            raise ValueError("sides must partition the vertex set")
        for x in self.side_x:
            if self.parent.adj[x] & xs:
                raise NotBipartiteError(f"edge inside side X at vertex {x}")
        for y in self.side_y:
            if self.parent.adj[y] & ys:
                raise NotBipartiteError(f"edge inside side Y at vertex {y}")

    @property
    def x_mask(self) -> int:
        return to_mask(self.side_x)

    @property
    def y_mask(self) -> int:
        return to_mask(self.side_y)

    @property
    def biadjacency(self) -> list[list[int]]:
        adj = self.parent.adj
        return [[(adj[x] >> y) & 1 for y in self.side_y] for x in self.side_x]

    @classmethod
    def from_matrix(cls, matrix: list[list[int]]) -> BipartiteView:
        """Graph with rows ``x_1..x_n`` as vertices ``0..n-1`` and columns after them."""
        n = len(matrix)
        m = len(matrix[0]) if n else 0
        edges = []
        for i, row in enumerate(matrix):
            if len(row) != m:
                raise ValueError("ragged biadjacency matrix")
            for j, a in enumerate(row):
                if a not in (0, 1):
                    raise ValueError("biadjacency entries must be 0 or 1")
                if a:
                    edges.append((i, n + j))
        labels = [f"x{i + 1}" for i in range(n)] + [f"y{j + 1}" for j in range(m)]
        g = Graph.from_edges(n + m, edges, labels)
        return cls(g, tuple(range(n)), tuple(range(n, n + m)))


@dataclass(frozen=True)
class OddCycle:
    """Failure value of :func:`detect_bipartition`: an odd closed walk."""

    witness: tuple[int, ...]

    def __bool__(self):
        return False


def detect_bipartition(g: Graph) -> BipartiteView | OddCycle:
    """BFS 2-colouring; the smallest vertex of each component goes to side X."""
    color = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = [root]
        for u in queue:
            for v in iter_bits(g.adj[u]):
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    return OddCycle(_odd_walk(parent, u, v))
    xs = tuple(v for v in range(g.n) if color[v] == 0)
    ys = tuple(v for v in range(g.n) if color[v] == 1)
    return BipartiteView(g, xs, ys)


def _odd_walk(parent, u, v):
    # both BFS tree paths reach the root; splice them at their meeting point
    pu, pv = [u], [v]
    while parent[pu[-1]] >= 0:
        pu.append(parent[pu[-1]])
    while parent[pv[-1]] >= 0:
        pv.append(parent[pv[-1]])
    common = set(pu) & set(pv)
    while len(pu) > 1 and pu[-2] in common:
        pu.pop()
    while len(pv) > 1 and pv[-2] in common:
        pv.pop()
    return tuple(pu + pv[-2::-1])


def bipartite_complement(g: Graph, view: BipartiteView | None = None,
                         allow_disconnected: bool = False) -> Graph:
    """Swap presence and absence of every X-Y edge of ``g``.

    A disconnected ``g`` has several bipartitions; pass ``allow_disconnected``
    together with an explicit ``view`` to accept the one given.
    """
    if view is None:
        view = detect_bipartition(g)
        if not view:
            raise NotBipartiteError(witness=view.witness)
    elif view.parent != g:
        raise ValueError("view does not belong to this graph")
    if not allow_disconnected and not is_connected(g):
        raise NotConnectedError("bipartite complement of a disconnected graph is not well defined")
    xs, ys = view.x_mask, view.y_mask
    adj = [0] * g.n
    for x in view.side_x:
        adj[x] = ys & ~g.adj[x]
    for y in view.side_y:
        adj[y] = xs & ~g.adj[y]
    return Graph(g.n, tuple(adj), g.labels)


def bipartite_complement_masks(adj, xs: int, ys: int) -> list[int]:
    """Bipartite complement on raw bitsets, no connectivity check."""
    out = list(adj)
    for x in iter_bits(xs):
        out[x] = ys & ~adj[x]
    for y in iter_bits(ys):
        out[y] = xs & ~adj[y]
    return out


# --- chordality and induced cycles --------------------------------------------

def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic BFS by partition refinement; ties broken by smallest vertex."""
    parts = [g.vertex_mask] if g.n else []
    order = []
    while parts:
        head = parts[0]
        v = (head & -head).bit_length() - 1
        order.append(v)
        refined = []
        for part in parts:
            part &= ~(1 << v)
            inside, outside = part & g.adj[v], part & ~g.adj[v]
            if inside:
                refined.append(inside)
            if outside:
                refined.append(outside)
        parts = refined
    return order


def is_chordal(g: Graph) -> bool:
    """True iff the reverse LexBFS order is a perfect elimination ordering."""
    order = lex_bfs(g)
    visited = 0
    rank = {}
    for i, v in enumerate(order):
        before = g.adj[v] & visited
        if before:
            u = max(iter_bits(before), key=rank.__getitem__)
            if before & ~(1 << u) & ~g.adj[u]:
                return False
        visited |= 1 << v
        rank[v] = i
    return True


def iter_induced_cycles(adj, t: int, within: int) -> Iterator[int]:
    """Vertex masks ``W`` with ``|W| = t`` inducing a cycle, each yielded once."""
    if t < 4:
        raise ValueError("induced cycles have length at least 4")
    for v0 in iter_bits(within):
        higher = within & ~((2 << v0) - 1)
        n0 = adj[v0]
        for p1 in iter_bits(n0 & higher):
            inside = (1 << v0) | (1 << p1)
            yield from _extend_path(adj, t, higher, n0, p1, p1, 2, inside, inside)


def _extend_path(adj, t, higher, n0, p1, last, length, inside, forbid):
    cand = adj[last] & higher & ~forbid
    if length + 1 == t:
        # closing vertex: back to v0, oriented so the cycle is reported once
        for u in iter_bits(cand & n0):
            if u > p1:
                yield inside | (1 << u)
        return
    forbid_next = forbid | adj[last]
    for u in iter_bits(cand & ~n0):
        bit = 1 << u
        yield from _extend_path(adj, t, higher, n0, p1, u, length + 1,
                                inside | bit, forbid_next | bit)


def min_induced_cycle(g: Graph, min_len: int = 4) -> int | None:
    """Smallest ``t >= min_len`` such that ``g`` has an induced ``C_t``."""
    if min_len < 4:
        raise ValueError("min_len must be at least 4")
    for t in range(min_len, g.n + 1):
        for _ in iter_induced_cycles(g.adj, t, g.vertex_mask):
            return t
    return None


def induced_cycles(g: Graph, t: int) -> list[tuple[int, ...]]:
    return [tuple(iter_bits(w)) for w in iter_induced_cycles(g.adj, t, g.vertex_mask)]


def count_induced_cycles(g: Graph, t: int) -> int:
    return sum(1 for _ in iter_induced_cycles(g.adj, t, g.vertex_mask))


def is_cycle_subset(adj, w: int) -> bool:
    """Degree-2, connected, ``|w| >= 4`` test on the subgraph induced by ``w``."""
    if popcount(w) < 4:
        return False
    for v in iter_bits(w):
        if popcount(adj[v] & w) != 2:
            return False
    return _component_mask(adj, w & -w, w) == w


# --- induced matchings ----------------------------------------------------------

def induced_matching_number(g: Graph) -> int:
    """Largest number of pairwise totally disjoint edges (branch and bound)."""
    edges = g.edges()
    closed = [g.adj[u] | g.adj[v] | (1 << u) | (1 << v) for u, v in edges]
    # conflict[i]: edges touching the closed neighbourhood of edge i
    conflict = []
    for i, (u, v) in enumerate(edges):
        mask = 0
        for k, (a, b) in enumerate(edges):
            if (closed[i] >> a) & 1 or (closed[i] >> b) & 1:
                mask |= 1 << k
        conflict.append(mask)
    best = 0

    def search(cand: int, size: int):
        nonlocal best
        if size + popcount(cand) <= best:
            return
        if not cand:
            best = size
            return
        e = (cand & -cand).bit_length() - 1
        search(cand & ~conflict[e], size + 1)
        search(cand & ~(1 << e), size)

    search((1 << len(edges)) - 1, 0)
    return best
