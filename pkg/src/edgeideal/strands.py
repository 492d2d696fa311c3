"""Combinatorial decision procedures for where the first nonlinear strand starts.

None of these touch homology: they read induced cycles off the complement
and the bipartite complement.  ``tests/`` checks every one of them against
the Hochster engine in :mod:`edgeideal.betti`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import EmptyIdealError, NotBipartiteError, NotConnectedError, PreconditionViolatedError
from .graph_core import (Graph, bipartite_complement, complement, detect_bipartition, is_chordal,
                         is_connected, iter_bits, iter_induced_cycles, min_induced_cycle)

WITNESS_CAP = 64

LINEAR = "linear"        # reg = 2
REG3 = "reg3"            # reg = 3 (connected bipartite)
NONLINEAR = "nonlinear"  # reg > 2, strand starts at i = t - 3
HIGHER = "higher"        # reg > 3 (connected bipartite), strand starts at i = t - 4


@dataclass
class StrandReport:
    regularity_class: str
    t: int | None = None
    first_nonlinear_i: int | None = None
    strand_degree: int | None = None
    strand_count: int | None = None
    witnesses: list[tuple[int, ...]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "class": self.regularity_class,
            "t": self.t,
            "i": self.first_nonlinear_i,
            "count": self.strand_count,
            # file formats are 1-based
            "witnesses": [[v + 1 for v in w] for w in self.witnesses],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self) -> str:
        if self.regularity_class == LINEAR:
            return "reg=2"
        if self.regularity_class == REG3:
            return "reg=3"
        return (f"first nonlinear strand at i={self.first_nonlinear_i}, "
                f"degree {self.strand_degree}, count {self.strand_count}")


def _require_edges(g: Graph):
    if g.num_edges == 0:
        raise EmptyIdealError("graph has no edges, so its edge ideal is zero")


def _require_connected_bipartite(g: Graph):
    view = detect_bipartition(g)
    if not view:
        raise NotBipartiteError(witness=view.witness)
    if not is_connected(g):
        raise NotConnectedError("the bipartite theorems need a connected graph")
    return view


def froberg_linear(g: Graph) -> bool:
    """True iff ``I(g)`` has a linear resolution: the complement is chordal."""
    _require_edges(g)
    return is_chordal(complement(g))


def _cycle_report(h: Graph, t: int, offset: int, cls: str, cap: int) -> StrandReport:
    count = 0
    witnesses = []
    for w in iter_induced_cycles(h.adj, t, h.vertex_mask):
        count += 1
        if len(witnesses) < cap:
            witnesses.append(tuple(iter_bits(w)))
    return StrandReport(cls, t, t - offset, t, count, witnesses)


def first_nonlinear_general(g: Graph, witness_cap: int = WITNESS_CAP) -> StrandReport:
    """Onset ``i = t - 3`` of the nonlinear strand, ``t`` the shortest hole of the complement."""
    _require_edges(g)
    t = min_induced_cycle(complement(g), 4)
    if t is None:
        raise PreconditionViolatedError("complement of G is chordal: I(G) has a linear resolution")
    return _cycle_report(complement(g), t, 3, NONLINEAR, witness_cap)


def reg3_bipartite(g: Graph) -> bool:
    """Regularity exactly 3, for ``g`` connected bipartite.

    Needs an induced cycle in the complement and no induced cycle of length
    at least 6 in the bipartite complement.
    """
    _require_edges(g)
    view = _require_connected_bipartite(g)
    if min_induced_cycle(complement(g), 4) is None:
        return False
    return min_induced_cycle(bipartite_complement(g, view), 6) is None


def first_nonlinear_bipartite(g: Graph, witness_cap: int = WITNESS_CAP) -> StrandReport:
    """Onset ``i = t - 4`` of the strand beyond row 3, ``t`` the shortest long hole of ``G^bc``."""
    _require_edges(g)
    view = _require_connected_bipartite(g)
    if min_induced_cycle(complement(g), 4) is None:
        raise PreconditionViolatedError("complement of G has no induced cycle: reg(I(G)) = 2")
    bc = bipartite_complement(g, view)
    t = min_induced_cycle(bc, 6)
    if t is None:
        raise PreconditionViolatedError("G^bc has no induced cycle of length >= 6: reg(I(G)) = 3")
    return _cycle_report(bc, t, 4, HIGHER, witness_cap)


def strand_report(g: Graph, witness_cap: int = WITNESS_CAP) -> StrandReport:
    """Pick the sharpest applicable statement for ``g``."""
    if froberg_linear(g):
        return StrandReport(LINEAR)
    view = detect_bipartition(g)
    if view and is_connected(g):
        if reg3_bipartite(g):
            return StrandReport(REG3)
        return first_nonlinear_bipartite(g, witness_cap)
    return first_nonlinear_general(g, witness_cap)


def report_matches_diagram(report: StrandReport, d) -> list[str]:
    """Discrepancies between a report and a computed Betti diagram (empty list: consistent)."""
    problems = []
    entries = d.entries
    reg = max(j - i for i, j in entries) if entries else None
    if report.regularity_class == LINEAR:
        if reg != 2:
            problems.append(f"reported reg=2, diagram has reg={reg}")
        return problems
    if report.regularity_class == REG3:
        if reg != 3:
            problems.append(f"reported reg=3, diagram has reg={reg}")
        return problems
    offset = 3 if report.regularity_class == NONLINEAR else 4
    row = offset - 1  # entries with j > i + row lie past the strands the theorem allows early
    t, i0 = report.t, report.first_nonlinear_i
    for (i, j), v in entries.items():
        if i < i0 and j > i + row:
            problems.append(f"beta_{i},{j} = {v} before the predicted onset i={i0}")
        if i == i0 and j > t:
            problems.append(f"beta_{i},{j} = {v} above degree {t}")
    if entries.get((i0, t), 0) != report.strand_count:
        problems.append(f"beta_{i0},{t} = {entries.get((i0, t), 0)}, predicted {report.strand_count}")
    return problems
