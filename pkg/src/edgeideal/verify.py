"""Cross-validation suites: closed formulas and combinatorial criteria against the engine.

Every suite is a list of independent jobs.  Jobs run in a process pool when
``threads > 1`` and their results are merged in job order, so the JSON
report does not depend on the thread count.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from . import cycle_formulas as cf
from .betti import (BettiDiagram, betti_diagram, check_propagation, multigraded_betti,
                    resolve_workers, strand_bounds_hold)
from .corpus import (DEFAULT_SEED, atlas_graphs, connected_bipartite_graphs, ideal_corpus,
                     random_bipartite_corpus, random_ideal_corpus)
from .graph_core import Graph, bipartite_complement, count_induced_cycles
from .homology import IndependenceComplexView, reduced_homology
from .polarization import (QuadraticIdeal, betti_nonsquarefree, polarize, reg3_nonsquarefree,
                           totally_disjoint_triples)
from .strands import (first_nonlinear_general, froberg_linear, reg3_bipartite,
                      report_matches_diagram, strand_report)

FAULTS = ("first_row", "second_row")


@dataclass(frozen=True)
class Scale:
    s_max: int
    bipartite_max_n: int
    random_count: int
    random_n: tuple[int, int]
    general_max_n: int
    ideal_max_vars: int
    random_ideals: int
    count_s_max: int


SCALES = {
    "quick": Scale(4, 6, 20, (7, 9), 5, 4, 5, 5),
    "default": Scale(5, 8, 500, (9, 12), 7, 6, 60, 7),
    "slow": Scale(6, 8, 500, (9, 12), 7, 6, 60, 7),
}


@dataclass
class Failure:
    check: str
    detail: str
    graph: Graph | None = None
    subset: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        out = {"check": self.check, "detail": self.detail}
        if self.graph is not None:
            out["graph"] = {"n": self.graph.n, "edges": [[u + 1, v + 1] for u, v in self.graph.edges()]}
        out["subset"] = [v + 1 for v in self.subset] if self.subset is not None else None
        return out

    def reproducer(self) -> str:
        lines = [f"FAIL {self.check}: {self.detail}"]
        if self.graph is not None:
            lines.append(f"  graph: {self.graph.n} vertices, edges "
                         + " ".join(f"{u + 1}-{v + 1}" for u, v in self.graph.edges()))
        if self.subset is not None:
            lines.append("  W = {" + ", ".join(str(v + 1) for v in self.subset) + "}")
        return "\n".join(lines)


@dataclass
class JobResult:
    checks: int = 0
    failures: list[Failure] = field(default_factory=list)
    diagrams: int = 0
    propagation_failures: list[Failure] = field(default_factory=list)

    def check(self, ok: bool, name: str, detail: str, graph=None, subset=None) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append(Failure(name, detail, graph, subset))
        return ok

    def diagram(self, d: BettiDiagram, g: Graph) -> BettiDiagram:
        self.diagrams += 1
        if not check_propagation(d):
            self.propagation_failures.append(Failure("propagation", f"diagram {d.to_json()}", g))
        if not strand_bounds_hold(d):
            self.propagation_failures.append(Failure("strand-bounds", f"diagram {d.to_json()}", g))
        return d


def _formula_functions(fault: str | None):
    first, second = cf.first_row, cf.second_row
    if fault == "first_row":
        first = lambda s, j: cf.first_row(s, j) + (1 if j == s - 1 else 0)  # noqa: E731
    elif fault == "second_row":
        second = lambda s, j: cf.second_row(s, j) + (1 if j == 2 * s - 3 else 0)  # noqa: E731
    elif fault is not None:
        raise ValueError(f"unknown fault {fault!r}; choose from {', '.join(FAULTS)}")
    return first, second


def _witness_for(g: Graph, i: int, j: int, p: int):
    """Smallest ``W`` with ``|W| = j`` and ``beta_{i,W} != 0``, if any."""
    for w in combinations(range(g.n), j):
        if any(k == i for k, _ in multigraded_betti(g, w, p)):
            return w
    return None


# --- jobs ------------------------------------------------------------------------------

def _job_formula(s: int, p: int, fault: str | None) -> JobResult:
    res = JobResult()
    g = cf.cbc_graph(s)
    first, second = _formula_functions(fault)
    closed = cf.full_diagram_cbc(s, first, second)
    engine = res.diagram(betti_diagram(g, p), g)
    for key in sorted(set(closed.entries) | set(engine.entries)):
        if closed[key] != engine[key]:
            w = _witness_for(g, *key, p) if engine[key] else None
            res.check(False, "formula-vs-engine",
                      f"s={s} GF({p}) beta_{key[0]},{key[1]}: formula {closed[key]}, engine {engine[key]}", g, w)
            break
    else:
        res.check(True, "formula-vs-engine", "")
    res.check(engine.regularity() == 4 and engine[(2 * s - 4, 2 * s)] == 1
              and all(j - i <= 4 for i, j in engine.entries),
              "regularity-4", f"s={s} GF({p}) engine diagram {engine.to_json()}", g)
    for d, src in ((closed, "formula"), (engine, "engine")):
        res.check(d[(s - 3, s - 1)] == d[(0, 2)] == s * (s - 2), "first-row-ends",
                  f"s={s} {src}: beta_{s - 3},{s - 1}={d[(s - 3, s - 1)]}, beta_0,2={d[(0, 2)]}", g)
        res.check(d[(1, 4)] == d[(2 * s - 5, 2 * s - 2)] == s * (2 * s - 5), "second-row-ends",
                  f"s={s} {src}: beta_1,4={d[(1, 4)]}, beta_{2 * s - 5},{2 * s - 2}={d[(2 * s - 5, 2 * s - 2)]}", g)
    return res


def _job_counting(s: int) -> JobResult:
    res = JobResult()
    for j in range(1, 2 * s):
        brute = cf.brute_force_component_counts(s, j)
        for m in range(1, j // 2 + 1):
            for a in range(0, j - 2 * m + 1):
                got = cf.count_subsets_by_components(s, j, m, a)
                res.check(got == brute.get((m, a), 0), "component-count",
                          f"s={s} j={j} m={m} a={a}: formula {got}, enumeration {brute.get((m, a), 0)}")
        res.check(cf.second_row(s, j) == cf.second_row_display(s, j), "second-row-arrangements",
                  f"s={s} j={j}: {cf.second_row(s, j)} vs {cf.second_row_display(s, j)}")
    for k in range(1, s):
        for w_x in combinations(range(s), k):
            res.check(cf.neighborhood_identity_check(s, w_x), "neighborhood-identity",
                      f"s={s} W_X={[2 * i + 1 for i in w_x]}")
    return res


def _job_classification(s: int, p: int) -> JobResult:
    res = JobResult()
    g = cf.cbc_graph(s)
    for k in range(1, 2 * s):
        for w in combinations(range(2 * s), k):
            mask = sum(1 << v for v in w)
            got = reduced_homology(IndependenceComplexView(g, mask), p).dims
            want = cf.classify_subset_homology(s, w)
            res.check(got == want, "subset-classification", f"s={s} GF({p}): dims {got}, predicted {want}", g, w)
    return res


def _job_bipartite(g: Graph) -> JobResult:
    res = JobResult()
    d = res.diagram(betti_diagram(g), g)
    reg = d.regularity()
    res.check(froberg_linear(g) == (reg == 2), "froberg", f"engine reg={reg}", g)
    res.check(reg3_bipartite(g) == (reg == 3), "reg3-bipartite", f"engine reg={reg}", g)
    if reg > 3:
        rep = strand_report(g)
        probs = report_matches_diagram(rep, d)
        res.check(not probs, "first-strand-bipartite", "; ".join(probs), g,
                  rep.witnesses[0] if rep.witnesses else None)
    return res


def _job_general(g: Graph) -> JobResult:
    res = JobResult()
    d = res.diagram(betti_diagram(g), g)
    reg = d.regularity()
    res.check(froberg_linear(g) == (reg == 2), "froberg", f"engine reg={reg}", g)
    if reg > 2:
        rep = first_nonlinear_general(g)
        probs = report_matches_diagram(rep, d)
        res.check(not probs, "first-strand-general", "; ".join(probs), g,
                  rep.witnesses[0] if rep.witnesses else None)
    return res


def _job_ideal(ideal: QuadraticIdeal) -> JobResult:
    res = JobResult()
    g = polarize(ideal)
    out = betti_nonsquarefree(ideal)
    d = res.diagram(out.diagram, g)
    reg = d.regularity()
    label = " ".join(ideal.generators())
    res.check(reg3_nonsquarefree(ideal) == (reg == 3), "reg3-nonsquarefree", f"{label}: engine reg={reg}", g)
    count, wit = totally_disjoint_triples(ideal.looped_graph(), 1)
    res.check(d[(2, 6)] == count, "triples-beta26", f"{label}: beta_2,6={d[(2, 6)]}, triples={count}", g)
    if count:
        stray = [(i, j) for i, j in d.entries if (i <= 1 and j > i + 3) or (i == 2 and j > 6)]
        res.check(not stray, "triples-vanishing", f"{label}: unexpected entries {stray}", g)
    elif reg > 3:
        probs = report_matches_diagram(strand_report(g), d)
        res.check(not probs, "first-strand-polarized", f"{label}: " + "; ".join(probs), g)
    folded = [(i, m) for i, m, _ in out.multigraded]
    res.check(len(folded) == len(set(folded)), "fold-injective", f"{label}: folded multidegrees collide", g)
    return res


def _job_example() -> JobResult:
    res = JobResult()
    ideal = example_ideal()
    g = polarize(ideal)
    d = res.diagram(betti_nonsquarefree(ideal, multigraded=False).diagram, g)
    count, _ = totally_disjoint_triples(ideal.looped_graph())
    bc = bipartite_complement(ideal.sqf_graph())
    res.check(d[(2, 6)] == 1, "example-beta26", f"beta_2,6 = {d[(2, 6)]}", g)
    res.check(count == 1, "example-triples", f"{count} triples", g)
    res.check(count_induced_cycles(bc, 6) == 0, "example-no-c6", "G^bc has an induced 6-cycle", bc)
    return res


def example_ideal() -> QuadraticIdeal:
    """``(x1^2, x1x5, x2x5, x2x7, x3x5, x3x6, x3x7, x4x6)``."""
    pairs = [(1, 1), (1, 5), (2, 5), (2, 7), (3, 5), (3, 6), (3, 7), (4, 6)]
    return QuadraticIdeal.from_generators(7, [(u - 1, v - 1) for u, v in pairs])


def _dispatch(job):
    kind, args = job
    return _JOBS[kind](*args)


_JOBS = {
    "formula": _job_formula,
    "counting": _job_counting,
    "classification": _job_classification,
    "bipartite": _job_bipartite,
    "general": _job_general,
    "ideal": _job_ideal,
    "example": _job_example,
}


# --- orchestration ---------------------------------------------------------------------

@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[Failure] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"name": self.name, "checks": self.checks, "failures": [f.to_dict() for f in self.failures]}


@dataclass
class VerifyReport:
    seed: int
    scale: str
    s_max: int
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(not s.failures for s in self.suites)

    def to_dict(self) -> dict:
        return {"seed": self.seed, "scale": self.scale, "s_max": self.s_max, "passed": self.passed,
                "suites": [s.to_dict() for s in self.suites]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def render(self) -> str:
        lines = [f"seed: {self.seed:#x}", f"scale: {self.scale} (s up to {self.s_max})"]
        for s in self.suites:
            status = "PASS" if not s.failures else f"FAIL ({len(s.failures)})"
            lines.append(f"{s.name}: {s.checks} checks, {status}")
        for s in self.suites:
            for f in s.failures[:5]:
                lines.append(f.reproducer())
        lines.append("verify: PASS" if self.passed else "verify: FAIL")
        return "\n".join(lines)


def plan(scale: str = "default", seed: int = DEFAULT_SEED, s_max: int | None = None,
         fault: str | None = None) -> dict[str, list]:
    """Jobs per suite, in a fixed order."""
    cfg = SCALES[scale]
    s_top = s_max or cfg.s_max
    formula = [("formula", (s, p, fault)) for s in range(3, s_top + 1) for p in (2, 3)]
    formula += [("counting", (s,)) for s in range(3, cfg.count_s_max + 1)]
    formula += [("classification", (s, p)) for s in range(3, min(s_top, 5) + 1) for p in (2, 3)]
    r_lo, r_hi = cfg.random_n
    bip = connected_bipartite_graphs(cfg.bipartite_max_n)
    bip += random_bipartite_corpus(seed, cfg.random_count, r_lo, r_hi)
    chars = [("bipartite", (g,)) for g in bip]
    chars += [("general", (g,)) for g in atlas_graphs(cfg.general_max_n)]
    ideals = ideal_corpus(cfg.ideal_max_vars) + random_ideal_corpus(seed + 1, cfg.random_ideals)
    chars += [("ideal", (i,)) for i in ideals] + [("example", ())]
    return {"formula-vs-engine": formula, "characterization-vs-oracle": chars}


def run_verify(scale: str = "default", seed: int = DEFAULT_SEED, threads: int | None = 1,
               s_max: int | None = None, fault: str | None = None) -> VerifyReport:
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}; choose from {', '.join(SCALES)}")
    jobs = plan(scale, seed, s_max, fault)
    flat = [(name, job) for name, js in jobs.items() for job in js]
    workers = resolve_workers(threads)
    if workers == 1:
        results = [_dispatch(job) for _, job in flat]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_dispatch, [job for _, job in flat], chunksize=8))
    suites = {name: SuiteResult(name) for name in jobs}
    prop = SuiteResult("propagation")
    for (name, _), res in zip(flat, results):
        suites[name].checks += res.checks
        suites[name].failures.extend(res.failures)
        prop.checks += res.diagrams
        prop.failures.extend(res.propagation_failures)
    return VerifyReport(seed, scale, s_max or SCALES[scale].s_max, list(suites.values()) + [prop])
