"""Text formats for graphs, biadjacency matrices and quadratic ideals.

All vertex and variable indices in files are 1-based.

* graph:  first line ``n``, then one ``u v`` edge per line
* matrix: first line ``n m``, then ``n`` rows of ``m`` entries in {0, 1}
* ideal:  one degree-2 monomial per line (``x1^2``, ``x2*x5``); an optional
  first line ``n`` fixes the number of variables

Blank lines and ``#`` comments are ignored everywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .graph_core import BipartiteView, Graph, MAX_VERTICES
from .polarization import QuadraticIdeal, polarize

FORMATS = ("graph", "matrix", "ideal")
_SUFFIXES = {".graph": "graph", ".g": "graph", ".matrix": "matrix", ".mat": "matrix", ".ideal": "ideal"}
_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?")


def _content_lines(text: str):
    """``(line_number, stripped_content)`` for every non-blank, non-comment line."""
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body


def _ints(body: str, no: int, count: int | None = None) -> list[int]:
    try:
        vals = [int(tok) for tok in body.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {body!r}", no) from None
    if count is not None and len(vals) != count:
        raise ParseError(f"expected {count} integers, got {len(vals)}", no)
    return vals


def _header(lines, what: str, count: int):
    try:
        no, body = next(lines)
    except StopIteration:
        raise ParseError(f"empty {what} file") from None
    vals = _ints(body, no, count)
    if any(v < 0 for v in vals) or vals[0] > MAX_VERTICES:
        raise ParseError(f"invalid {what} header {body!r}", no)
    return no, vals


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    _, (n,) = _header(lines, "graph", 1)
    edges = []
    seen = set()
    for no, body in lines:
        u, v = _ints(body, no, 2)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex out of range 1..{n} in edge {u} {v}", no)
        if u == v:
            raise ParseError(f"loop at vertex {u}; loops are squares, use the ideal format", no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u} {v}", no)
        seen.add(key)
        edges.append((u - 1, v - 1))
    return Graph.from_edges(n, edges)


def parse_matrix(text: str) -> BipartiteView:
    lines = _content_lines(text)
    hno, (n, m) = _header(lines, "matrix", 2)
    if n == 0 or m == 0:
        raise ParseError("matrix needs at least one row and one column", hno)
    rows = []
    for no, body in lines:
        if len(rows) == n:
            raise ParseError(f"more than the declared {n} rows", no)
        row = _ints(body, no, m)
        if any(a not in (0, 1) for a in row):
            raise ParseError("entries must be 0 or 1", no)
        rows.append(row)
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}")
    return BipartiteView.from_matrix(rows)


def parse_monomial(body: str, no: int | None = None) -> tuple[int, int]:
    """0-based variable pair of a degree-2 monomial (equal entries for a square)."""
    exps: dict[int, int] = {}
    for factor in body.replace(" ", "").split("*"):
        match = _FACTOR.fullmatch(factor)
        if not match:
            raise ParseError(f"cannot read monomial factor {factor!r}", no)
        var = int(match.group(1))
        if var < 1:
            raise ParseError(f"variable x{var} does not exist; indices start at 1", no)
        exps[var] = exps.get(var, 0) + int(match.group(2) or 1)
    if sum(exps.values()) != 2:
        raise ParseError(f"monomial {body!r} has degree {sum(exps.values())}, expected 2", no)
    vs = [v - 1 for v, e in sorted(exps.items()) for _ in range(e)]
    return vs[0], vs[1]


def parse_ideal(text: str) -> QuadraticIdeal:
    n = None
    gens = []
    for k, (no, body) in enumerate(_content_lines(text)):
        if k == 0 and body.isdigit():
            n = int(body)
            continue
        gens.append((no, parse_monomial(body, no)))
    if not gens:
        raise ParseError("ideal has no generators")
    top = max(max(pair) for _, pair in gens) + 1
    if n is None:
        n = top
    elif top > n:
        no = next(no for no, pair in gens if max(pair) >= n)
        raise ParseError(f"variable beyond the declared {n}", no)
    seen: dict[tuple[int, int], int] = {}
    for no, pair in gens:
        if pair in seen:
            raise ParseError(f"duplicate generator (first on line {seen[pair]})", no)
        seen[pair] = no
    if not any(u == v for _, (u, v) in gens):
        raise ParseError("ideal has no square; squarefree input belongs in the graph format")
    return QuadraticIdeal.from_generators(n, [pair for _, pair in gens])


def format_graph(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def format_matrix(view: BipartiteView) -> str:
    rows = view.biadjacency
    lines = [f"{len(rows)} {len(rows[0]) if rows else 0}"] + [" ".join(map(str, r)) for r in rows]
    return "\n".join(lines) + "\n"


def format_ideal(ideal: QuadraticIdeal) -> str:
    return "\n".join([str(ideal.n_vars)] + ideal.generators()) + "\n"


@dataclass
class LoadedInput:
    kind: str
    graph: Graph
    view: BipartiteView | None = None
    ideal: QuadraticIdeal | None = None


def sniff_format(text: str) -> str:
    """Guess the format from content: monomials, a two-number header, or a one-number header."""
    lines = list(_content_lines(text))
    if any("x" in body for _, body in lines):
        return "ideal"
    if lines and len(lines[0][1].split()) == 2:
        return "matrix"
    return "graph"


def load_input(path: str | Path, fmt: str | None = None) -> LoadedInput:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    fmt = fmt or _SUFFIXES.get(path.suffix.lower()) or sniff_format(text)
    try:
        if fmt == "graph":
            return LoadedInput("graph", parse_graph(text))
        if fmt == "matrix":
            view = parse_matrix(text)
            return LoadedInput("matrix", view.parent, view=view)
        if fmt == "ideal":
            ideal = parse_ideal(text)
            return LoadedInput("ideal", polarize(ideal), ideal=ideal)
    except ParseError as exc:
        wrapped = ParseError(f"{path}: {exc}")
        wrapped.line = exc.line
        raise wrapped from None
    raise ParseError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
