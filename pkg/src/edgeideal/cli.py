"""``edgeideal`` command line.

Exit codes: 0 success, 1 verify failure, 2 parse or usage error,
3 size cap exceeded, 4 a theorem's hypotheses do not hold.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import cycle_formulas as cf
from .betti import DEFAULT_MAX_VERTICES, betti_diagram, multigraded_diagram
from .corpus import DEFAULT_SEED
from .errors import (EmptyIdealError, FaceLimitExceededError, NotBipartiteError, NotConnectedError,
                     ParseError, PreconditionViolatedError, TooManyVerticesError)
from .formats import FORMATS, format_graph, load_input
from .graph_core import iter_bits
from .homology import FACE_LIMIT
from .linalg import check_prime
from .polarization import betti_nonsquarefree, reg3_nonsquarefree
from .strands import first_nonlinear_bipartite, first_nonlinear_general, reg3_bipartite, strand_report
from .verify import FAULTS, SCALES, run_verify

EXIT_VERIFY, EXIT_PARSE, EXIT_CAP, EXIT_PRECONDITION = 1, 2, 3, 4

ENV_MAX_VERTICES = "EDGEIDEAL_MAX_VERTICES"
ENV_FACE_LIMIT = "EDGEIDEAL_FACE_LIMIT"
ENV_THREADS = "EDGEIDEAL_THREADS"
ENV_SEED = "EDGEIDEAL_SEED"


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _threads(text: str) -> int:
    return 0 if text == "auto" else _positive(text)


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _env(name: str, parse, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return parse(raw)
    except (argparse.ArgumentTypeError, ValueError) as exc:
        raise ParseError(f"environment variable {name}={raw!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_prime, default=2, help="prime characteristic (default 2)")
    common.add_argument("--max-vertices", type=_positive, default=None,
                        help=f"engine vertex cap (default {DEFAULT_MAX_VERTICES}, env {ENV_MAX_VERTICES})")
    common.add_argument("--face-limit", type=_positive, default=None,
                        help=f"face cap per complex (default 2^22, env {ENV_FACE_LIMIT})")
    common.add_argument("--threads", type=_threads, default=None,
                        help=f"worker processes or 'auto' (default 1, env {ENV_THREADS})")
    common.add_argument("--seed", type=_seed, default=None,
                        help=f"seed for random corpora (default {DEFAULT_SEED:#x}, env {ENV_SEED})")
    common.add_argument("--json", action="store_true", help="emit JSON only")

    with_input = argparse.ArgumentParser(add_help=False, parents=[common])
    with_input.add_argument("--input", "-i", required=True, help="graph, matrix or ideal file")
    with_input.add_argument("--format", choices=FORMATS, default=None,
                            help="input format (default: from suffix, else sniffed)")

    parser = argparse.ArgumentParser(prog="edgeideal",
                                     description="Betti numbers and regularity of edge ideals.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("betti", parents=[with_input], help="graded Betti diagram")
    p.add_argument("--multigraded", action="store_true", help="also list every nonzero beta_{i,W}")
    sub.add_parser("reg", parents=[with_input], help="regularity")
    p = sub.add_parser("strand", parents=[with_input], help="first nonlinear strand from induced cycles")
    p.add_argument("--theorem", choices=("auto", "general", "bipartite"), default="auto")
    sub.add_parser("reg3", parents=[with_input], help="decide regularity 3 combinatorially")
    p = sub.add_parser("cycle-formula", parents=[common], help="closed-form diagram of I(C_2s^bc)")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--compare", action="store_true", help="also run the engine and diff")
    sub.add_parser("polarize", parents=[with_input], help="polarized graph of an ideal")
    p = sub.add_parser("verify", parents=[common], help="cross-validation suites")
    p.add_argument("--scale", choices=tuple(SCALES), default="default")
    p.add_argument("--s", type=int, default=None, help="largest s for the formula suite")
    p.add_argument("--inject-fault", choices=FAULTS, default=None, help=argparse.SUPPRESS)
    return parser


def _resolve(args) -> None:
    if args.max_vertices is None:
        args.max_vertices = _env(ENV_MAX_VERTICES, _positive, DEFAULT_MAX_VERTICES)
    if args.face_limit is None:
        args.face_limit = _env(ENV_FACE_LIMIT, _positive, FACE_LIMIT)
    if args.threads is None:
        args.threads = _env(ENV_THREADS, _threads, 1)
    if args.seed is None:
        args.seed = _env(ENV_SEED, _seed, DEFAULT_SEED)


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _diagram(args, loaded):
    kw = dict(p=args.field, max_vertices=args.max_vertices, workers=args.threads, face_limit=args.face_limit)
    if loaded.ideal is not None:
        return betti_nonsquarefree(loaded.ideal, multigraded=False, **kw).diagram
    return betti_diagram(loaded.graph, **kw)


def cmd_betti(args) -> int:
    loaded = load_input(args.input, args.format)
    d = _diagram(args, loaded)
    out = d.to_dict()
    multi = None
    if args.multigraded:
        kw = dict(p=args.field, max_vertices=args.max_vertices, workers=args.threads, face_limit=args.face_limit)
        if loaded.ideal is not None:
            rows = betti_nonsquarefree(loaded.ideal, **kw).multigraded
            multi = [{"i": i, "multidegree": list(m), "value": v} for i, m, v in rows]
        else:
            multi = [{"i": e.i, "support": [v + 1 for v in e.support], "value": e.count}
                     for e in multigraded_diagram(loaded.graph, **kw)]
        out["multigraded"] = multi
    if args.json:
        _print_json(out)
        return 0
    print(d.render())
    print(f"regularity: {out['regularity']}")
    for e in multi or []:
        where = e.get("support") or e.get("multidegree")
        print(f"beta_{e['i']},{where} = {e['value']}")
    return 0


def cmd_reg(args) -> int:
    d = _diagram(args, load_input(args.input, args.format))
    reg = d.regularity()
    if args.json:
        _print_json({"field": args.field, "regularity": reg})
    else:
        print(f"regularity: {reg}")
    return 0


def cmd_strand(args) -> int:
    loaded = load_input(args.input, args.format)
    if loaded.ideal is not None:
        raise PreconditionViolatedError("strand reports take a graph; polarize the ideal first")
    pick = {"auto": strand_report, "general": first_nonlinear_general,
            "bipartite": first_nonlinear_bipartite}[args.theorem]
    rep = pick(loaded.graph)
    print(rep.to_json())
    if not args.json:
        print(rep.summary())
    return 0


def cmd_reg3(args) -> int:
    loaded = load_input(args.input, args.format)
    answer = reg3_nonsquarefree(loaded.ideal) if loaded.ideal is not None else reg3_bipartite(loaded.graph)
    if args.json:
        _print_json({"reg3": answer})
    else:
        print("reg=3" if answer else "reg!=3")
    return 0


def cmd_cycle_formula(args) -> int:
    if args.s < 3:
        raise PreconditionViolatedError(f"--s must be at least 3, got {args.s}")
    closed = cf.full_diagram_cbc(args.s)
    out = {"s": args.s, "formula": closed.to_dict()}
    status = 0
    if args.compare:
        engine = betti_diagram(cf.cbc_graph(args.s), args.field, args.max_vertices, args.threads,
                               face_limit=args.face_limit)
        out["engine"] = engine.to_dict()
        out["match"] = engine == closed
        status = 0 if out["match"] else EXIT_VERIFY
    if args.json:
        _print_json(out)
        return status
    print(f"closed formula, s={args.s}:")
    print(closed.render())
    if args.compare:
        print(f"engine over GF({args.field}):")
        print(engine.render())
        print("match" if out["match"] else "MISMATCH")
    return status


def cmd_polarize(args) -> int:
    loaded = load_input(args.input, args.format or "ideal")
    if loaded.ideal is None:
        raise ParseError(f"{args.input}: polarize needs an ideal file")
    g = loaded.graph
    if args.json:
        _print_json({"n": g.n, "labels": [g.label(v) for v in range(g.n)],
                     "edges": [[u + 1, v + 1] for u, v in g.edges()]})
    else:
        print("# " + " ".join(f"{v + 1}={g.label(v)}" for v in range(g.n)))
        sys.stdout.write(format_graph(g))
    return 0


def cmd_verify(args) -> int:
    report = run_verify(args.scale, args.seed, args.threads, args.s, args.inject_fault)
    print(report.to_json() if args.json else report.render())
    return 0 if report.passed else EXIT_VERIFY


COMMANDS = {
    "betti": cmd_betti, "reg": cmd_reg, "strand": cmd_strand, "reg3": cmd_reg3,
    "cycle-formula": cmd_cycle_formula, "polarize": cmd_polarize, "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _resolve(args)
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FaceLimitExceededError as exc:
        where = ""
        if exc.subset is not None:
            where = " on W = {" + ", ".join(str(v + 1) for v in iter_bits(exc.subset)) + "}"
        print(f"error: independence complex has more than {args.face_limit} faces{where}", file=sys.stderr)
        return EXIT_CAP
    except TooManyVerticesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (PreconditionViolatedError, NotBipartiteError, NotConnectedError, EmptyIdealError) as exc:
        msg = str(exc)
        if isinstance(exc, NotBipartiteError) and exc.witness:
            msg += "; odd closed walk " + " ".join(str(v + 1) for v in exc.witness)
        print(f"error: hypothesis failed: {msg}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
