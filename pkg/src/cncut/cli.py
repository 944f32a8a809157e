"""Command-line front end.

One JSON record per line on stdout, human diagnostics on stderr.  Exit
codes: 0 ok, 1 malformed input, 2 size-cap refusal.  Exceptions to the
JSON-lines rule are the raw-file outputs: ``gen-random`` without --out
prints the graph file itself, and ``decomp`` prints the decomposition
(indented modular tree, or a .td file) directly.

All size caps are flag-overridable; defaults live in the owning modules.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import CapExceeded, FormatError
from .service import ops


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record) + "\n")


def _caps(args: argparse.Namespace) -> dict:
    return {
        name[len("cap_"):]: value
        for name, value in vars(args).items()
        if name.startswith("cap_") and value is not None
    }


def _add_cap_flags(parser: argparse.ArgumentParser, names: tuple[str, ...]) -> None:
    for name in names:
        parser.add_argument(
            f"--{name}-cap", dest=f"cap_{name}", type=int, metavar="N",
            help=f"override the {name} cap",
        )


def _cmd_solve(args: argparse.Namespace) -> int:
    record = ops.solve_record(
        args.algo,
        graph_text=_read(args.infile) if args.infile else None,
        expr_text=_read(args.expr) if args.expr else None,
        td_text=_read(args.td) if args.td else None,
        eps=args.eps,
        budget=args.k,
        bound=args.x,
        caps=_caps(args),
    )
    _emit(record)
    return 0


def _cmd_count(args: argparse.Namespace) -> int:
    record = ops.count_record(_read(args.expr), budget=args.k, caps=_caps(args))
    header = {"command": "count", "n": record["n"], "width": record["width"]}
    for row in record["rows"]:
        _emit(header | row)
    return 0


def _cmd_gen_random(args: argparse.Namespace) -> int:
    record = ops.generate_record(args.n, args.p, args.seed)
    text = record.pop("graph")
    if args.out:
        Path(args.out).write_text(text)
        record["out"] = args.out
        _emit(record)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    source = _read(args.infile)
    if args.kind == "rubp":
        record = ops.reduce_rubp_record(source, caps=_caps(args))
    else:
        record = ops.reduce_mc_record(source, caps=_caps(args))
    Path(args.out).write_text(record.pop("instance"))
    record["out"] = args.out
    roles = record.pop("roles")
    if args.roles:
        payload = {"roles": roles, "constants": record["constants"]}
        Path(args.roles).write_text(json.dumps(payload, indent=2) + "\n")
        record["roles_out"] = args.roles
    else:
        record["roles"] = roles
    _emit(record)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    deleted = [int(tok) for tok in args.set.split(",") if tok.strip()]
    record = ops.verify_record(
        _read(args.infile), deleted, budget=args.k, bound=args.x
    )
    _emit(record)
    return 0


def _cmd_params(args: argparse.Namespace) -> int:
    _emit(ops.params_record(_read(args.infile)))
    return 0


def _cmd_decomp(args: argparse.Namespace) -> int:
    record = ops.decomp_record(args.kind, _read(args.infile))
    sys.stdout.write(record["text"])
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cncut",
        description="Critical node cut: solvers, counting, decompositions, reductions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="minimize connected pairs under a deletion budget")
    solve.add_argument("--algo", required=True, choices=ops.ALGORITHMS)
    solve.add_argument("--in", dest="infile", metavar="FILE", help="graph file")
    solve.add_argument("--expr", metavar="FILE", help="construction expression (algo cw)")
    solve.add_argument("--td", metavar="FILE", help="tree decomposition (algo tw-*)")
    solve.add_argument("--eps", type=float, help="approximation slack (algo tw-apx)")
    solve.add_argument("--k", type=int, help="deletion budget; overrides the file's b line")
    solve.add_argument("--x", type=int, help="pair bound for the decision field")
    _add_cap_flags(solve, ("enum", "branch", "separator", "component", "width", "size"))
    solve.set_defaults(run=_cmd_solve)

    count = sub.add_parser("count", help="per-budget minimum and count of optimal sets")
    count.add_argument("--algo", choices=("cw",), default="cw")
    count.add_argument("--expr", required=True, metavar="FILE")
    count.add_argument("--k", type=int, help="report a single budget instead of all")
    _add_cap_flags(count, ("width", "size"))
    count.set_defaults(run=_cmd_count)

    gen = sub.add_parser("gen-random", help="seeded random graph file")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", metavar="FILE", help="write here instead of stdout")
    gen.set_defaults(run=_cmd_gen_random)

    reduce_ = sub.add_parser("reduce", help="build a hardness instance")
    reduce_.add_argument("kind", choices=("rubp", "mc"))
    reduce_.add_argument("--in", dest="infile", required=True, metavar="FILE")
    reduce_.add_argument("--out", required=True, metavar="FILE", help="instance file to write")
    reduce_.add_argument("--roles", metavar="FILE", help="write the role map as JSON")
    _add_cap_flags(reduce_, ("expansion", "vertex"))
    reduce_.set_defaults(run=_cmd_reduce)

    verify = sub.add_parser("verify-witness", help="recompute pairs for a deletion set")
    verify.add_argument("--in", dest="infile", required=True, metavar="FILE")
    verify.add_argument("--set", required=True, metavar="LIST", help="comma-separated 1-based vertices")
    verify.add_argument("--k", type=int, help="budget to check the set size against")
    verify.add_argument("--x", type=int, help="pair bound to check the recount against")
    verify.set_defaults(run=_cmd_verify)

    params = sub.add_parser("params", help="cheap structural statistics")
    params.add_argument("--in", dest="infile", required=True, metavar="FILE")
    params.set_defaults(run=_cmd_params)

    decomp = sub.add_parser("decomp", help="decomposition debug output")
    decomp.add_argument("--kind", required=True, choices=("md", "td"))
    decomp.add_argument("--in", dest="infile", required=True, metavar="FILE")
    decomp.set_defaults(run=_cmd_decomp)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; fold that into the input-error code
        return 0 if not exc.code else 1
    try:
        return args.run(args)
    except CapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
