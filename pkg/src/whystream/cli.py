"""Command-line front end.

    whystream run     --query window-product --input log.txt
    whystream explain --query window-product --input log.txt --position 1 --flatten
    whystream bench   --query ltl-property --length 10000 --tracker on

Exit codes: 0 ok, 1 parse error, 2 unknown query, 3 position not produced.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .bench import reports_to_json, run_bench
from .errors import ParseError, PositionNotYetProduced
from .events import format_event
from .io import export_dot, export_json, read_log, render_flat, render_text
from .lineage import EventTracker
from .queries import QUERIES

EXIT_OK, EXIT_PARSE, EXIT_QUERY, EXIT_POSITION = 0, 1, 2, 3


def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="whystream", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--query", required=True, help=", ".join(QUERIES))
    common.add_argument("--ascii", action="store_true", help="print T/F instead of ⊤/⊥")

    logs = argparse.ArgumentParser(add_help=False)
    logs.add_argument("--input", default="-", help="log file, '-' for stdin")
    logs.add_argument("--header", action="store_true", help="first CSV line holds field names")

    run = sub.add_parser("run", parents=[common, logs], help="evaluate a query on a log")
    run.add_argument("--tracker", type=_on_off, default=False)

    explain = sub.add_parser("explain", parents=[common, logs], help="explain one output event")
    explain.add_argument("--position", type=int, required=True)
    explain.add_argument("--flatten", action="store_true")
    explain.add_argument("--format", choices=("text", "dot", "json"), default="text")

    bench = sub.add_parser("bench", parents=[common], help="tracker overhead benchmark")
    bench.add_argument("--length", type=int, default=10000)
    bench.add_argument("--tracker", choices=("on", "off", "both"), default="both")
    bench.add_argument("--samples", type=int, default=10)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--repeat", type=int, default=1)
    bench.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _load(args, err):
    q = QUERIES[args.query]
    return q, read_log(args.input, q.log_format, header=args.header)


def cmd_run(args, out, err) -> int:
    q, events = _load(args, err)
    p = q.build(EventTracker() if args.tracker else None)
    for k, value in enumerate(p.run(events)):
        out.write(f"{k} {format_event(value, args.ascii)}\n")
    return EXIT_OK


def cmd_explain(args, out, err) -> int:
    q, events = _load(args, err)
    p = q.build(EventTracker())
    p.run(events)
    try:
        dag = p.explain(args.position)
    except PositionNotYetProduced as e:
        err.write(f"whystream: {e}\n")
        return EXIT_POSITION
    if args.flatten:
        out.write(render_flat(dag, args.ascii))
    elif args.format == "dot":
        out.write(export_dot(dag, args.ascii))
    elif args.format == "json":
        out.write(export_json(dag) + "\n")
    else:
        out.write(render_text(dag, args.ascii))
    return EXIT_OK


def cmd_bench(args, out, err) -> int:
    if args.length < 1 or args.samples < 1:
        err.write("whystream: --length and --samples must be >= 1\n")
        return EXIT_QUERY
    modes = {"on": [True], "off": [False], "both": [False, True]}[args.tracker]
    reports = [
        run_bench(args.query, args.length, m, args.samples, args.seed, args.repeat) for m in modes
    ]
    if args.format == "json":
        out.write(reports_to_json(reports) + "\n")
    else:
        out.write("\n".join(r.format_table() for r in reports))
        if len(reports) == 2 and reports[1].throughput > 0:
            off, on = reports
            out.write(f"slowdown with tracker: {off.throughput / on.throughput:.2f}x\n")
    return EXIT_OK


COMMANDS = {"run": cmd_run, "explain": cmd_explain, "bench": cmd_bench}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.query not in QUERIES:
        err.write(f"whystream: unknown query {args.query!r}; choose from {', '.join(QUERIES)}\n")
        return EXIT_QUERY
    try:
        return COMMANDS[args.command](args, out, err)
    except ParseError as e:
        err.write(f"whystream: {getattr(args, 'input', '-')}: {e}\n")
        return EXIT_PARSE
    except OSError as e:
        err.write(f"whystream: {e}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
