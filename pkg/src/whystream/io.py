"""Log ingestion and explanation-graph serialization (DOT, JSON, text)."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, TextIO

from .errors import ParseError
from .events import NUMBER, Record, format_event, from_json, to_json
from .lineage import ProvenanceDag, StreamPointer

NUMBERS = "numbers"
SYMBOLS = "symbols"
CSV = "csv-tuples"


@dataclass(frozen=True)
class LogFormat:
    """How each log line becomes an event.

    ``fields`` lists ``(name, type)`` pairs for CSV tuples, type being
    ``"number"`` or ``"text"``.
    """

    kind: str
    fields: tuple[tuple[str, str], ...] = field(default=())

    @classmethod
    def csv(cls, *fields: tuple[str, str]) -> "LogFormat":
        return cls(CSV, tuple(fields))

    def with_header(self, header: str) -> "LogFormat":
        """Rename fields from a header line; types follow the old names, else position."""
        names = [n.strip() for n in header.split(",")]
        known = dict(self.fields)
        if len(names) != len(self.fields):
            raise ParseError(1, f"header has {len(names)} fields, expected {len(self.fields)}")
        typed = [(n, known.get(n, self.fields[i][1])) for i, n in enumerate(names)]
        return LogFormat(CSV, tuple(typed))


def parse_number(text: str, line_no: int):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ParseError(line_no, f"not a number: {text!r}") from None


def parse_line(fmt: LogFormat, line: str, line_no: int):
    """Turn one log line into an event.

    >>> parse_line(LogFormat.csv(("action", "text"), ("p", "number")), "c,-2", 1)
    Record(action='c', p=-2)
    """
    line = line.rstrip("\r\n")
    if fmt.kind == NUMBERS:
        return parse_number(line, line_no)
    if fmt.kind == SYMBOLS:
        return line.strip()
    if fmt.kind != CSV:
        raise ValueError(f"unknown log format {fmt.kind!r}")
    parts = [p.strip() for p in line.split(",")]
    if len(parts) != len(fmt.fields):
        raise ParseError(line_no, f"expected {len(fmt.fields)} fields, got {len(parts)}")
    values = []
    for (name, kind), raw in zip(fmt.fields, parts):
        values.append((name, parse_number(raw, line_no) if kind == NUMBER else raw))
    return Record(values)


def iter_log(lines: Iterable[str], fmt: LogFormat, header: bool = False) -> Iterator[Any]:
    """Parse an iterable of lines; blank lines are skipped."""
    for n, line in enumerate(lines, start=1):
        if header and n == 1:
            fmt = fmt.with_header(line)
            continue
        if not line.strip():
            continue
        yield parse_line(fmt, line, n)


def read_log(path: str, fmt: LogFormat, header: bool = False) -> list[Any]:
    """Read a whole log file; ``"-"`` reads standard input."""
    if path == "-":
        return list(iter_log(sys.stdin, fmt, header))
    with open(path, encoding="utf-8") as f:
        return list(iter_log(f, fmt, header))


def write_log(events: Iterable[Any], out: TextIO) -> None:
    """Write events one per line, in the format :func:`parse_line` reads back."""
    for e in events:
        if isinstance(e, Record):
            out.write(",".join(format_event(v) for v in e.values()))
        else:
            out.write(format_event(e))
        out.write("\n")


# graphs


def node_id(p: StreamPointer) -> str:
    return f"p{p.processor}_{p.side}{p.pipe}_{p.position}"


def _label(dag: ProvenanceDag, p: StreamPointer, ascii: bool) -> str:
    value = dag.values.get(p)
    shown = "?" if value is None else format_event(value, ascii)
    return f"{dag.roles.get(p, '?')}\\n{p}\\n{shown}"


def _dot_escape(s: str) -> str:
    return s.replace('"', '\\"')


def export_dot(dag: ProvenanceDag, ascii: bool = False) -> str:
    """Render ``dag`` as a DOT digraph; edges point from explained to explaining."""
    lines = ["digraph provenance {", "  rankdir=BT;", "  node [shape=box];"]
    for p in dag.nodes:
        attrs = [f'label="{_dot_escape(_label(dag, p, ascii))}"']
        if p == dag.root:
            attrs.append("style=bold")
        if p in dag.sources:
            attrs.append("shape=ellipse")
        lines.append(f"  {node_id(p)} [{', '.join(attrs)}];")
    for a, b in sorted(dag.edges):
        lines.append(f"  {node_id(a)} -> {node_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _pointer_json(p: StreamPointer) -> dict:
    return {"processor": p.processor, "side": p.side, "pipe": p.pipe, "position": p.position}


def export_json(dag: ProvenanceDag) -> str:
    nodes = []
    for p in dag.nodes:
        d = _pointer_json(p)
        d["id"] = node_id(p)
        d["role"] = dag.roles.get(p)
        d["value"] = None if dag.values.get(p) is None else to_json(dag.values[p])
        d["source"] = p in dag.sources
        nodes.append(d)
    doc = {
        "root": node_id(dag.root),
        "nodes": nodes,
        "edges": [[node_id(a), node_id(b)] for a, b in sorted(dag.edges)],
        "leaves": [_pointer_json(p) | {"value": to_json(dag.values[p])} for p in dag.flatten()],
    }
    return json.dumps(doc, ensure_ascii=False, indent=1)


def load_json(text: str) -> ProvenanceDag:
    """Inverse of :func:`export_json`."""
    doc = json.loads(text)
    by_id = {}
    for n in doc["nodes"]:
        by_id[n["id"]] = StreamPointer(n["processor"], n["side"], n["pipe"], n["position"])
    dag = ProvenanceDag(root=by_id[doc["root"]])
    for n in doc["nodes"]:
        p = by_id[n["id"]]
        dag.values[p] = None if n["value"] is None else from_json(n["value"])
        dag.roles[p] = n["role"]
        if n["source"]:
            dag.sources.add(p)
    dag.edges = {(by_id[a], by_id[b]) for a, b in doc["edges"]}
    return dag


def render_text(dag: ProvenanceDag, ascii: bool = False) -> str:
    """Indented expansion from the root; nodes already printed show ``(see above)``."""
    out: list[str] = []
    seen: set[StreamPointer] = set()

    def visit(p: StreamPointer, depth: int) -> None:
        value = dag.values.get(p)
        shown = "?" if value is None else format_event(value, ascii)
        tag = " [input]" if p in dag.sources else ""
        line = f"{'  ' * depth}{p} {dag.roles.get(p, '?')} = {shown}{tag}"
        if p in seen:
            out.append(line + " (see above)")
            return
        seen.add(p)
        out.append(line)
        for q in dag.successors(p):
            visit(q, depth + 1)

    visit(dag.root, 0)
    return "\n".join(out) + "\n"


def render_flat(dag: ProvenanceDag, ascii: bool = False) -> str:
    """One ``position: value`` line per pipeline input explaining the root."""
    return "".join(f"{p.position}: {format_event(dag.values[p], ascii)}\n" for p in dag.flatten())
