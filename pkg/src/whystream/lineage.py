"""Event tracker and provenance graphs.

Processors report input/output associations to an :class:`EventTracker`.
The tracker also knows how processors are piped together, which lets it
walk from any output event back to the pipeline inputs that explain it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterator, NamedTuple, Optional

from .errors import PositionNotYetProduced, UnknownProcessor

INPUT = "in"
OUTPUT = "out"


class StreamPointer(NamedTuple):
    """One event occurrence: processor, side (``"in"``/``"out"``), pipe, position."""

    processor: int
    side: str
    pipe: int
    position: int

    def __str__(self) -> str:
        return f"#{self.processor}.{self.side}{self.pipe}[{self.position}]"


class Association(NamedTuple):
    processor: int
    out_pipe: int
    out_pos: int
    in_pipe: int
    in_pos: int


class ConnectionRecord(NamedTuple):
    upstream: tuple[int, int]
    downstream: tuple[int, int]


@dataclass
class ProvenanceDag:
    """Explanation graph rooted at a queried event.

    Edges go from the explained occurrence to the occurrence explaining
    it. ``values`` and ``roles`` annotate each node with the event that
    flowed there and the name of the processor it belongs to.
    """

    root: StreamPointer
    values: dict[StreamPointer, Any] = field(default_factory=dict)
    roles: dict[StreamPointer, str] = field(default_factory=dict)
    edges: set[tuple[StreamPointer, StreamPointer]] = field(default_factory=set)
    sources: set[StreamPointer] = field(default_factory=set)

    @property
    def nodes(self) -> list[StreamPointer]:
        return sorted(self.values)

    def successors(self, node: StreamPointer) -> list[StreamPointer]:
        return sorted(b for a, b in self.edges if a == node)

    @property
    def leaves(self) -> list[StreamPointer]:
        explained = {a for a, _ in self.edges}
        return sorted(n for n in self.values if n not in explained)

    def flatten(self) -> list[StreamPointer]:
        return flatten(self)


def flatten(dag: ProvenanceDag) -> list[StreamPointer]:
    """Keep only the pipeline-input leaves of ``dag``, sorted by position."""
    leaves = set(dag.leaves) & dag.sources
    return sorted(leaves, key=lambda p: (p.position, p.processor, p.pipe))


class EventTracker:
    """Stores associations and connections; answers explanation queries.

    Associations are keyed by ``(processor, out_pipe, out_pos)``; the value
    is the set of ``(in_pipe, in_pos)`` pairs explaining that output.
    """

    def __init__(self):
        self.associations: dict[tuple[int, int, int], set[tuple[int, int]]] = {}
        self.connections: set[ConnectionRecord] = set()
        self.upstream: dict[tuple[int, int], tuple[int, int]] = {}
        self.processors: dict[int, Any] = {}
        self.values: dict[StreamPointer, Any] = {}
        self._n_associations = 0

    def __repr__(self):
        return (
            f"<EventTracker {len(self.processors)} processors, "
            f"{self._n_associations} associations>"
        )

    # recording

    def register_processor(self, processor) -> None:
        self.processors[processor.id] = processor

    def associate(self, a: Association) -> None:
        key = (a.processor, a.out_pipe, a.out_pos)
        bucket = self.associations.get(key)
        if bucket is None:
            bucket = self.associations[key] = set()
        before = len(bucket)
        bucket.add((a.in_pipe, a.in_pos))
        self._n_associations += len(bucket) - before

    def record_value(self, pointer: StreamPointer, value: Any) -> None:
        self.values[pointer] = value

    def register_connection(self, c: ConnectionRecord) -> None:
        self.connections.add(c)
        self.upstream[c.downstream] = c.upstream

    # inspection

    @property
    def association_count(self) -> int:
        return self._n_associations

    def iter_associations(self) -> Iterator[Association]:
        for (pid, op, opos), inputs in sorted(self.associations.items()):
            for ip, ipos in sorted(inputs):
                yield Association(pid, op, opos, ip, ipos)

    def inputs_of(self, processor: int, out_pipe: int, out_pos: int) -> set[tuple[int, int]]:
        return self.associations.get((processor, out_pipe, out_pos), set())

    def downstream_of(self, processor: int) -> list[ConnectionRecord]:
        return sorted(c for c in self.connections if c.upstream[0] == processor)

    # queries

    def _check(self, query: StreamPointer) -> None:
        proc = self.processors.get(query.processor)
        if proc is None:
            raise UnknownProcessor(f"no processor with id {query.processor}")
        if query.side == OUTPUT:
            produced = proc.output_count(query.pipe)
        else:
            produced = proc.input_count(query.pipe)
        if query.position < 0 or query.position >= produced:
            what = "output" if query.side == OUTPUT else "input"
            raise PositionNotYetProduced(
                f"no verdict yet: {what} {query.position} of processor "
                f"{query.processor} pipe {query.pipe} not produced "
                f"({produced} so far)"
            )

    def get_provenance_tree(self, query: StreamPointer) -> ProvenanceDag:
        """Build the explanation DAG for one event occurrence.

        Output occurrences expand through the associations of their
        processor; input occurrences hop to the upstream output they came
        from. An input with no upstream connection is a pipeline input.
        """
        query = StreamPointer(*query)
        self._check(query)
        dag = ProvenanceDag(root=query)
        todo = deque([query])
        self._annotate(dag, query)
        while todo:
            node = todo.popleft()
            if node.side == OUTPUT:
                targets = [
                    StreamPointer(node.processor, INPUT, ip, ipos)
                    for ip, ipos in sorted(self.inputs_of(node.processor, node.pipe, node.position))
                ]
            else:
                up = self.upstream.get((node.processor, node.pipe))
                if up is None:
                    dag.sources.add(node)
                    targets = []
                else:
                    targets = [StreamPointer(up[0], OUTPUT, up[1], node.position)]
            for t in targets:
                dag.edges.add((node, t))
                if t not in dag.values:
                    self._annotate(dag, t)
                    todo.append(t)
        return dag

    def _annotate(self, dag: ProvenanceDag, p: StreamPointer) -> None:
        value = self.values.get(p)
        if value is None and p.side == INPUT:
            up = self.upstream.get((p.processor, p.pipe))
            if up is not None:
                value = self.values.get(StreamPointer(up[0], OUTPUT, up[1], p.position))
        dag.values[p] = value
        proc = self.processors.get(p.processor)
        dag.roles[p] = proc.role if proc is not None else "?"

    def explain(self, processor: int, pipe: int, position: int) -> list[StreamPointer]:
        """Shorthand: flattened explanation of an output event."""
        return flatten(self.get_provenance_tree(StreamPointer(processor, OUTPUT, pipe, position)))


def associate(tracker: Optional[EventTracker], a: Association) -> None:
    if tracker is not None:
        tracker.associate(a)


def register_connection(tracker: Optional[EventTracker], c: ConnectionRecord) -> None:
    if tracker is not None:
        tracker.register_connection(c)


def get_provenance_tree(tracker: EventTracker, query: StreamPointer) -> ProvenanceDag:
    return tracker.get_provenance_tree(query)
