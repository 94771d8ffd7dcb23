"""Processors, pipes and push-based pipeline evaluation."""

from __future__ import annotations

import copy
from collections import defaultdict, deque
from typing import Any, Iterable, Optional, Sequence, Union

from .errors import CycleDetected, DuplicateInputConnection, PipelineError, TypeMismatch
from .events import ANY, compatible
from .lineage import (
    INPUT,
    OUTPUT,
    Association,
    ConnectionRecord,
    EventTracker,
    StreamPointer,
)


class Processor:
    """A stateful unit with ``in_arity`` input pipes and ``out_arity`` output pipes.

    Subclasses implement :meth:`process`, which receives one complete
    event front (one event per input pipe, all at the same position) and
    calls :meth:`emit` / :meth:`associate`. Input pipes that run ahead of
    the others are buffered until the front is complete.
    """

    in_arity = 1
    out_arity = 1

    def __init__(self):
        self.id: Optional[int] = None
        self.tracker: Optional[EventTracker] = None
        self._queues = [deque() for _ in range(self.in_arity)]
        self._in_counts = [0] * self.in_arity
        self._fronts = 0
        self._out_counts = [0] * self.out_arity
        self._pending: list[tuple[int, Any]] = []

    @property
    def role(self) -> str:
        return type(self).__name__

    def __repr__(self) -> str:
        return f"<{self.role} #{self.id}>"

    # typing of pipes; ANY unless a subclass knows better
    def input_type(self, pipe: int) -> str:
        return ANY

    def output_type(self, pipe: int) -> str:
        return ANY

    # counters

    def input_count(self, pipe: int = 0) -> int:
        return self._in_counts[pipe]

    def output_count(self, pipe: int = 0) -> int:
        return self._out_counts[pipe]

    # lineage hooks

    def set_tracker(self, tracker: Optional[EventTracker]) -> None:
        self.tracker = tracker
        if tracker is not None:
            tracker.register_processor(self)

    def associate(self, out_pipe: int, out_pos: int, in_pipe: int, in_pos: int) -> None:
        if self.tracker is not None:
            self.tracker.associate(Association(self.id, out_pipe, out_pos, in_pipe, in_pos))

    def private_trackers(self) -> Iterable[EventTracker]:
        return ()

    # evaluation

    def emit(self, pipe: int, event: Any) -> int:
        pos = self._out_counts[pipe]
        self._out_counts[pipe] = pos + 1
        self._pending.append((pipe, event))
        if self.tracker is not None:
            self.tracker.record_value(StreamPointer(self.id, OUTPUT, pipe, pos), event)
        return pos

    def push(self, pipe: int, event: Any) -> list[tuple[int, Any]]:
        """Feed one event on an input pipe; return the ``(out_pipe, event)`` pairs emitted."""
        if self.tracker is not None:
            self.tracker.record_value(
                StreamPointer(self.id, INPUT, pipe, self._in_counts[pipe]), event
            )
        self._in_counts[pipe] += 1
        if self.in_arity == 1:
            pos = self._fronts
            self._fronts += 1
            self.process((event,), pos)
        else:
            self._queues[pipe].append(event)
            while all(self._queues):
                front = tuple(q.popleft() for q in self._queues)
                pos = self._fronts
                self._fronts += 1
                self.process(front, pos)
        out, self._pending = self._pending, []
        return out

    def process(self, front: tuple, pos: int) -> None:
        raise NotImplementedError

    def buffered_items(self) -> int:
        """Number of event slots held in memory (for the size model)."""
        return sum(len(q) for q in self._queues)

    def duplicate(self) -> "Processor":
        """Fresh copy with no id and no tracker; meant for pristine prototypes."""
        tracker, self.tracker = self.tracker, None
        try:
            dup = copy.deepcopy(self)
        finally:
            self.tracker = tracker
        dup.id = None
        return dup


Ref = Union[int, Processor]


class Pipeline:
    """A DAG of processors joined pipe to pipe.

    >>> from whystream.processors import ApplyFunction
    >>> from whystream.functions import Negation
    >>> p = Pipeline()
    >>> neg = p.add(ApplyFunction(Negation()))
    >>> p.add_source(neg), p.add_sink(neg)
    (0, 0)
    >>> p.feed([[True, False]])
    [[False, True]]
    """

    def __init__(self, tracker: Optional[EventTracker] = None):
        self.tracker = tracker
        self.processors: dict[int, Processor] = {}
        self.connections: set[tuple[int, int, int, int]] = set()
        self.sources: list[tuple[int, int]] = []
        self.sinks: list[tuple[int, int]] = []
        self._next_id = 0
        self._inbound: dict[tuple[int, int], tuple[int, int]] = {}
        self._outbound: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
        self._sink_index: dict[tuple[int, int], list[int]] = defaultdict(list)

    def fresh_id(self) -> int:
        pid = self._next_id
        self._next_id += 1
        return pid

    def add(self, processor: Processor) -> Processor:
        if processor.id is not None and self.processors.get(processor.id) is processor:
            return processor
        if processor.id is not None:
            raise PipelineError(f"{processor!r} already belongs to a pipeline")
        processor.id = self.fresh_id()
        self.processors[processor.id] = processor
        processor.set_tracker(self.tracker)
        return processor

    def _resolve(self, ref: Ref) -> Processor:
        if isinstance(ref, Processor):
            if self.processors.get(ref.id) is not ref:
                raise PipelineError(f"{ref!r} is not registered in this pipeline")
            return ref
        try:
            return self.processors[ref]
        except KeyError:
            raise PipelineError(f"no processor with id {ref}") from None

    def _reaches(self, start: int, goal: int) -> bool:
        seen, todo = set(), [start]
        while todo:
            n = todo.pop()
            if n == goal:
                return True
            if n in seen:
                continue
            seen.add(n)
            proc = self.processors[n]
            for k in range(proc.out_arity):
                todo.extend(d for d, _ in self._outbound.get((n, k), ()))
        return False

    def connect(self, up: Ref, out_pipe: int, down: Ref, in_pipe: int) -> "Pipeline":
        u, d = self._resolve(up), self._resolve(down)
        if not 0 <= out_pipe < u.out_arity or not 0 <= in_pipe < d.in_arity:
            raise PipelineError("pipe index out of range")
        if (d.id, in_pipe) in self._inbound:
            raise DuplicateInputConnection(f"input {in_pipe} of {d!r} is already connected")
        if self._reaches(d.id, u.id):
            raise CycleDetected(f"connecting {u!r} to {d!r} creates a cycle")
        produced, expected = u.output_type(out_pipe), d.input_type(in_pipe)
        if not compatible(produced, expected):
            raise TypeMismatch(
                f"{u!r} output {out_pipe} produces {produced}, "
                f"{d!r} input {in_pipe} expects {expected}"
            )
        self.connections.add((u.id, out_pipe, d.id, in_pipe))
        self._inbound[(d.id, in_pipe)] = (u.id, out_pipe)
        self._outbound[(u.id, out_pipe)].append((d.id, in_pipe))
        if self.tracker is not None:
            self.tracker.register_connection(ConnectionRecord((u.id, out_pipe), (d.id, in_pipe)))
            d.set_tracker(self.tracker)
        return self

    def attach_tracker(self, tracker: EventTracker) -> None:
        """Turn lineage on for an already built (not yet fed) pipeline."""
        self.tracker = tracker
        for proc in self.processors.values():
            proc.set_tracker(tracker)
        for u, op, d, ip in sorted(self.connections):
            tracker.register_connection(ConnectionRecord((u, op), (d, ip)))

    def add_source(self, ref: Ref, pipe: int = 0) -> int:
        proc = self._resolve(ref)
        if (proc.id, pipe) in self._inbound:
            raise PipelineError("a source port cannot also have an upstream connection")
        self.sources.append((proc.id, pipe))
        return len(self.sources) - 1

    def add_sink(self, ref: Ref, pipe: int = 0) -> int:
        proc = self._resolve(ref)
        self.sinks.append((proc.id, pipe))
        self._sink_index[(proc.id, pipe)].append(len(self.sinks) - 1)
        return len(self.sinks) - 1

    # evaluation

    def push(self, source: int, event: Any) -> list[tuple[int, Any]]:
        """Push one event into a source port and propagate it to completion.

        Returns the ``(sink index, event)`` pairs produced, in emission order.
        """
        out = []
        pid, pipe = self.sources[source]
        todo = deque([(pid, pipe, event)])
        while todo:
            pid, pipe, ev = todo.popleft()
            for out_pipe, res in self.processors[pid].push(pipe, ev):
                key = (pid, out_pipe)
                for s in self._sink_index.get(key, ()):
                    out.append((s, res))
                for d, dpipe in self._outbound.get(key, ()):
                    todo.append((d, dpipe, res))
        return out

    def feed(self, inputs: Sequence[Iterable[Any]]) -> list[list[Any]]:
        """Evaluate the pipeline on one event sequence per source.

        Sources are read position by position (round robin), each event
        being pushed through the whole graph before the next one is read.
        """
        if len(inputs) != len(self.sources):
            raise PipelineError(f"expected {len(self.sources)} input streams, got {len(inputs)}")
        outputs: list[list[Any]] = [[] for _ in self.sinks]
        streams = [iter(s) for s in inputs]
        live = list(range(len(streams)))
        while live:
            still = []
            for s in live:
                try:
                    ev = next(streams[s])
                except StopIteration:
                    continue
                still.append(s)
                for k, res in self.push(s, ev):
                    outputs[k].append(res)
            live = still
        return outputs

    def run(self, events: Iterable[Any]) -> list[Any]:
        """Single-source, single-sink convenience wrapper around :meth:`feed`."""
        if len(self.sources) != 1 or len(self.sinks) != 1:
            raise PipelineError("run() needs exactly one source and one sink")
        return self.feed([events])[0]

    def sink_pointer(self, position: int, sink: int = 0) -> StreamPointer:
        pid, pipe = self.sinks[sink]
        return StreamPointer(pid, OUTPUT, pipe, position)

    def explain(self, position: int, sink: int = 0):
        """Provenance DAG of the given sink output (tracker required)."""
        if self.tracker is None:
            raise PipelineError("lineage is turned off for this pipeline")
        return self.tracker.get_provenance_tree(self.sink_pointer(position, sink))

    def __iter__(self):
        return iter(self.processors.values())
