"""Core processor palette and its input/output association rules."""

from __future__ import annotations

from collections import deque
from typing import Any, Optional

from .core import Pipeline, Processor
from .errors import ContractViolation, PipelineError, TypeMismatch
from .events import ANY, BOOLEAN, type_of
from .functions import Function, identity_element
from .lineage import EventTracker, StreamPointer, flatten


class Fork(Processor):
    """Copy every input event to ``n`` output pipes."""

    def __init__(self, n: int = 2):
        self.out_arity = n
        super().__init__()

    def process(self, front, pos):
        for k in range(self.out_arity):
            self.emit(k, front[0])
            self.associate(k, pos, 0, pos)


class ApplyFunction(Processor):
    """Apply a function to each event front.

    The output is associated with the arguments the function reports as
    explaining its value.
    """

    def __init__(self, function: Function, arity: Optional[int] = None):
        self.function = function
        self.in_arity = arity or function.arity
        if self.in_arity is None:
            raise TypeMismatch(f"{function.name} is variadic; pass an explicit arity")
        super().__init__()

    @property
    def role(self):
        return self.function.name

    def input_type(self, pipe):
        return self.function.input_type

    def output_type(self, pipe):
        return self.function.output_type

    def process(self, front, pos):
        value, indices = self.function.evaluate(*front)
        out = self.emit(0, value)
        if self.tracker is not None:
            for j in sorted(indices):
                self.associate(0, out, j, pos)


class Cumulate(Processor):
    """Running fold of a binary function, seeded with its identity element.

    Lineage is chained through the function: a running set of input
    positions is kept; when the function says the new value is explained
    by the accumulator alone the set is unchanged, by the new input alone
    it restarts at the current position, and by both it grows.
    """

    def __init__(self, function: Function, seed: Any = None):
        self.function = function
        self.seed = identity_element(function) if seed is None else seed
        super().__init__()
        self._acc = self.seed
        self._cause: set[int] = set()

    @property
    def role(self):
        return f"Cumulate({self.function.name})"

    def input_type(self, pipe):
        return self.function.input_type

    def output_type(self, pipe):
        return self.function.output_type

    def process(self, front, pos):
        value, indices = self.function.evaluate(self._acc, front[0])
        self._acc = value
        out = self.emit(0, value)
        if self.tracker is None:
            return
        if 0 not in indices:
            self._cause = {pos}
        elif 1 in indices:
            self._cause.add(pos)
        for i in sorted(self._cause):
            self.associate(0, out, 0, i)

    def buffered_items(self):
        return super().buffered_items() + 1


class CountDecimate(Processor):
    """Keep every ``n``-th event (positions 0, n, 2n, ...)."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("decimation interval must be >= 1")
        self.n = n
        super().__init__()

    def process(self, front, pos):
        if pos % self.n == 0:
            out = self.emit(0, front[0])
            self.associate(0, out, 0, pos)


class Trim(Processor):
    """Discard the first ``n`` events."""

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("trim length must be >= 0")
        self.n = n
        super().__init__()

    def process(self, front, pos):
        if pos >= self.n:
            out = self.emit(0, front[0])
            self.associate(0, out, 0, pos)


class Filter(Processor):
    """Let the event on pipe 0 through when the event on pipe 1 is true.

    An output is explained by both the data event and the control event.
    """

    in_arity = 2

    def input_type(self, pipe):
        return BOOLEAN if pipe == 1 else ANY

    def process(self, front, pos):
        event, keep = front
        if type_of(keep) != BOOLEAN:
            raise TypeMismatch(f"filter control event must be boolean, got {keep!r}")
        if keep:
            out = self.emit(0, event)
            self.associate(0, out, 0, pos)
            self.associate(0, out, 1, pos)


class TurnInto(Processor):
    """Replace every event by a constant. Outputs have no associated input."""

    def __init__(self, constant: Any):
        type_of(constant)
        self.constant = constant
        super().__init__()

    @property
    def role(self):
        return f"TurnInto({self.constant!r})"

    def output_type(self, pipe):
        return type_of(self.constant)

    def process(self, front, pos):
        self.emit(0, self.constant)


def _require_unary(p: Processor, who: str) -> None:
    if p.in_arity != 1 or p.out_arity != 1:
        raise PipelineError(f"{who} needs a processor with one input and one output, got {p!r}")


class Window(Processor):
    """Evaluate a processor on every sliding window of ``width`` events.

    For each window a fresh copy of the inner processor is fed the window
    contents; its ``width``-th output becomes the window output. With
    lineage on, the copy reports to a temporary tracker whose associations
    for that output are shifted back to outer positions.
    """

    def __init__(self, inner: Processor, width: int):
        if width < 1:
            raise ValueError("window width must be >= 1")
        _require_unary(inner, "Window")
        self.inner = inner
        self.width = width
        super().__init__()
        self._buffer = deque(maxlen=width)

    @property
    def role(self):
        return f"Window({self.inner.role}, {self.width})"

    def output_type(self, pipe):
        return self.inner.output_type(0)

    def process(self, front, pos):
        self._buffer.append(front[0])
        if len(self._buffer) < self.width:
            return
        start = pos - self.width + 1
        copy = self.inner.duplicate()
        copy.id = 0
        temp = EventTracker() if self.tracker is not None else None
        copy.set_tracker(temp)
        outs = []
        for e in self._buffer:
            outs.extend(v for k, v in copy.push(0, e) if k == 0)
        if len(outs) < self.width:
            raise ContractViolation(
                f"{copy.role} produced {len(outs)} outputs for a window of {self.width}"
            )
        out = self.emit(0, outs[self.width - 1])
        if temp is not None:
            for ip, k in sorted(temp.inputs_of(0, 0, self.width - 1)):
                self.associate(0, out, 0, k + start)

    def buffered_items(self):
        return super().buffered_items() + len(self._buffer)


class _SliceState:
    __slots__ = ("processor", "tracker", "positions", "last", "last_pos")

    def __init__(self, processor, tracker):
        self.processor = processor
        self.tracker = tracker
        self.positions: list[int] = []
        self.last = None
        self.last_pos = -1


class Slice(Processor):
    """Split a stream by key, run one processor copy per key, aggregate.

    ``slicer`` maps an event to its key; each key gets a copy of
    ``prototype`` with its own private tracker. After each input, the last
    output of every slice (in order of first appearance) is passed to
    ``aggregator``. The aggregator's lineage selects the contributing
    slices, whose own explanations are translated back to global input
    positions.
    """

    def __init__(self, slicer: Function, prototype: Processor, aggregator: Function):
        _require_unary(prototype, "Slice")
        self.slicer = slicer
        self.prototype = prototype
        self.aggregator = aggregator
        super().__init__()
        self._slices: dict[Any, _SliceState] = {}

    @property
    def role(self):
        return f"Slice({self.prototype.role})"

    def output_type(self, pipe):
        return self.aggregator.output_type

    def slices(self) -> dict[Any, _SliceState]:
        return dict(self._slices)

    def process(self, front, pos):
        event = front[0]
        key = self.slicer(event)
        st = self._slices.get(key)
        if st is None:
            proc = self.prototype.duplicate()
            proc.id = 0
            tracker = EventTracker() if self.tracker is not None else None
            proc.set_tracker(tracker)
            st = self._slices[key] = _SliceState(proc, tracker)
        st.positions.append(pos)
        for k, v in st.processor.push(0, event):
            if k == 0:
                st.last = v
                st.last_pos = st.processor.output_count(0) - 1
        live = [s for s in self._slices.values() if s.last_pos >= 0]
        if not live:
            return
        value, indices = self.aggregator.evaluate(*(s.last for s in live))
        out = self.emit(0, value)
        if self.tracker is None:
            return
        cause = set()
        for j in indices:
            s = live[j]
            for _, local in s.tracker.inputs_of(0, 0, s.last_pos):
                cause.add(s.positions[local])
        for i in sorted(cause):
            self.associate(0, out, 0, i)

    def buffered_items(self):
        n = super().buffered_items()
        for s in self._slices.values():
            n += 2 + len(s.positions) + s.processor.buffered_items()
        return n

    def private_trackers(self):
        for s in self._slices.values():
            if s.tracker is not None:
                yield s.tracker
            yield from s.processor.private_trackers()


class GroupProcessor(Processor):
    """Encapsulate a whole pipeline as a single processor.

    Input pipes are the pipeline's sources, output pipes its sinks. With
    lineage on, the inner pipeline gets a private tracker and each output
    is associated with the group inputs its flattened explanation reaches.
    """

    def __init__(self, pipeline: Pipeline, name: str = "Group"):
        if pipeline.tracker is not None:
            raise PipelineError("the inner pipeline of a group must be built without a tracker")
        self.pipeline = pipeline
        self.name = name
        self.in_arity = len(pipeline.sources)
        self.out_arity = len(pipeline.sinks)
        super().__init__()
        self._source_of = {port: k for k, port in enumerate(pipeline.sources)}

    @property
    def role(self):
        return self.name

    def input_type(self, pipe):
        pid, p = self.pipeline.sources[pipe]
        return self.pipeline.processors[pid].input_type(p)

    def output_type(self, pipe):
        pid, p = self.pipeline.sinks[pipe]
        return self.pipeline.processors[pid].output_type(p)

    def set_tracker(self, tracker):
        super().set_tracker(tracker)
        if tracker is not None and self.pipeline.tracker is None:
            self.pipeline.attach_tracker(EventTracker())

    def push(self, pipe, event):
        if self.tracker is not None:
            self.tracker.record_value(
                StreamPointer(self.id, "in", pipe, self._in_counts[pipe]), event
            )
        self._in_counts[pipe] += 1
        for k, value in self.pipeline.push(pipe, event):
            out = self.emit(k, value)
            if self.tracker is None:
                continue
            inner = self.pipeline.tracker
            for leaf in flatten(inner.get_provenance_tree(self.pipeline.sink_pointer(out, k))):
                src = self._source_of.get((leaf.processor, leaf.pipe))
                if src is not None:
                    self.associate(k, out, src, leaf.position)
        out, self._pending = self._pending, []
        return out

    def buffered_items(self):
        return sum(p.buffered_items() for p in self.pipeline)

    def private_trackers(self):
        if self.pipeline.tracker is not None:
            yield self.pipeline.tracker
        for p in self.pipeline:
            yield from p.private_trackers()


def chain(*processors: Processor, tracker: Optional[EventTracker] = None) -> Pipeline:
    """Pipeline made of unary processors connected one after the other."""
    p = Pipeline(tracker)
    prev = None
    for proc in processors:
        p.add(proc)
        if prev is not None:
            p.connect(prev, 0, proc, 0)
        prev = proc
    p.add_source(processors[0])
    p.add_sink(processors[-1])
    return p


__all__ = [
    "Fork",
    "ApplyFunction",
    "Cumulate",
    "CountDecimate",
    "Trim",
    "Filter",
    "TurnInto",
    "Window",
    "Slice",
    "GroupProcessor",
    "chain",
]
