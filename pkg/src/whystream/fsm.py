"""Moore machines with guarded transitions and loop-free explanations."""

from __future__ import annotations

from typing import Any, Callable, Hashable, Mapping, Optional, Sequence

from .core import Processor
from .errors import NoFireableTransition
from .events import ANY, TEXT
from .functions import EqualsConstant

Guard = Callable[[Any], bool]


class MooreMachine(Processor):
    """Deterministic Moore machine used as a stream processor.

    ``transitions`` maps a state to an ordered list of ``(guard, target)``
    pairs; the first guard returning true fires. ``outputs`` maps each
    state to the event emitted when the machine is in it.

    Lineage keeps a history of ``(state, event, position)`` triplets
    describing a loop-free path from the initial state to the current
    one. Each output is associated with every position on that path
    (including the event just read); afterwards, if the new state already
    appeared earlier on the path, everything after its earliest
    occurrence is dropped (back in the initial state, the whole path is).
    """

    def __init__(
        self,
        initial: Hashable,
        transitions: Mapping[Hashable, Sequence[tuple[Guard, Hashable]]],
        outputs: Mapping[Hashable, Any],
        name: str = "MooreMachine",
        event_type: str = ANY,
    ):
        self.initial = initial
        self.transitions = {s: list(t) for s, t in transitions.items()}
        self.outputs = dict(outputs)
        self.name = name
        self.event_type = event_type
        super().__init__()
        self.state = initial
        self.history: list[tuple[Hashable, Any, int]] = []

    @property
    def role(self):
        return self.name

    def input_type(self, pipe):
        return self.event_type

    @property
    def states(self) -> set:
        found = {self.initial, *self.transitions, *self.outputs}
        for moves in self.transitions.values():
            found.update(t for _, t in moves)
        return found

    def next_state(self, state: Hashable, event: Any) -> Hashable:
        for guard, target in self.transitions.get(state, ()):
            if guard(event):
                return target
        raise NoFireableTransition(f"no transition from state {state!r} on {event!r}")

    def process(self, front, pos):
        event = front[0]
        self.state = self.next_state(self.state, event)
        out = self.emit(0, self.outputs[self.state])
        if self.tracker is None:
            return
        v = self.history
        v.append((self.state, event, pos))
        for _, _, i in v:
            self.associate(0, out, 0, i)
        if self.state == self.initial:
            v.clear()
            return
        for k, (s, _, _) in enumerate(v):
            if s == self.state:
                del v[k + 1 :]
                break

    def buffered_items(self):
        return super().buffered_items() + 1 + len(self.history)


def otherwise(event: Any) -> bool:
    return True


def lifecycle_machine(
    start: str = "a", step: str = "b", loop: str = "c", end: str = "d"
) -> MooreMachine:
    """Process-lifecycle monitor over action names.

    Valid traces are ``a b (c b)* d``: ``c`` returns to the state reached
    after ``a``, ``d`` is only allowed right after ``b``. Every other move
    leads to a sink state outputting false; all other states output true.
    States are numbered 1 (initial) to 5 (sink).
    """
    is_ = EqualsConstant
    sink = 5
    transitions = {
        1: [(is_(start), 2), (otherwise, sink)],
        2: [(is_(step), 3), (otherwise, sink)],
        3: [(is_(loop), 2), (is_(end), 4), (otherwise, sink)],
        4: [(otherwise, sink)],
        sink: [(otherwise, sink)],
    }
    outputs = {1: True, 2: True, 3: True, 4: True, sink: False}
    return MooreMachine(1, transitions, outputs, name="Lifecycle", event_type=TEXT)


def replay(machine: MooreMachine, events: Sequence[Any], state: Optional[Hashable] = None):
    """Run the transition function only; return ``(final state, output)``."""
    s = machine.initial if state is None else state
    for e in events:
        s = machine.next_state(s, e)
    return s, machine.outputs[s]
