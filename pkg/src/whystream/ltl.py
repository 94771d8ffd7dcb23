"""Streaming LTL operators.

The i-th output of each operator is the verdict for the trace suffix
starting at input i. G, F and U hold back outputs until a verdict is
certain and then emit them in a burst; every output of a burst is
associated with the single input that settled it.

Boolean connectives are plain :class:`~whystream.processors.ApplyFunction`
instances over :mod:`whystream.functions`.
"""

from __future__ import annotations

from .core import Processor
from .errors import TypeMismatch
from .events import BOOLEAN


def _boolean(event, who):
    if not isinstance(event, bool):
        raise TypeMismatch(f"{who} expects boolean events, got {event!r}")
    return event


class _Burst(Processor):
    # value that settles every pending verdict, and the verdict it yields
    trigger = None

    def input_type(self, pipe):
        return BOOLEAN

    def output_type(self, pipe):
        return BOOLEAN

    @property
    def pending(self) -> int:
        return self._fronts - self._out_counts[0]

    def _settle(self, verdict: bool, in_pipe: int, pos: int) -> None:
        for _ in range(self._out_counts[0], pos + 1):
            out = self.emit(0, verdict)
            self.associate(0, out, in_pipe, pos)

    def process(self, front, pos):
        if _boolean(front[0], self.role) is self.trigger:
            self._settle(self.trigger, 0, pos)


class Globally(_Burst):
    """G: false from the first false input on; never true on a finite prefix."""

    trigger = False


class Eventually(_Burst):
    """F: true from the first true input on."""

    trigger = True


class Next(Processor):
    """X: output i is input i+1."""

    def process(self, front, pos):
        if pos >= 1:
            out = self.emit(0, front[0])
            self.associate(0, out, 0, pos)


class Until(_Burst):
    """U over a (left, right) front.

    Right true settles every pending position as true (explained by the
    right input); left and right both false settle them as false
    (explained by the left input).
    """

    in_arity = 2

    def process(self, front, pos):
        left, right = (_boolean(e, self.role) for e in front)
        if right:
            self._settle(True, 1, pos)
        elif not left:
            self._settle(False, 0, pos)
