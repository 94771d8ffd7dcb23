"""Explainable event-stream queries.

Processors are piped into a :class:`Pipeline`; give the pipeline an
:class:`EventTracker` and every output event can be traced back to the
input events that explain it::

    from whystream import EventTracker, queries

    tracker = EventTracker()
    p = queries.window_product(tracker)
    p.run([3, 1, 4, 0, 5, 9, 2])        # [True, False, False, False, True]
    p.explain(1).flatten()               # [#0.in0[3]]
"""

from .core import Pipeline, Processor
from .errors import (
    CycleDetected,
    DuplicateInputConnection,
    NoFireableTransition,
    ParseError,
    PositionNotYetProduced,
    TypeMismatch,
    UnknownProcessor,
    WhyStreamError,
)
from .events import Record, format_event
from .lineage import (
    Association,
    ConnectionRecord,
    EventTracker,
    ProvenanceDag,
    StreamPointer,
    flatten,
)

__version__ = "0.1.0"

__all__ = [
    "Pipeline",
    "Processor",
    "EventTracker",
    "StreamPointer",
    "Association",
    "ConnectionRecord",
    "ProvenanceDag",
    "flatten",
    "Record",
    "format_event",
    "WhyStreamError",
    "TypeMismatch",
    "CycleDetected",
    "DuplicateInputConnection",
    "UnknownProcessor",
    "PositionNotYetProduced",
    "NoFireableTransition",
    "ParseError",
]
