"""Tracker overhead benchmark: throughput and retained-memory growth.

Memory is not measured on the Python heap. It is estimated with a fixed
size model, so the numbers are reproducible across machines:

==========================  ======  ===============================
item                        bytes   counted per
==========================  ======  ===============================
tracker container           256     tracker (main and private)
association                 48      stored (output, input) pair
recorded event value        40      event occurrence seen by tracker
connection record           32      pipe-to-pipe connection
processor registration      16      processor known to the tracker
processor object            64      processor
buffered event slot         24      event or counter held by a processor
==========================  ======  ===============================
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Union

import numpy as np

from .core import Pipeline, Processor
from .lineage import EventTracker
from .queries import get_query

TRACKER_BASE = 256
PER_ASSOCIATION = 48
PER_VALUE = 40
PER_CONNECTION = 32
PER_PROCESSOR_REF = 16
PROCESSOR_BASE = 64
PER_BUFFERED_EVENT = 24

SIZE_MODEL_HEADER = (
    f"size model: tracker {TRACKER_BASE} B + {PER_ASSOCIATION} B/association"
    f" + {PER_VALUE} B/value + {PER_CONNECTION} B/connection"
    f" + {PER_PROCESSOR_REF} B/processor; processor {PROCESSOR_BASE} B"
    f" + {PER_BUFFERED_EVENT} B/buffered slot"
)


def estimate_retained_bytes(obj: Union[EventTracker, Processor, None]) -> int:
    """Deterministic size estimate of a tracker or a processor."""
    if obj is None:
        return 0
    if isinstance(obj, EventTracker):
        return (
            TRACKER_BASE
            + obj.association_count * PER_ASSOCIATION
            + len(obj.values) * PER_VALUE
            + len(obj.connections) * PER_CONNECTION
            + len(obj.processors) * PER_PROCESSOR_REF
        )
    if isinstance(obj, Processor):
        return PROCESSOR_BASE + obj.buffered_items() * PER_BUFFERED_EVENT
    raise TypeError(f"cannot size {obj!r}")


def pipeline_bytes(p: Pipeline) -> tuple[int, int]:
    """``(tracker bytes, processor bytes)``; private trackers count as tracker bytes."""
    tracker = estimate_retained_bytes(p.tracker)
    procs = 0
    for proc in p:
        procs += estimate_retained_bytes(proc)
        tracker += sum(estimate_retained_bytes(t) for t in proc.private_trackers())
    return tracker, procs


@dataclass
class MemorySample:
    events: int
    tracker_bytes: int
    processor_bytes: int

    @property
    def total(self) -> int:
        return self.tracker_bytes + self.processor_bytes


@dataclass
class BenchReport:
    query: str
    tracker: bool
    events: int
    outputs: int
    seconds: float
    samples: list[MemorySample] = field(default_factory=list)

    @property
    def throughput(self) -> float:
        return self.events / self.seconds if self.seconds > 0 else float("inf")

    def linear_fit(self) -> tuple[float, float]:
        """Slope (bytes per event) and R² of total memory against events consumed."""
        x = np.array([s.events for s in self.samples], dtype=float)
        y = np.array([s.total for s in self.samples], dtype=float)
        if len(x) < 2:
            return 0.0, 1.0
        slope, intercept = np.polyfit(x, y, 1)
        resid = y - (slope * x + intercept)
        ss_tot = float(np.sum((y - y.mean()) ** 2))
        if ss_tot == 0:
            return float(slope), 1.0
        return float(slope), 1.0 - float(np.sum(resid**2)) / ss_tot

    def to_dict(self) -> dict:
        slope, r2 = self.linear_fit()
        d = asdict(self)
        d["throughput"] = self.throughput
        d["bytes_per_event"] = slope
        d["r2"] = r2
        d["size_model"] = SIZE_MODEL_HEADER
        return d

    def format_table(self) -> str:
        slope, r2 = self.linear_fit()
        lines = [
            f"# {SIZE_MODEL_HEADER}",
            f"query: {self.query}  tracker: {'on' if self.tracker else 'off'}",
            f"events: {self.events}  outputs: {self.outputs}  time: {self.seconds:.3f} s"
            f"  throughput: {self.throughput:.1f} Hz",
            f"memory growth: {slope:.1f} B/event (R² {r2:.4f})",
            f"{'events':>10} {'tracker B':>12} {'processors B':>14} {'total B':>12}",
        ]
        for s in self.samples:
            lines.append(
                f"{s.events:>10} {s.tracker_bytes:>12} {s.processor_bytes:>14} {s.total:>12}"
            )
        return "\n".join(lines) + "\n"


def run_bench(
    query: str,
    length: int,
    tracker: bool,
    samples: int = 10,
    seed: int = 0,
    repeat: int = 1,
    log: Optional[list] = None,
) -> BenchReport:
    """Run one built-in query on a synthetic log of ``length`` events.

    Memory is sampled every ``length / samples`` events; sampling time is
    excluded from the throughput. With ``repeat > 1`` the fastest run is
    kept (the memory samples are identical across runs).
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    q = get_query(query)
    events = q.synthetic_log(length, seed) if log is None else log
    marks = sorted({max(1, length * k // samples) for k in range(1, samples + 1)})
    best = None
    for _ in range(max(1, repeat)):
        p = q.build(EventTracker() if tracker else None)
        elapsed, outputs, start = 0.0, 0, 0
        taken = []
        for m in marks:
            t0 = time.perf_counter()
            for e in events[start:m]:
                outputs += len(p.push(0, e))
            elapsed += time.perf_counter() - t0
            start = m
            taken.append(MemorySample(m, *pipeline_bytes(p)))
        report = BenchReport(query, tracker, length, outputs, elapsed, taken)
        if best is None or report.seconds < best.seconds:
            best = report
    return best


def reports_to_json(reports: list[BenchReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=1, ensure_ascii=False)
