"""
Process lifecycles, one slice per instance
==========================================

Each event is ``(id, action)``. Events are split by ``id``; every
instance must follow ``a b (c b)* d``. The query output is the
conjunction of the current verdict of every instance.
"""

from whystream import EventTracker
from whystream.events import Record
from whystream.fsm import lifecycle_machine, replay
from whystream.io import render_flat
from whystream.queries import process_lifecycle

pairs = [(1, "a"), (2, "a"), (2, "b"), (1, "b"), (2, "c"), (2, "d")]
log = [Record(id=i, action=a) for i, a in pairs]
p = process_lifecycle(EventTracker())
for k, v in enumerate(p.run(log)):
    print(k, "ok" if v else "violation")

###############################################################################
# Instance 2 ends with ``d`` right after ``c``. The explanation keeps only
# the events of that instance that still matter: its start and the bad
# ``d``. The ``b`` and ``c`` in between formed a loop and were dropped.

print(render_flat(p.explain(5), ascii=True), end="")

###############################################################################
# The explanation is enough on its own: replaying just those events on a
# fresh machine reaches the same rejecting state.

m = lifecycle_machine()
print("replay of a, d:", replay(m, ["a", "d"]))

###############################################################################
# Each slice keeps its own tracker and a map from local to global
# positions.

s = p.processors[0]
for key, state in s.slices().items():
    machine = state.processor.pipeline.processors[1]
    print(f"id {key}: global positions {state.positions}, machine state {machine.state}")
