"""
An LTL property on a CSV log
============================

``G (p < 0 -> X (action = a and X (action = a)))``: whenever ``p`` is
negative, the next two actions must both be ``a``. Temporal processors
hold back verdicts until they are certain, then emit them in a burst.
"""

import io

from whystream import EventTracker, Pipeline
from whystream.io import iter_log, render_flat, render_text
from whystream.ltl import Globally
from whystream.queries import QUERIES, ltl_property

csv = io.StringIO("b,1\nc,-2\na,0\nd,0\n")
log = list(iter_log(csv, QUERIES["ltl-property"].log_format))
p = ltl_property(EventTracker())
print("verdicts:", p.run(log))

###############################################################################
# Only two verdicts exist for four events: the ``X X`` part needs two
# events of lookahead. The first verdict is explained by the negative
# ``p`` and by the ``d`` that broke the promise.

dag = p.explain(0)
print(render_flat(dag), end="")
print(render_text(dag, ascii=True))

###############################################################################
# G on its own: every run of outputs up to a false input is explained by
# that single false input.

t = EventTracker()
g_pipe = Pipeline(t)
g = g_pipe.add(Globally())
g_pipe.add_source(g)
g_pipe.add_sink(g)
out = g_pipe.run([True, True, False, True, True, True, False])
for k in range(len(out)):
    print(k, out[k], "<-", sorted(i for _, i in t.inputs_of(g.id, 0, k)))
