"""
Why is the window product zero?
===============================

A stream of numbers goes in; for every run of three successive numbers
the query says whether their product is non-zero. With an event tracker
attached, any output can be traced back to the inputs that caused it.
"""

from whystream import EventTracker
from whystream.io import export_dot, render_flat, render_text
from whystream.queries import window_product

###############################################################################
# Build the query twice: once bare, once with a tracker.

log = [3, 1, 4, 0, 5, 9, 2]
bare = window_product()
tracked = window_product(EventTracker())

print("outputs:", bare.run(log))
assert tracked.run(log) == window_product().run(log)

###############################################################################
# Output 1 is false. The window it covers is 1, 4, 0, but only the zero
# matters: multiplication by zero ignores the other factors, and the
# constant branch of the query depends on no input at all.

dag = tracked.explain(1)
print(render_text(dag))
print("flattened:")
print(render_flat(dag), end="")

###############################################################################
# The same graph in DOT, ready for ``dot -Tpng``.

print(export_dot(dag, ascii=True))
