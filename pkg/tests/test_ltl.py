import time

import numpy as np
import pytest
from checks import exhaustive_unary, exhaustive_until
from conftest import ltl_log
from oracles import (
    all_bool_traces,
    decisive_g,
    definite_prefix,
    f_verdict,
    g_verdict,
    u_verdict,
    until_tables,
    x_verdict,
)

from whystream import EventTracker, Pipeline
from whystream.errors import TypeMismatch
from whystream.ltl import Eventually, Globally, Next, Until
from whystream.queries import ltl_property

T, F = True, False


def drive(proc, *streams):
    t = EventTracker()
    p = Pipeline(t)
    p.add(proc)
    for k in range(proc.in_arity):
        p.add_source(proc, k)
    p.add_sink(proc)
    out = p.feed(list(streams))[0]
    links = [sorted(t.inputs_of(proc.id, 0, k)) for k in range(len(out))]
    return out, links


class TestGlobally:
    def test_first_false_settles_three(self):
        out, links = drive(Globally(), [T, T, F, T])
        assert out == [F, F, F]
        assert links == [[(0, 2)]] * 3

    def test_second_zone(self):
        out, links = drive(Globally(), [T, T, F, T, T, T, F])
        assert out == [F] * 7
        assert links[:3] == [[(0, 2)]] * 3
        assert links[3:] == [[(0, 6)]] * 4

    def test_all_true_never_settles(self):
        g = Globally()
        out, _ = drive(g, [T] * 5)
        assert out == [] and g.pending == 5

    def test_non_boolean(self):
        with pytest.raises(TypeMismatch):
            drive(Globally(), [1])


class TestEventually:
    def test_burst(self):
        out, links = drive(Eventually(), [F, F, T])
        assert out == [T, T, T]
        assert links == [[(0, 2)]] * 3

    def test_all_false(self):
        assert drive(Eventually(), [F, F])[0] == []

    def test_one_pending(self):
        f = Eventually()
        out, links = drive(f, [T, F])
        assert out == [T] and links == [[(0, 0)]] and f.pending == 1


class TestNext:
    def test_shift(self):
        out, links = drive(Next(), [F, T])
        assert out == [T] and links == [[(0, 1)]]

    def test_single_input(self):
        assert drive(Next(), [T])[0] == []

    def test_any_events(self):
        assert drive(Next(), list("abc"))[0] == ["b", "c"]


class TestUntil:
    def test_right_settles_true(self):
        out, links = drive(Until(), [T, T], [F, T])
        assert out == [T, T] and links == [[(1, 1)]] * 2

    def test_both_false(self):
        out, links = drive(Until(), [F], [F])
        assert out == [F] and links == [[(0, 0)]]

    @pytest.mark.parametrize("left", [T, F])
    def test_right_immediately(self, left):
        out, links = drive(Until(), [left], [T])
        assert out == [T] and links == [[(1, 0)]]

    def test_non_boolean(self):
        with pytest.raises(TypeMismatch):
            drive(Until(), [T], ["x"])


def test_until_tables_agree_with_scalar_oracle():
    for n in range(7):
        count, mask = until_tables(n)
        for idx in range(4**n):
            codes = [(idx // 4 ** (n - 1 - k)) % 4 for k in range(n)]
            left = [c // 2 == 1 for c in codes]
            right = [c % 2 == 1 for c in codes]
            prefix = definite_prefix([u_verdict(left, right, j) for j in range(n)])
            assert count[idx] == len(prefix)
            assert mask[idx] == sum(1 << j for j, v in enumerate(prefix) if v)


@pytest.mark.parametrize(
    "make, verdict", [(Globally, g_verdict), (Eventually, f_verdict), (Next, x_verdict)]
)
def test_exhaustive_unary_operators(make, verdict):
    assert exhaustive_unary(make, verdict) is None


def test_exhaustive_until():
    start = time.perf_counter()
    bad, nodes = exhaustive_until(10)
    assert bad == 0
    assert nodes == sum(4**n for n in range(11))
    assert time.perf_counter() - start < 30


@pytest.mark.parametrize("n", range(1, 9))
def test_g_association_is_earliest_false(n):
    for trace in all_bool_traces(n):
        if len(trace) != n:
            continue
        out, links = drive(Globally(), list(trace))
        targets = [lk[0][1] for lk in links]
        assert targets == [decisive_g(trace, j) for j in range(len(out))]
        assert targets == sorted(targets)


def test_zone_targets_non_decreasing_until():
    rng = np.random.default_rng(5)
    for _ in range(300):
        n = int(rng.integers(1, 15))
        left, right = rng.random(n) < 0.7, rng.random(n) < 0.2
        out, links = drive(Until(), [bool(x) for x in left], [bool(x) for x in right])
        targets = [lk[0][1] for lk in links]
        assert all(len(lk) == 1 for lk in links)
        assert targets == sorted(targets)
        assert all(t >= j for j, t in enumerate(targets))


def test_composed_property():
    p = ltl_property(EventTracker())
    assert p.run(ltl_log()) == [F, F]
    assert [q.position for q in p.explain(0).flatten()] == [1, 3]
    # the implication only sees two fronts, so no third verdict can exist
    g = p.processors[p.sinks[0][0]]
    assert g.input_count() == 2 and g.pending == 0
