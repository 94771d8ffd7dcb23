import pytest
from conftest import WINDOW_LOG, lifecycle_log

from whystream import EventTracker, Pipeline
from whystream.errors import CycleDetected, DuplicateInputConnection, PipelineError, TypeMismatch
from whystream.events import Record, format_event, type_of
from whystream.functions import Addition, Conjunction, FetchField, Identity, Negation
from whystream.lineage import ConnectionRecord
from whystream.processors import ApplyFunction, CountDecimate, Filter, Fork, TurnInto
from whystream.queries import QUERIES, process_lifecycle, window_product


def test_fresh_id_counts_from_zero():
    p = Pipeline()
    assert p.fresh_id() == 0
    p = Pipeline()
    for _ in range(3):
        p.add(Fork())
    assert p.fresh_id() == 3
    assert p.fresh_id() != p.fresh_id()


def test_processor_cannot_join_two_pipelines():
    f = Pipeline().add(Fork())
    with pytest.raises(PipelineError):
        Pipeline().add(f)


class TestConnect:
    def test_with_tracker_registers_connection(self):
        t = EventTracker()
        p = window_product(t)
        assert (0, 0, 1, 0) in p.connections
        assert ConnectionRecord((0, 0), (1, 0)) in t.connections
        assert all(proc.tracker is t for proc in p)

    def test_without_tracker(self):
        p = Pipeline()
        a, b = p.add(Fork(1)), p.add(Fork(1))
        p.connect(a, 0, b, 0)
        assert (a.id, 0, b.id, 0) in p.connections
        assert b.tracker is None

    def test_self_loop_is_a_cycle(self):
        p = Pipeline()
        a = p.add(Fork(1))
        with pytest.raises(CycleDetected):
            p.connect(a, 0, a, 0)

    def test_longer_cycle(self):
        p = Pipeline()
        a, b = p.add(ApplyFunction(Addition())), p.add(Fork(1))
        p.connect(a, 0, b, 0)
        with pytest.raises(CycleDetected):
            p.connect(b, 0, a, 1)

    def test_duplicate_input(self):
        p = Pipeline()
        a, b, c = p.add(Fork(1)), p.add(Fork(1)), p.add(Fork(1))
        p.connect(a, 0, c, 0)
        with pytest.raises(DuplicateInputConnection):
            p.connect(b, 0, c, 0)

    def test_type_mismatch(self):
        p = Pipeline()
        zero = p.add(TurnInto(0))
        neg = p.add(ApplyFunction(Negation()))
        with pytest.raises(TypeMismatch):
            p.connect(zero, 0, neg, 0)
        # untyped endpoints always connect
        p.connect(p.add(Fork(1)), 0, neg, 0)

    def test_by_id(self):
        p = Pipeline()
        a, b = p.add(Fork(1)), p.add(Fork(1))
        p.connect(a.id, 0, b.id, 0)
        with pytest.raises(PipelineError):
            p.connect(a.id, 0, 99, 0)


class TestFeed:
    def test_window_product(self):
        assert window_product().run(WINDOW_LOG) == [True, False, False, False, True]

    def test_lifecycle(self):
        assert process_lifecycle().run(lifecycle_log()) == [True] * 5 + [False]

    @pytest.mark.parametrize("name", list(QUERIES))
    def test_empty_input(self, name):
        assert QUERIES[name].build(None).run([]) == []

    @pytest.mark.parametrize("name", list(QUERIES))
    def test_deterministic(self, name):
        log = QUERIES[name].synthetic_log(200, seed=3)
        assert QUERIES[name].build(None).run(log) == QUERIES[name].build(None).run(log)

    def test_binary_processor_buffers_the_lagging_pipe(self):
        p = Pipeline()
        fork = p.add(Fork(2))
        dec = p.add(CountDecimate(2))
        add = p.add(ApplyFunction(Addition()))
        p.connect(fork, 0, dec, 0)
        p.connect(fork, 1, add, 1)
        p.connect(dec, 0, add, 0)
        p.add_source(fork)
        p.add_sink(add)
        # x0+x0, x2+x1, x4+x2
        assert p.run([1, 2, 3, 4, 5]) == [2, 5, 8]
        assert add.buffered_items() == 2

    def test_two_sources_two_sinks(self):
        p = Pipeline()
        f = p.add(Filter())
        neg = p.add(ApplyFunction(Negation()))
        fork = p.add(Fork(2))
        p.connect(neg, 0, fork, 0)
        p.connect(fork, 0, f, 1)
        p.add_source(f, 0)
        p.add_source(neg)
        p.add_sink(f)
        p.add_sink(fork, 1)
        out = p.feed([["x", "y", "z"], [False, True, False]])
        assert out == [["x", "z"], [True, False, True]]

    def test_feed_checks_stream_count(self):
        with pytest.raises(PipelineError):
            window_product().feed([])

    def test_errors_propagate(self):
        p = Pipeline()
        get = p.add(ApplyFunction(FetchField("id")))
        p.add_source(get)
        p.add_sink(get)
        with pytest.raises(TypeMismatch):
            p.run([Record(action="a")])

    def test_output_counts_never_decrease(self):
        p = window_product()
        seen = []
        for e in WINDOW_LOG:
            p.push(0, e)
            seen.append([proc.output_count(k) for proc in p for k in range(proc.out_arity)])
        for before, after in zip(seen, seen[1:]):
            assert all(a >= b for a, b in zip(after, before))


def test_tracker_off_stores_nothing():
    p = window_product()
    p.run(WINDOW_LOG)
    assert all(proc.tracker is None for proc in p)
    with pytest.raises(PipelineError):
        p.explain(0)


def test_record_is_an_immutable_ordered_mapping():
    r = Record(id=2, action="a")
    assert list(r) == ["id", "action"] and r["id"] == 2
    assert r == Record([("id", 2), ("action", "a")]) and hash(r) == hash(Record(id=2, action="a"))
    assert r != Record(action="a", id=2)
    with pytest.raises(AttributeError):
        r.x = 1
    with pytest.raises(ValueError):
        Record([("a", 1), ("a", 2)])
    assert format_event(r) == "(2,a)"
    assert type_of(r) == "tuple" and type_of(True) == "boolean" and type_of(1.5) == "number"


@pytest.mark.parametrize(
    "value, text, ascii_text",
    [(True, "⊤", "T"), (False, "⊥", "F"), (2.0, "2", "2"), (-2, "-2", "-2"), (0.5, "0.5", "0.5")],
)
def test_format_event(value, text, ascii_text):
    assert format_event(value) == text
    assert format_event(value, ascii=True) == ascii_text


def test_identity_chain():
    p = Pipeline(EventTracker())
    ident = p.add(ApplyFunction(Identity()))
    p.add_source(ident)
    p.add_sink(ident)
    assert p.run(["a", "b"]) == ["a", "b"]


def test_variadic_function_needs_arity():
    with pytest.raises(TypeMismatch):
        ApplyFunction(Conjunction(arity=None))
    assert ApplyFunction(Conjunction(arity=None), arity=3).in_arity == 3
