"""Acceptance criteria, each run at its stated tolerance.

Every test records one PASS/FAIL line through the ``acceptance_report``
fixture; the lines are printed in the terminal summary.
"""

import io
import random
import time

import pytest
from checks import drive_machine, exhaustive_unary, exhaustive_until, replay_violations
from conftest import WINDOW_LOG, lifecycle_log, ltl_log
from oracles import counterfactual_violations, f_verdict, g_verdict, x_verdict
from test_functions import RULES

from whystream import EventTracker, Pipeline
from whystream.bench import PER_ASSOCIATION, run_bench
from whystream.cli import main
from whystream.fsm import lifecycle_machine
from whystream.ltl import Eventually, Globally, Next
from whystream.queries import QUERIES, ltl_property, process_lifecycle, window_product

T, F = True, False


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue()


def test_ac1_exact_outputs(acceptance_report, tmp_path):
    start = time.perf_counter()
    got = {
        "window-product": window_product().run(WINDOW_LOG),
        "process-lifecycle": process_lifecycle().run(lifecycle_log()),
        "ltl-property": ltl_property().run(ltl_log()),
    }
    want = {
        "window-product": [T, F, F, F, T],
        "process-lifecycle": [T, T, T, T, T, F],
        "ltl-property": [F, F],
    }
    path = tmp_path / "w.txt"
    path.write_text("\n".join(map(str, WINDOW_LOG)) + "\n")
    code, text = _cli("run", "--query", "window-product", "--input", str(path))
    elapsed = time.perf_counter() - start
    ok = got == want and code == 0 and text == "0 ⊤\n1 ⊥\n2 ⊥\n3 ⊥\n4 ⊤\n" and elapsed < 1.0
    acceptance_report("AC1 exact outputs", ok, f"{got} in {elapsed:.3f} s (limit 1 s)")
    assert got == want
    assert code == 0 and text == "0 ⊤\n1 ⊥\n2 ⊥\n3 ⊥\n4 ⊤\n"
    assert elapsed < 1.0


def test_ac2_exact_explanations(acceptance_report):
    got = {}
    for name, build, log, pos in [
        ("window-product", window_product, WINDOW_LOG, 1),
        ("process-lifecycle", process_lifecycle, lifecycle_log(), 5),
        ("ltl-property", ltl_property, ltl_log(), 0),
    ]:
        p = build(EventTracker())
        p.run(log)
        got[name] = {q.position for q in p.explain(pos).flatten()}
    want = {"window-product": {3}, "process-lifecycle": {1, 5}, "ltl-property": {1, 3}}
    acceptance_report("AC2 exact explanations", got == want, str(got))
    assert got == want


def test_ac3_moore_machine(acceptance_report):
    _, e1 = drive_machine(lifecycle_machine(), list("abcb"))
    _, e2 = drive_machine(lifecycle_machine(), list("abcbcba"))
    exact = e1[2:] == [[0, 1, 2], [0, 3]] and e2[-1] == [0, 5, 6]
    rng = random.Random(2024)
    traces = [[rng.choice("abcd") for _ in range(rng.randint(1, 12))] for _ in range(1000)]
    failures = [t for t in traces if replay_violations(t)]
    ok = exact and not failures
    acceptance_report(
        "AC3 Moore machine",
        ok,
        f"abcb -> {e1[2:]}, abcbcba -> {e2[-1]}, replay failures {len(failures)}/1000",
    )
    assert e1[2:] == [[0, 1, 2], [0, 3]]
    assert e2[-1] == [0, 5, 6]
    assert failures == []


def test_ac4_ltl_zones_and_oracle(acceptance_report):
    start = time.perf_counter()
    t = EventTracker()
    p = Pipeline(t)
    g = p.add(Globally())
    p.add_source(g)
    p.add_sink(g)
    out = p.run([T, T, F, T, T, T, F])
    zones = [min(i for _, i in t.inputs_of(g.id, 0, k)) for k in range(len(out))]
    zones_ok = out == [F] * 7 and zones == [2, 2, 2, 6, 6, 6, 6]
    unary = {
        name: exhaustive_unary(make, verdict, 10)
        for name, make, verdict in [
            ("G", Globally, g_verdict),
            ("F", Eventually, f_verdict),
            ("X", Next, x_verdict),
        ]
    }
    until_bad, nodes = exhaustive_until(10)
    elapsed = time.perf_counter() - start
    ok = zones_ok and all(v is None for v in unary.values()) and until_bad == 0 and elapsed < 30
    acceptance_report(
        "AC4 LTL zones and oracle",
        ok,
        f"zones {zones}; G/F/X mismatches {[k for k, v in unary.items() if v]}; "
        f"U mismatches {until_bad}/{nodes} traces; {elapsed:.1f} s (limit 30 s)",
    )
    assert zones_ok
    assert all(v is None for v in unary.values())
    assert until_bad == 0
    assert elapsed < 30


def test_ac5_counterfactual_soundness(acceptance_report):
    failures = {f.name: counterfactual_violations(f, d, n) for f, d, n in RULES}
    failures = {k: v for k, v in failures.items() if v}
    acceptance_report(
        "AC5 function lineage soundness", not failures, f"{len(RULES)} rules, failures {failures}"
    )
    assert not failures


@pytest.mark.parametrize("name", list(QUERIES))
def test_ac6_tracker_transparency(acceptance_report, name):
    q = QUERIES[name]
    rng = random.Random(name)
    diffs = 0
    for seed in range(100):
        log = q.synthetic_log(rng.randint(0, 200), seed=seed)
        if q.build(EventTracker()).run(log) != q.build(None).run(log):
            diffs += 1
    acceptance_report(f"AC6 tracker transparency [{name}]", diffs == 0, f"{diffs}/100 logs differ")
    assert diffs == 0


def test_ac7_overhead_shape(acceptance_report):
    start = time.perf_counter()
    problems = []
    details = []
    for name in QUERIES:
        off = run_bench(name, 10000, False, samples=10)
        on = run_bench(name, 10000, True, samples=10)
        _, r2 = on.linear_fit()
        totals = [s.total for s in off.samples]
        details.append(
            f"{name}: off {off.throughput:.0f} Hz, on {on.throughput:.0f} Hz, R² {r2:.5f}, "
            f"off spread {max(totals) - min(totals)} B"
        )
        if not on.throughput < off.throughput:
            problems.append(f"{name} throughput")
        if r2 < 0.99:
            problems.append(f"{name} R²")
        if name != "process-lifecycle" and max(totals) - min(totals) > PER_ASSOCIATION:
            problems.append(f"{name} not flat")
    elapsed = time.perf_counter() - start
    if elapsed >= 120:
        problems.append("runtime")
    acceptance_report(
        "AC7 overhead shape", not problems, "; ".join(details) + f"; {elapsed:.1f} s (limit 120 s)"
    )
    assert problems == []
