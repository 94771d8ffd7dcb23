"""Built-in example queries and seeded synthetic log generators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Optional

from .core import Pipeline
from .events import Record
from .fsm import lifecycle_machine
from .functions import (
    Conjunction,
    EqualsConstant,
    FetchField,
    Implication,
    LessThanConstant,
    Multiplication,
    NotEquals,
)
from .io import NUMBERS, LogFormat
from .lineage import EventTracker
from .ltl import Globally, Next
from .processors import (
    ApplyFunction,
    Cumulate,
    Fork,
    GroupProcessor,
    Slice,
    TurnInto,
    Window,
    chain,
)


def window_product(tracker: Optional[EventTracker] = None, width: int = 3) -> Pipeline:
    """Is the product of every ``width`` successive numbers non-zero?"""
    p = Pipeline(tracker)
    fork = p.add(Fork(2))
    window = p.add(Window(Cumulate(Multiplication()), width))
    zero = p.add(TurnInto(0))
    neq = p.add(ApplyFunction(NotEquals()))
    p.connect(fork, 0, window, 0)
    p.connect(fork, 1, zero, 0)
    p.connect(window, 0, neq, 0)
    p.connect(zero, 0, neq, 1)
    p.add_source(fork)
    p.add_sink(neq)
    return p


def process_lifecycle(tracker: Optional[EventTracker] = None) -> Pipeline:
    """Does every process instance (sliced on ``id``) follow its lifecycle?"""
    per_instance = GroupProcessor(
        chain(ApplyFunction(FetchField("action")), lifecycle_machine()),
        name="FetchAction→Lifecycle",
    )
    p = Pipeline(tracker)
    s = p.add(Slice(FetchField("id"), per_instance, Conjunction(arity=None)))
    p.add_source(s)
    p.add_sink(s)
    return p


def ltl_property(tracker: Optional[EventTracker] = None, action: str = "a") -> Pipeline:
    """G (p < 0 -> X (action = a and X (action = a))) over (action, p) tuples."""
    p = Pipeline(tracker)
    fork = p.add(Fork(2))
    get_p = p.add(ApplyFunction(FetchField("p")))
    negative = p.add(ApplyFunction(LessThanConstant(0)))
    get_action = p.add(ApplyFunction(FetchField("action")))
    is_a = p.add(ApplyFunction(EqualsConstant(action)))
    fork_a = p.add(Fork(2))
    next_a = p.add(Next())
    both = p.add(ApplyFunction(Conjunction()))
    next_both = p.add(Next())
    implies = p.add(ApplyFunction(Implication()))
    globally = p.add(Globally())

    p.connect(fork, 0, get_p, 0)
    p.connect(get_p, 0, negative, 0)
    p.connect(negative, 0, implies, 0)
    p.connect(fork, 1, get_action, 0)
    p.connect(get_action, 0, is_a, 0)
    p.connect(is_a, 0, fork_a, 0)
    p.connect(fork_a, 0, both, 0)
    p.connect(fork_a, 1, next_a, 0)
    p.connect(next_a, 0, both, 1)
    p.connect(both, 0, next_both, 0)
    p.connect(next_both, 0, implies, 1)
    p.connect(implies, 0, globally, 0)
    p.add_source(fork)
    p.add_sink(globally)
    return p


# synthetic logs


def gen_numbers(n: int, rng: random.Random) -> list[int]:
    return [rng.randint(0, 9) for _ in range(n)]


def gen_lifecycle(n: int, rng: random.Random, ids: int = 5, p_end: float = 0.02) -> list[Record]:
    """Interleaved ``(id, action)`` events, each instance walking a b (c b)* d.

    Once an instance has ended it starts over with ``a``, which the
    lifecycle machine rejects; that gives both verdicts on long logs.
    """
    last = {}
    out = []
    for _ in range(n):
        i = rng.randint(1, ids)
        prev = last.get(i)
        if prev is None or prev == "d":
            act = "a"
        elif prev in ("a", "c"):
            act = "b"
        else:
            act = "d" if rng.random() < p_end else "c"
        last[i] = act
        out.append(Record(id=i, action=act))
    return out


def gen_actions(n: int, rng: random.Random, p_negative: float = 0.05) -> list[Record]:
    out = []
    for _ in range(n):
        act = "a" if rng.random() < 0.6 else rng.choice("bcd")
        p = -rng.randint(1, 9) if rng.random() < p_negative else rng.randint(0, 9)
        out.append(Record(action=act, p=p))
    return out


@dataclass(frozen=True)
class BuiltinQuery:
    name: str
    build: Callable[[Optional[EventTracker]], Pipeline]
    log_format: LogFormat
    generate: Callable[[int, random.Random], list[Any]]

    def synthetic_log(self, n: int, seed: int = 0) -> list[Any]:
        return self.generate(n, random.Random(seed))


QUERIES = {
    "window-product": BuiltinQuery(
        "window-product", window_product, LogFormat(NUMBERS), gen_numbers
    ),
    "process-lifecycle": BuiltinQuery(
        "process-lifecycle",
        process_lifecycle,
        LogFormat.csv(("id", "number"), ("action", "text")),
        gen_lifecycle,
    ),
    "ltl-property": BuiltinQuery(
        "ltl-property",
        ltl_property,
        LogFormat.csv(("action", "text"), ("p", "number")),
        gen_actions,
    ),
}


def get_query(name: str) -> BuiltinQuery:
    try:
        return QUERIES[name]
    except KeyError:
        raise KeyError(f"unknown query {name!r}; choose from {', '.join(QUERIES)}") from None
