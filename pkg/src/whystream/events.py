"""Event values.

Events are plain Python values: ``bool``, ``int``/``float`` and ``str``,
plus :class:`Record` for named tuples such as ``(id, action)``.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any, Iterable, Union

from .errors import TypeMismatch

BOOLEAN = "boolean"
NUMBER = "number"
TEXT = "text"
TUPLE = "tuple"
ANY = "any"

TRUE_SYMBOL = "⊤"
FALSE_SYMBOL = "⊥"


class Record(Mapping):
    """Immutable, ordered mapping of field name to event.

    >>> r = Record(id=2, action="a")
    >>> r["action"], format_event(r)
    ('a', '(2,a)')
    """

    __slots__ = ("_items", "_index", "_hash")

    def __init__(self, items: Union[Mapping, Iterable[tuple]] = (), **fields: Any):
        pairs = list(items.items() if isinstance(items, Mapping) else items)
        pairs.extend(fields.items())
        index = {}
        for name, value in pairs:
            if not isinstance(name, str):
                raise TypeMismatch(f"field names must be text, got {name!r}")
            if name in index:
                raise ValueError(f"duplicate field name {name!r}")
            index[name] = value
        object.__setattr__(self, "_items", tuple(pairs))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Record is immutable")

    def __getitem__(self, name: str) -> Any:
        return self._index[name]

    def __iter__(self):
        return (name for name, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._items))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Record):
            return self._items == other._items
        return NotImplemented

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={v!r}" for k, v in self._items)
        return f"Record({inner})"

    def __deepcopy__(self, memo):
        return self


def type_of(event: Any) -> str:
    """Return the type tag of an event; raises on non-event values."""
    if isinstance(event, bool):
        return BOOLEAN
    if isinstance(event, (int, float)):
        return NUMBER
    if isinstance(event, str):
        return TEXT
    if isinstance(event, Record):
        return TUPLE
    raise TypeMismatch(f"not an event: {event!r}")


def compatible(produced: str, expected: str) -> bool:
    return produced == ANY or expected == ANY or produced == expected


def format_number(x: Union[int, float]) -> str:
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    if isinstance(x, float):
        return repr(x).rstrip("0").rstrip(".")
    return str(x)


def format_event(event: Any, ascii: bool = False) -> str:
    """Render an event the way logs and explanations print it."""
    if isinstance(event, bool):
        if ascii:
            return "T" if event else "F"
        return TRUE_SYMBOL if event else FALSE_SYMBOL
    if isinstance(event, (int, float)):
        return format_number(event)
    if isinstance(event, Record):
        return "(" + ",".join(format_event(v, ascii) for v in event.values()) + ")"
    return str(event)


def to_json(event: Any) -> Any:
    """Encode an event as a JSON-compatible value (tuples become tagged objects)."""
    if isinstance(event, Record):
        return {"tuple": {k: to_json(v) for k, v in event.items()}}
    type_of(event)
    if isinstance(event, float) and event.is_integer():
        return int(event)
    return event


def from_json(value: Any) -> Any:
    if isinstance(value, dict):
        return Record((k, from_json(v)) for k, v in value["tuple"].items())
    return value
