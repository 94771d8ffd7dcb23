"""Functions over events that also say which arguments explain their value.

``f.evaluate(*args)`` returns ``(value, indices)``: ``indices`` is the
non-empty set of argument positions that suffice to explain ``value``.
Most functions need all their arguments; functions with an absorbing
element (0 for multiplication, false for conjunction, true for
disjunction) point to the lowest-index absorbing argument only.
"""

from __future__ import annotations

import operator
from typing import Any, Callable, Optional

from .errors import DomainError, TypeMismatch
from .events import ANY, BOOLEAN, NUMBER, TUPLE, Record, type_of


def _all(n: int) -> frozenset[int]:
    return frozenset(range(n))


def _need(value: Any, tag: str, fname: str) -> None:
    if type_of(value) != tag:
        raise TypeMismatch(f"{fname} expects {tag} arguments, got {value!r}")


class Function:
    """Base class. ``arity`` is ``None`` for variadic functions."""

    arity: Optional[int] = 1
    input_type = ANY
    output_type = ANY

    @property
    def name(self) -> str:
        return type(self).__name__

    def __repr__(self):
        return f"{self.name}()"

    def evaluate(self, *args) -> tuple[Any, frozenset[int]]:
        raise NotImplementedError

    def __call__(self, *args) -> Any:
        return self.evaluate(*args)[0]

    def _check_arity(self, args) -> None:
        if self.arity is not None and len(args) != self.arity:
            raise TypeMismatch(f"{self.name} takes {self.arity} arguments, got {len(args)}")
        if self.arity is None and not args:
            raise TypeMismatch(f"{self.name} needs at least one argument")


def eval_with_lineage(f: Function, *args) -> tuple[Any, frozenset[int]]:
    return f.evaluate(*args)


class _Strict(Function):
    """Value depends on every argument."""

    op: Callable = None
    input_type = NUMBER
    output_type = NUMBER

    def evaluate(self, *args):
        self._check_arity(args)
        if self.input_type != ANY:
            for a in args:
                _need(a, self.input_type, self.name)
        return self.compute(*args), _all(len(args))

    def compute(self, *args):
        return type(self).op(*args)


class Addition(_Strict):
    arity = 2
    op = operator.add


class Subtraction(_Strict):
    arity = 2
    op = operator.sub


class Division(_Strict):
    arity = 2

    def compute(self, x, y):
        if y == 0:
            raise DomainError("division by zero")
        return x / y


class LessThan(_Strict):
    arity = 2
    output_type = BOOLEAN
    op = operator.lt


class GreaterThan(_Strict):
    arity = 2
    output_type = BOOLEAN
    op = operator.gt


class Negation(_Strict):
    input_type = BOOLEAN
    output_type = BOOLEAN
    op = operator.not_


class Identity(Function):
    def evaluate(self, *args):
        self._check_arity(args)
        return args[0], frozenset({0})


def _same(x, y) -> bool:
    # True == 1 in Python; events of different types are never equal
    return type_of(x) == type_of(y) and x == y


class Equals(Function):
    arity = 2
    output_type = BOOLEAN

    def evaluate(self, *args):
        self._check_arity(args)
        return _same(*args), _all(2)


class NotEquals(Function):
    arity = 2
    output_type = BOOLEAN

    def evaluate(self, *args):
        self._check_arity(args)
        return not _same(*args), _all(2)


class _Absorbing(Function):
    """n-ary operator with an absorbing element that short-circuits lineage."""

    arity = 2
    absorbing: Any = None
    unit: Any = None

    def __init__(self, arity: Optional[int] = 2):
        self.arity = arity

    def evaluate(self, *args):
        self._check_arity(args)
        for a in args:
            _need(a, self.input_type, self.name)
        for i, a in enumerate(args):
            if a == self.absorbing:
                return a, frozenset({i})
        return self.combine(args), _all(len(args))


class Multiplication(_Absorbing):
    input_type = NUMBER
    output_type = NUMBER
    absorbing = 0
    unit = 1

    def combine(self, args):
        out = 1
        for a in args:
            out = out * a
        return out


class Conjunction(_Absorbing):
    input_type = BOOLEAN
    output_type = BOOLEAN
    absorbing = False
    unit = True

    def combine(self, args):
        return True


class Disjunction(_Absorbing):
    input_type = BOOLEAN
    output_type = BOOLEAN
    absorbing = True
    unit = False

    def combine(self, args):
        return False


class Implication(Function):
    arity = 2
    input_type = BOOLEAN
    output_type = BOOLEAN

    def evaluate(self, *args):
        self._check_arity(args)
        a, c = args
        _need(a, BOOLEAN, self.name)
        _need(c, BOOLEAN, self.name)
        if not a:
            return True, frozenset({0})
        if c:
            return True, frozenset({1})
        return False, _all(2)


class FetchField(Function):
    """Read one field of a tuple event."""

    input_type = TUPLE

    def __init__(self, field: str):
        self.field = field

    def __repr__(self):
        return f"FetchField({self.field!r})"

    def evaluate(self, *args):
        self._check_arity(args)
        (record,) = args
        if not isinstance(record, Record):
            raise TypeMismatch(f"cannot fetch field {self.field!r} from {record!r}")
        try:
            return record[self.field], frozenset({0})
        except KeyError:
            raise TypeMismatch(f"tuple {record!r} has no field {self.field!r}") from None


class EqualsConstant(Function):
    output_type = BOOLEAN

    def __init__(self, constant: Any):
        type_of(constant)
        self.constant = constant

    def __repr__(self):
        return f"EqualsConstant({self.constant!r})"

    def evaluate(self, *args):
        self._check_arity(args)
        return _same(args[0], self.constant), frozenset({0})


class LessThanConstant(Function):
    input_type = NUMBER
    output_type = BOOLEAN

    def __init__(self, constant):
        self.constant = constant

    def __repr__(self):
        return f"LessThanConstant({self.constant!r})"

    def evaluate(self, *args):
        self._check_arity(args)
        _need(args[0], NUMBER, self.name)
        return args[0] < self.constant, frozenset({0})


#: functions with a neutral element usable as a Cumulate seed
IDENTITY_ELEMENTS = {Addition: 0, Multiplication: 1, Conjunction: True, Disjunction: False}


def identity_element(f: Function) -> Any:
    for cls, unit in IDENTITY_ELEMENTS.items():
        if isinstance(f, cls):
            return unit
    raise TypeMismatch(f"{f.name} has no identity element; pass a seed explicitly")


__all__ = [
    "Function",
    "eval_with_lineage",
    "Addition",
    "Subtraction",
    "Multiplication",
    "Division",
    "Conjunction",
    "Disjunction",
    "Implication",
    "Negation",
    "Identity",
    "Equals",
    "NotEquals",
    "LessThan",
    "GreaterThan",
    "FetchField",
    "EqualsConstant",
    "LessThanConstant",
    "identity_element",
]
