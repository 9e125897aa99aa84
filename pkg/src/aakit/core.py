"""Sparse associative arrays over string keys, with pluggable semirings.

An array is a finite map from (row key, column key) pairs to values that
are either 64-bit floats or UTF-8 text.  The empty values 0.0 and "" are
never stored, so row and column key sets are always derivable from the
entries and no row or column can be entirely empty.  Keys compare
bytewise on their UTF-8 encoding (identical to Python's str ordering).
Arrays are immutable; every operation returns a new array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Mapping

Value = float | str
Triple = tuple[str, str, Value]

_FORBIDDEN_IN_KEYS = ("\t", "\n", "\r")


class BadKeyError(ValueError):
    """Key is not non-empty UTF-8 text free of TAB, LF and CR."""


class BadValueError(ValueError):
    """Value cannot be stored: non-finite number, or text with a line break."""


class DomainError(TypeError):
    """Text value reached a numeric-only semiring or a numeric analysis."""


def check_key(key: str) -> str:
    """Validate one key, returning it unchanged."""
    if not isinstance(key, str):
        raise BadKeyError(f"key must be text, got {type(key).__name__}")
    if not key:
        raise BadKeyError("key must be non-empty")
    for ch in _FORBIDDEN_IN_KEYS:
        if ch in key:
            raise BadKeyError(f"key {key!r} contains a forbidden control character")
    try:
        key.encode("utf-8")
    except UnicodeEncodeError as exc:
        raise BadKeyError(f"key {key!r} is not encodable as UTF-8") from exc
    return key


def check_value(value) -> Value:
    """Normalize a raw value to a storable one; ints become floats.

    Line breaks are rejected in text because the triple file format is
    LF-framed with no escaping; TAB in text is fine.
    """
    if isinstance(value, str):
        if "\n" in value or "\r" in value:
            raise BadValueError(f"text value {value!r} contains a line break")
        try:
            value.encode("utf-8")
        except UnicodeEncodeError as exc:
            raise BadValueError(f"text value {value!r} is not encodable as UTF-8") from exc
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise BadValueError(f"value must be a number or text, got {type(value).__name__}")
    value = float(value)
    if not math.isfinite(value):
        raise BadValueError(f"number value must be finite, got {value!r}")
    return value


def is_empty_value(value: Value) -> bool:
    """True for the canonical empties that are never stored: 0.0 and ""."""
    if isinstance(value, str):
        return value == ""
    return value == 0.0


def value_sort_key(value: Value) -> tuple[int, float | str]:
    """Total order over mixed values: all numbers precede all text.

    Numbers compare numerically, text compares bytewise (str order).
    """
    if isinstance(value, str):
        return (1, value)
    return (0, value)


def _lattice_plus(a: Value, b: Value) -> Value:
    return b if value_sort_key(a) < value_sort_key(b) else a


def _lattice_times(a: Value, b: Value) -> Value:
    return a if value_sort_key(a) < value_sort_key(b) else b


@dataclass(frozen=True)
class Semiring:
    """A named (plus, times) pair over values.

    ``zero`` and ``one`` record the identities where they are representable
    as stored values; ``None`` means the identity exists only as absence of
    an entry.  ``numeric_only`` semirings refuse text operands.
    """

    name: str
    plus: Callable[[Value, Value], Value]
    times: Callable[[Value, Value], Value]
    zero: float | None
    one: float | None
    numeric_only: bool

    def drops(self, value: Value) -> bool:
        """True if an operation result is discarded rather than stored."""
        if is_empty_value(value):
            return True
        return self.zero is not None and value == self.zero

    def __repr__(self):
        return f"Semiring({self.name!r})"


ARITH = Semiring("arith", lambda a, b: a + b, lambda a, b: a * b, 0.0, 1.0, True)
MAXPLUS = Semiring("maxplus", max, lambda a, b: a + b, None, 0.0, True)
MINPLUS = Semiring("minplus", min, lambda a, b: a + b, None, 0.0, True)
MAXMIN = Semiring("maxmin", max, min, None, None, True)
LATTICE = Semiring("lattice", _lattice_plus, _lattice_times, None, None, False)

SEMIRINGS: dict[str, Semiring] = {
    sr.name: sr for sr in (ARITH, MAXPLUS, MINPLUS, MAXMIN, LATTICE)
}


def get_semiring(name: str) -> Semiring:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise ValueError(
            f"unknown semiring {name!r}; choose from {', '.join(sorted(SEMIRINGS))}"
        ) from None


class Axis(Enum):
    ROW = "row"
    COLUMN = "column"


class KeySpec:
    """Selects a subset of keys along one axis."""

    def matches(self, key: str) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class AllKeys(KeySpec):
    def matches(self, key: str) -> bool:
        return True


ALL = AllKeys()


@dataclass(frozen=True, init=False)
class KeySet(KeySpec):
    """An explicit, duplicate-free set of keys."""

    keys: tuple[str, ...]

    def __init__(self, keys: Iterable[str]):
        ks = tuple(check_key(k) for k in keys)
        if len(set(ks)) != len(ks):
            raise ValueError("key set contains duplicates")
        object.__setattr__(self, "keys", tuple(sorted(ks)))

    def matches(self, key: str) -> bool:
        return key in self.keys


@dataclass(frozen=True)
class KeyRange(KeySpec):
    """All keys k with lo <= k <= hi, inclusive both ends, bytewise."""

    lo: str
    hi: str

    def __post_init__(self):
        check_key(self.lo)
        check_key(self.hi)
        if self.lo > self.hi:
            raise ValueError(f"malformed range: {self.lo!r} > {self.hi!r}")

    def matches(self, key: str) -> bool:
        return self.lo <= key <= self.hi


@dataclass(frozen=True)
class KeyPrefix(KeySpec):
    """All keys whose UTF-8 encoding starts with the prefix's encoding."""

    prefix: str

    def __post_init__(self):
        check_key(self.prefix)

    def matches(self, key: str) -> bool:
        return key.startswith(self.prefix)


class AssociativeArray:
    """Immutable sparse map from (row key, column key) to non-empty values.

    Construct from a mapping of ``(row, col) -> value``; values equal to a
    canonical empty (0.0 or "") are silently dropped, everything else is
    validated.  Entries iterate in ascending (row, col) order.
    """

    __slots__ = ("_entries", "_rows", "_cols")

    def __init__(self, entries: Mapping[tuple[str, str], Value] = {}):
        cleaned: dict[tuple[str, str], Value] = {}
        for (r, c), v in entries.items():
            r = check_key(r)
            c = check_key(c)
            v = check_value(v)
            if not is_empty_value(v):
                cleaned[(r, c)] = v
        self._entries = dict(sorted(cleaned.items()))
        self._rows: tuple[str, ...] | None = None
        self._cols: tuple[str, ...] | None = None

    @classmethod
    def _from_clean(cls, entries: dict[tuple[str, str], Value]) -> "AssociativeArray":
        # Internal fast path: keys are already-validated (they came out of
        # existing arrays), but results of semiring arithmetic still need the
        # finiteness and emptiness screens.
        arr = cls.__new__(cls)
        kept: dict[tuple[str, str], Value] = {}
        for cell, v in sorted(entries.items()):
            if isinstance(v, float):
                if v == 0.0:
                    continue
                if not math.isfinite(v):
                    raise BadValueError(f"operation produced a non-finite number at {cell!r}")
            elif v == "":
                continue
            kept[cell] = v
        arr._entries = kept
        arr._rows = None
        arr._cols = None
        return arr

    # -- plain queries ----------------------------------------------------

    @property
    def nnz(self) -> int:
        return len(self._entries)

    @property
    def row_keys(self) -> tuple[str, ...]:
        if self._rows is None:
            self._rows = tuple(sorted({r for r, _ in self._entries}))
        return self._rows

    @property
    def col_keys(self) -> tuple[str, ...]:
        if self._cols is None:
            self._cols = tuple(sorted({c for _, c in self._entries}))
        return self._cols

    def keys(self, axis: Axis) -> tuple[str, ...]:
        """Sorted keys with at least one entry on the given axis."""
        return self.row_keys if axis is Axis.ROW else self.col_keys

    def get(self, row: str, col: str, default=None):
        """Value at (row, col), or ``default`` when the cell is empty."""
        return self._entries.get((row, col), default)

    def items(self):
        return self._entries.items()

    def support(self):
        return self._entries.keys()

    def triples(self) -> list[Triple]:
        return [(r, c, v) for (r, c), v in self._entries.items()]

    # -- derived arrays ---------------------------------------------------

    def subarray(self, rows: KeySpec = ALL, cols: KeySpec = ALL) -> "AssociativeArray":
        """Entries whose row key matches ``rows`` and column key matches ``cols``.

        Surviving entries keep their original keys.
        """
        out = {
            cell: v
            for cell, v in self._entries.items()
            if rows.matches(cell[0]) and cols.matches(cell[1])
        }
        return AssociativeArray._from_clean(out)

    def transpose(self) -> "AssociativeArray":
        return AssociativeArray._from_clean(
            {(c, r): v for (r, c), v in self._entries.items()}
        )

    def logical(self) -> "AssociativeArray":
        """Same support, every value replaced by 1.0."""
        return AssociativeArray._from_clean({cell: 1.0 for cell in self._entries})

    # -- dunder support ---------------------------------------------------

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Triple]:
        for (r, c), v in self._entries.items():
            yield r, c, v

    def __contains__(self, cell: tuple[str, str]) -> bool:
        return cell in self._entries

    def __eq__(self, other):
        if not isinstance(other, AssociativeArray):
            return NotImplemented
        return self._entries == other._entries

    __hash__ = None  # mutable-looking container semantics

    def __repr__(self):
        shown = ", ".join(
            f"({r!r}, {c!r}): {v!r}" for (r, c), v in list(self._entries.items())[:4]
        )
        if self.nnz > 4:
            shown += f", ... {self.nnz} entries"
        return f"AssociativeArray({{{shown}}})"


def from_triples(
    triples: Iterable[tuple[str, str, Value]], combiner: Semiring
) -> AssociativeArray:
    """Fold triples into an array; duplicate cells combine with combiner.plus.

    Triples land in sequence order, so a non-commutative fold would be
    order-sensitive; all built-in semirings have commutative plus.  A
    numeric-only combiner raises DomainError only when text is actually
    asked to combine (a lone text triple is fine).
    """
    acc: dict[tuple[str, str], Value] = {}
    for r, c, v in triples:
        r = check_key(r)
        c = check_key(c)
        v = check_value(v)
        cell = (r, c)
        if cell in acc:
            a = acc[cell]
            if combiner.numeric_only and (isinstance(a, str) or isinstance(v, str)):
                raise DomainError(
                    f"semiring {combiner.name!r} cannot combine text at cell {cell!r}"
                )
            acc[cell] = combiner.plus(a, v)
        else:
            acc[cell] = v
    return AssociativeArray._from_clean(
        {cell: v for cell, v in acc.items() if not combiner.drops(v)}
    )
