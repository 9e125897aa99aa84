"""File formats: dense CSV tables in, triple files in/out, DOT export.

The triple file is the package's canonical on-disk form.  It is UTF-8,
LF-framed, one record per line::

    %aa-triples 1
    row<TAB>col<TAB>n<TAB>3.5
    row<TAB>col2<TAB>t<TAB>free text (TABs allowed, line breaks not)

Numbers are rendered in their shortest round-trip decimal form, records
sort by (row, col), so equal arrays serialize to identical bytes.
"""

from __future__ import annotations

import csv
import math
import re
from typing import BinaryIO

from .core import (
    LATTICE,
    AssociativeArray,
    BadKeyError,
    BadValueError,
    Value,
    check_key,
    check_value,
    from_triples,
)

TRIPLES_MAGIC = "%aa-triples 1"

_NUMBER_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?\Z")


class FormatError(ValueError):
    """Malformed input file."""


def format_number(x: float) -> str:
    """Shortest decimal that parses back to exactly x ("2", "0.1", "1e+20")."""
    s = repr(x)
    return s[:-2] if s.endswith(".0") else s


def parse_cell(text: str) -> Value:
    """Full-cell finite decimals become numbers, everything else stays text."""
    if _NUMBER_RE.match(text):
        x = float(text)
        if math.isfinite(x):
            return x
    return text


def read_table(source: BinaryIO) -> AssociativeArray:
    """Read a dense CSV table (RFC 4180).

    The first header cell names the table and is ignored; the remaining
    header cells are column keys.  Each body row starts with its row key.
    Empty cells stay unstored.  Duplicate row or column keys, forbidden
    key characters and ragged long rows are rejected.
    """
    try:
        text = source.read().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError(f"table is not valid UTF-8: {exc}") from None
    reader = csv.reader(text.splitlines(keepends=True))
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("table has no header row") from None
    except csv.Error as exc:
        raise FormatError(f"malformed CSV: {exc}") from None
    col_keys = header[1:]
    try:
        for c in col_keys:
            check_key(c)
    except BadKeyError as exc:
        raise FormatError(f"bad column key in header: {exc}") from None
    if len(set(col_keys)) != len(col_keys):
        raise FormatError("duplicate column key in header")

    entries: dict[tuple[str, str], Value] = {}
    seen_rows: set[str] = set()
    try:
        for record in reader:
            if not record:
                continue
            row_key = record[0]
            try:
                check_key(row_key)
            except BadKeyError as exc:
                raise FormatError(f"bad row key: {exc}") from None
            if row_key in seen_rows:
                raise FormatError(f"duplicate row key {row_key!r}")
            seen_rows.add(row_key)
            if len(record) - 1 > len(col_keys):
                raise FormatError(f"row {row_key!r} has more cells than the header")
            for j, cell in enumerate(record[1:]):
                if cell == "":
                    continue
                try:
                    entries[(row_key, col_keys[j])] = check_value(parse_cell(cell))
                except BadValueError as exc:
                    raise FormatError(f"row {row_key!r}: {exc}") from None
    except csv.Error as exc:
        raise FormatError(f"malformed CSV: {exc}") from None
    return AssociativeArray._from_clean(entries)


def parse_record_lines(
    data: bytes,
    magic: str,
    *,
    allow_tombstones: bool = False,
    lenient_tail: bool = False,
) -> tuple[list[tuple[str, str, Value | None]], bool]:
    """Parse LF-framed tab-separated records after a magic first line.

    Returns (records, tail_truncated).  A record value of None is a
    tombstone (tag "x", only when ``allow_tombstones``).  With
    ``lenient_tail`` a final line lacking its LF is skipped and flagged
    instead of raising; everything before it must still parse cleanly.
    """
    parts = data.split(b"\n")
    tail = parts.pop()
    truncated = tail != b""
    if truncated and not lenient_tail:
        raise FormatError("file does not end with a newline")
    if not parts:
        if truncated:
            return [], True  # even the magic line is incomplete
        raise FormatError("missing magic line")
    try:
        first = parts[0].decode("utf-8")
    except UnicodeDecodeError:
        raise FormatError("magic line is not valid UTF-8") from None
    if first != magic:
        raise FormatError(f"bad magic line {first!r}, expected {magic!r}")

    records: list[tuple[str, str, Value | None]] = []
    for lineno, raw in enumerate(parts[1:], start=2):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError:
            raise FormatError(f"line {lineno}: not valid UTF-8") from None
        fields = line.split("\t", 3)
        if len(fields) != 4:
            raise FormatError(f"line {lineno}: expected 4 tab-separated fields")
        row, col, tag, valtext = fields
        try:
            check_key(row)
            check_key(col)
        except BadKeyError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        value: Value | None
        if tag == "n":
            if not _NUMBER_RE.match(valtext):
                raise FormatError(f"line {lineno}: unparseable number {valtext!r}")
            value = float(valtext)
            if not math.isfinite(value):
                raise FormatError(f"line {lineno}: number {valtext!r} is not finite")
        elif tag == "t":
            try:
                value = check_value(valtext)
            except BadValueError as exc:
                raise FormatError(f"line {lineno}: {exc}") from None
        elif tag == "x" and allow_tombstones:
            if valtext != "":
                raise FormatError(f"line {lineno}: tombstone carries a payload")
            value = None
        else:
            raise FormatError(f"line {lineno}: unknown type tag {tag!r}")
        records.append((row, col, value))
    return records, truncated


def read_triples(source: BinaryIO) -> AssociativeArray:
    """Read a triple file; duplicate cells merge with the lattice max."""
    records, _ = parse_record_lines(source.read(), TRIPLES_MAGIC)
    return from_triples([(r, c, v) for r, c, v in records], LATTICE)


def _record_line(row: str, col: str, value: Value | None) -> str:
    if value is None:
        return f"{row}\t{col}\tx\t"
    if isinstance(value, str):
        return f"{row}\t{col}\tt\t{value}"
    return f"{row}\t{col}\tn\t{format_number(value)}"


def write_triples(arr: AssociativeArray, sink: BinaryIO) -> int:
    """Write the canonical triple form; returns the byte count written."""
    lines = [TRIPLES_MAGIC]
    lines.extend(_record_line(r, c, v) for r, c, v in arr)
    payload = ("\n".join(lines) + "\n").encode("utf-8")
    sink.write(payload)
    return len(payload)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(arr: AssociativeArray, sink: BinaryIO) -> int:
    """Render the array as a DOT digraph; returns the byte count written.

    Row and column keys share one node namespace; every entry becomes an
    edge labeled with its value.  Output order is sorted, so equal arrays
    render identically.
    """
    lines = ["digraph aa {"]
    for k in sorted(set(arr.row_keys) | set(arr.col_keys)):
        lines.append(f"  {_dot_quote(k)};")
    for r, c, v in arr:
        label = v if isinstance(v, str) else format_number(v)
        lines.append(f"  {_dot_quote(r)} -> {_dot_quote(c)} [label={_dot_quote(label)}];")
    lines.append("}")
    payload = ("\n".join(lines) + "\n").encode("utf-8")
    sink.write(payload)
    return len(payload)
