"""Graph-flavored helpers over associative arrays.

An array doubles as a directed graph: row key -> column key per entry.
These helpers stay within the algebra; nothing here peeks below the
public operations except for the shared pass-through product.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable

from .algebra import _pass_left, arrayprod, eladd
from .core import ARITH, MAXMIN, AssociativeArray, Axis, DomainError


def degree(arr: AssociativeArray, axis: Axis) -> AssociativeArray:
    """Entry counts per key on an axis, as a single-column array under "deg"."""
    if axis is Axis.ROW:
        counts = Counter(r for r, _, _ in arr)
    else:
        counts = Counter(c for _, c, _ in arr)
    return AssociativeArray._from_clean(
        {(k, "deg"): float(n) for k, n in counts.items()}
    )


def correlate(arr: AssociativeArray) -> AssociativeArray:
    """arr times its transpose under arith: co-occurrence counts on shared columns.

    Values must be numeric; call logical() first to correlate a text table's
    support pattern.
    """
    for r, c, v in arr:
        if isinstance(v, str):
            raise DomainError(f"correlate needs numbers, found text at ({r!r}, {c!r})")
    return arrayprod(arr, arr.transpose(), ARITH)


def symmetrize(arr: AssociativeArray) -> AssociativeArray:
    """Undirected view of a graph: logical support unioned with its transpose."""
    flat = arr.logical()
    return eladd(flat, flat.transpose(), MAXMIN)


def bfs(arr: AssociativeArray, sources: Iterable[str], steps: int) -> AssociativeArray:
    """Vertices reachable in exactly ``steps`` hops from ``sources``.

    Returns a single-row frontier under the row key "front" with value 1.0
    per reachable column key.  Step zero is the sources themselves,
    restricted to keys present in the array on either axis.  Each step is a
    pass-through product with the array followed by logical().
    """
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps!r}")
    present = set(arr.row_keys) | set(arr.col_keys)
    frontier = AssociativeArray._from_clean(
        {("front", s): 1.0 for s in dict.fromkeys(sources) if s in present}
    )
    for _ in range(steps):
        frontier = _pass_left(frontier, arr).logical()
    return frontier
