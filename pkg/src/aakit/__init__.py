"""Associative array algebra over pluggable semirings, with persistence."""

from .core import (
    ALL,
    ARITH,
    LATTICE,
    MAXMIN,
    MAXPLUS,
    MINPLUS,
    SEMIRINGS,
    AllKeys,
    AssociativeArray,
    Axis,
    BadKeyError,
    BadValueError,
    DomainError,
    KeyPrefix,
    KeyRange,
    KeySet,
    KeySpec,
    Semiring,
    Value,
    from_triples,
    get_semiring,
    is_empty_value,
    value_sort_key,
)
from .algebra import (
    arrayprod,
    delete_entries,
    eladd,
    elmult,
    mask_select,
    perm_select,
)
from .patterns import identity_from_keys, is_clique, is_permutation, perm_from_pairs
from .analysis import (
    DEFAULT_TOL,
    DenseProjection,
    EigenResult,
    IterationError,
    NotConvergedError,
    ZeroIterateError,
    dominant_eigenpair,
    null_space,
    products_unique,
    rank,
    to_dense,
)
from .graph import bfs, correlate, degree, symmetrize
from .io import (
    FormatError,
    export_dot,
    format_number,
    read_table,
    read_triples,
    write_triples,
)
from .store import ReadOnlyError, StoreError, TableStore, open_store

__version__ = "0.1.0"

__all__ = [
    "ALL",
    "ARITH",
    "LATTICE",
    "MAXMIN",
    "MAXPLUS",
    "MINPLUS",
    "SEMIRINGS",
    "AllKeys",
    "AssociativeArray",
    "Axis",
    "BadKeyError",
    "BadValueError",
    "DEFAULT_TOL",
    "DenseProjection",
    "DomainError",
    "EigenResult",
    "FormatError",
    "IterationError",
    "KeyPrefix",
    "KeyRange",
    "KeySet",
    "KeySpec",
    "NotConvergedError",
    "ReadOnlyError",
    "Semiring",
    "StoreError",
    "TableStore",
    "Value",
    "ZeroIterateError",
    "arrayprod",
    "bfs",
    "correlate",
    "degree",
    "delete_entries",
    "dominant_eigenpair",
    "eladd",
    "elmult",
    "export_dot",
    "format_number",
    "from_triples",
    "get_semiring",
    "identity_from_keys",
    "is_clique",
    "is_empty_value",
    "is_permutation",
    "mask_select",
    "null_space",
    "open_store",
    "perm_from_pairs",
    "perm_select",
    "products_unique",
    "rank",
    "read_table",
    "read_triples",
    "symmetrize",
    "to_dense",
    "value_sort_key",
    "write_triples",
]
