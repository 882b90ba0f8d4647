"""Bases for so(t), sl(t), g2, split g2 and so(4,4)+so(2,2), plus a JSON loader.

Indices in the generator tables are 1-based, as are basis labels b1..bn in
all user-facing text.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Union

from .lie import DependentBasisError, LieAlgebra, is_closed
from .linalg import RMatrix, scalar


class AlgebraSpecError(ValueError):
    """An algebra file that cannot be turned into a Lie algebra."""


def F(t: int, p: int, q: int) -> RMatrix:
    """Elementary matrix with a single 1 at row p, column q (1-based)."""
    return RMatrix.from_entries(t, t, {(p - 1, q - 1): 1})


def J(t: int, p: int, q: int) -> RMatrix:
    return RMatrix.from_entries(t, t, {(p - 1, q - 1): 1, (q - 1, p - 1): -1})


def Z(t: int, p: int, q: int) -> RMatrix:
    return RMatrix.from_entries(t, t, {(p - 1, q - 1): 1, (q - 1, p - 1): 1})


def from_generators(t: int, table, name: str) -> LieAlgebra:
    """Build a basis from rows of ``(sign, kind, p, q)`` terms; kind is "J" or "Z"."""
    basis = []
    for terms in table:
        entries: dict = {}
        for sign, kind, p, q in terms:
            i, j = p - 1, q - 1
            entries[(i, j)] = entries.get((i, j), 0) + sign
            entries[(j, i)] = entries.get((j, i), 0) + (sign if kind == "Z" else -sign)
        basis.append(RMatrix.from_entries(t, t, entries))
    return LieAlgebra(basis, name=name, ambient=t)


def so_basis(t: int) -> LieAlgebra:
    """so(t): b_k = J_{p,q}, p outer 1..t-1, q inner p+1..t."""
    if t < 2:
        raise ValueError("so(t) needs t >= 2")
    basis = [J(t, p, q) for p in range(1, t) for q in range(p + 1, t + 1)]
    return LieAlgebra(basis, name=f"so({t})", ambient=t)


def sl_basis(t: int) -> LieAlgebra:
    """sl(t): the off-diagonal F_{p,q} row by row, then F_{1,1} - F_{p,p} for p = 2..t."""
    if t < 2:
        raise ValueError("sl(t) needs t >= 2")
    basis = [F(t, p, q) for p in range(1, t + 1) for q in range(1, t + 1) if p != q]
    basis += [F(t, 1, 1) - F(t, p, p) for p in range(2, t + 1)]
    return LieAlgebra(basis, name=f"sl({t})", ambient=t)


G2_TABLE = [
    [(1, "J", 2, 3), (1, "J", 6, 7)],  # b1
    [(1, "J", 2, 4), (1, "J", 6, 8)],
    [(1, "J", 2, 5), (1, "J", 7, 4)],
    [(1, "J", 2, 6), (1, "J", 8, 4)],
    [(1, "J", 2, 7), (1, "J", 4, 5)],  # b5
    [(1, "J", 2, 8), (1, "J", 4, 6)],
    [(1, "J", 3, 4), (1, "J", 7, 8)],
    [(1, "J", 3, 5), (1, "J", 4, 6)],
    [(1, "J", 3, 6), (1, "J", 5, 4)],
    [(1, "J", 3, 7), (1, "J", 8, 4)],  # b10
    [(1, "J", 3, 8), (1, "J", 4, 7)],
    [(1, "J", 5, 6), (1, "J", 7, 8)],
    [(1, "J", 5, 7), (1, "J", 8, 6)],
    [(1, "J", 5, 8), (1, "J", 6, 7)],  # b14
]

SPLIT_G2_TABLE = [
    [(1, "J", 2, 3), (-1, "J", 7, 6)],  # b1
    [(-1, "J", 4, 2), (1, "J", 6, 8)],
    [(1, "Z", 2, 5), (1, "Z", 4, 7)],
    [(1, "Z", 2, 6), (-1, "Z", 4, 8)],
    [(1, "Z", 2, 7), (-1, "Z", 4, 5)],  # b5
    [(1, "Z", 2, 8), (1, "Z", 4, 6)],
    [(1, "J", 3, 4), (1, "J", 7, 8)],
    [(1, "Z", 3, 5), (-1, "Z", 4, 6)],
    [(1, "Z", 3, 6), (1, "Z", 4, 5)],
    [(1, "Z", 3, 7), (-1, "Z", 4, 8)],  # b10
    [(1, "Z", 3, 8), (1, "Z", 4, 7)],
    [(-1, "J", 6, 5), (-1, "J", 7, 8)],
    [(1, "J", 5, 7), (1, "J", 6, 8)],
    [(1, "J", 5, 8), (1, "J", 7, 6)],  # b14
]

SO44_SO22_TABLE = (
    [[(1, "Z", p, q)] for p in range(1, 5) for q in range(5, 9)]  # b1..b16
    + [[(1, "J", p, q)] for p, q in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]]  # b17..b22
    + [[(1, "J", p, q)] for p, q in [(5, 6), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8)]]  # b23..b28
    + [[(1, "J", 9, 10)], [(1, "J", 11, 12)]]  # b29, b30
    + [[(1, "Z", p, q)] for p, q in [(9, 11), (9, 12), (10, 11), (10, 12)]]  # b31..b34
)


def g2_basis() -> LieAlgebra:
    """Compact g2 inside 8x8 skew matrices (first row and column unused)."""
    return from_generators(8, G2_TABLE, "g2")


def split_g2_basis() -> LieAlgebra:
    return from_generators(8, SPLIT_G2_TABLE, "split g2")


def so44_so22_basis() -> LieAlgebra:
    return from_generators(12, SO44_SO22_TABLE, "so(4,4)+so(2,2)")


FAMILIES = {
    "so": so_basis,
    "sl": sl_basis,
    "g2": g2_basis,
    "split-g2": split_g2_basis,
    "so44-so22": so44_so22_basis,
}
PARAMETRIZED = {"so", "sl"}


def get_algebra(family: str, param: int | None = None) -> LieAlgebra:
    if family not in FAMILIES:
        raise ValueError(f"unknown algebra family {family!r}")
    if family in PARAMETRIZED:
        if param is None:
            raise ValueError(f"{family} needs a size parameter")
        return FAMILIES[family](param)
    if param is not None:
        raise ValueError(f"{family} takes no size parameter")
    return FAMILIES[family]()


# -- custom algebras ---------------------------------------------------------

def _reject_float(text: str):
    raise AlgebraSpecError(f"floating-point entry {text} is not allowed; use an integer or a \"p/q\" string")


def _entry(value, where: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise AlgebraSpecError(f"{where}: entries must be integers or \"p/q\" strings, got {value!r}")
    try:
        return scalar(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise AlgebraSpecError(f"{where}: {exc}") from None


def parse_spec(doc) -> LieAlgebra:
    """Validate an already-decoded AlgebraSpec document (without the closure check)."""
    if not isinstance(doc, dict):
        raise AlgebraSpecError("top level must be an object")
    t = doc.get("ambient")
    if isinstance(t, bool) or not isinstance(t, int) or t < 1:
        raise AlgebraSpecError("'ambient' must be a positive integer")
    name = doc.get("name", "custom")
    if not isinstance(name, str):
        raise AlgebraSpecError("'name' must be a string")
    raw = doc.get("basis")
    if not isinstance(raw, list):
        raise AlgebraSpecError("'basis' must be an array of matrices")
    basis = []
    for k, mat in enumerate(raw, 1):
        if not isinstance(mat, list) or len(mat) != t:
            raise AlgebraSpecError(f"b{k}: expected {t} rows")
        rows = []
        for i, row in enumerate(mat, 1):
            if not isinstance(row, list) or len(row) != t:
                raise AlgebraSpecError(f"b{k} row {i}: expected {t} entries")
            rows.append([_entry(x, f"b{k}[{i},{j}]") for j, x in enumerate(row, 1)])
        basis.append(RMatrix(rows, cols=t))
    try:
        return LieAlgebra(basis, name=name, ambient=t)
    except DependentBasisError as exc:
        raise AlgebraSpecError(str(exc)) from None


def load_custom(source: Union[str, Path, IO[str]], check_closure: bool = True) -> LieAlgebra:
    """Load a JSON AlgebraSpec from a path or text stream and validate it."""
    try:
        if hasattr(source, "read"):
            doc = json.load(source, parse_float=_reject_float)
        else:
            with open(source, encoding="utf-8") as fh:
                doc = json.load(fh, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise AlgebraSpecError(f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    alg = parse_spec(doc)
    if check_closure:
        ok, pair = is_closed(alg)
        if not ok:
            i, j = pair
            raise AlgebraSpecError(f"basis is not closed under the bracket: [b{i}, b{j}] leaves the span")
    return alg
