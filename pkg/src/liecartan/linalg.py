"""Exact dense linear algebra over the rationals.

Scalars are Python ``int`` or :class:`fractions.Fraction`; both compare and
hash consistently, so an integral Fraction and the equal int are
interchangeable.  Integer inputs stay integers until a division forces a
Fraction, which keeps the catalog computations cheap.

Elimination works on sparse rows (``dict`` column -> value) internally,
because the matrices met in practice (brackets of elementary matrices) are
overwhelmingly zero.  Everything that crosses the module boundary is dense.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Optional, Sequence, Union

Scalar = Union[int, Fraction]
Vector = tuple  # tuple of Scalar, fixed length

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def scalar(value) -> Scalar:
    """Coerce *value* to an exact rational.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats (and bools) raise :class:`TypeError`: exactness is not optional.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            raise ValueError(f"not an exact rational: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {value!r}")
        return scalar(Fraction(num, den))
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def _div(a: Scalar, b: Scalar) -> Scalar:
    if b == 1:
        return a
    if b == -1:
        return -a
    q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


def format_scalar(x: Scalar) -> str:
    """``"p"`` or ``"p/q"``."""
    return str(x)


class RMatrix:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "cols", "data", "_nz")

    def __init__(self, data: Iterable[Iterable], cols: Optional[int] = None):
        rows = tuple(tuple(scalar(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"row {i} has length {len(row)}, expected {cols}")
        self._init(rows, len(rows), cols)

    def _init(self, data, rows, cols):
        self.data = data
        self.rows = rows
        self.cols = cols
        self._nz = None

    @classmethod
    def _raw(cls, data: tuple, rows: int, cols: int) -> "RMatrix":
        m = cls.__new__(cls)
        m._init(data, rows, cols)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "RMatrix":
        cols = rows if cols is None else cols
        return cls._raw(tuple((0,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        return cls._raw(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: dict) -> "RMatrix":
        """Build from a ``{(i, j): value}`` map of the nonzero entries."""
        grid = [[0] * cols for _ in range(rows)]
        for (i, j), v in entries.items():
            grid[i][j] = v
        return cls._raw(tuple(tuple(r) for r in grid), rows, cols)

    @classmethod
    def from_flat(cls, rows: int, cols: int, flat: Sequence) -> "RMatrix":
        if len(flat) != rows * cols:
            raise ValueError("flat length does not match shape")
        return cls._raw(tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)), rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        """Row-major flat tuple of entries."""
        return tuple(x for row in self.data for x in row)

    flat = entries

    def nonzeros(self) -> list:
        """Per row, the list of ``(column, value)`` pairs with value != 0."""
        if self._nz is None:
            self._nz = [[(j, x) for j, x in enumerate(row) if x] for row in self.data]
        return self._nz

    def sparse(self) -> dict:
        """Nonzero entries keyed by flat (row-major) index."""
        c = self.cols
        return {i * c + j: x for i, row in enumerate(self.nonzeros()) for j, x in row}

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.data)

    @property
    def T(self) -> "RMatrix":
        return RMatrix._raw(tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)),
                            self.cols, self.rows)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def _check_same_shape(self, other: "RMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "RMatrix") -> "RMatrix":
        self._check_same_shape(other)
        return RMatrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
                            self.rows, self.cols)

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        self._check_same_shape(other)
        return RMatrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
                            self.rows, self.cols)

    def __neg__(self) -> "RMatrix":
        return RMatrix._raw(tuple(tuple(-a for a in r) for r in self.data), self.rows, self.cols)

    def __mul__(self, c) -> "RMatrix":
        c = scalar(c)
        return RMatrix._raw(tuple(tuple(c * a for a in r) for r in self.data), self.rows, self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, RMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            onz = other.nonzeros()
            out = []
            for row in self.nonzeros():
                acc = [0] * other.cols
                for k, a in row:
                    for j, b in onz[k]:
                        acc[j] += a * b
                out.append(tuple(acc))
            return RMatrix._raw(tuple(out), self.rows, other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError("vector length does not match matrix columns")
        return tuple(sum((a * v[j] for j, a in row), 0) for row in self.nonzeros())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.data)
        return f"RMatrix([{body}])"


# -- sparse row machinery ---------------------------------------------------

def _sparse(vec: Sequence) -> dict:
    return {i: x for i, x in enumerate(vec) if x}


def _dense(row: dict, n: int) -> tuple:
    out = [0] * n
    for i, x in row.items():
        out[i] = x
    return tuple(out)


def _axpy(target: dict, f: Scalar, src: dict) -> None:
    """target -= f * src, in place, dropping zeros."""
    for c, v in src.items():
        nv = target.get(c, 0) - f * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


class Echelon:
    """Incrementally maintained reduced row echelon form of sparse rows.

    ``pivots`` maps each pivot column to its row; each such row has a 1 in
    its pivot column and zeros in every other pivot column.  The result is
    the unique RREF of the rows inserted so far, independent of their order.
    """

    def __init__(self, pivot_limit: Optional[int] = None):
        # columns >= pivot_limit are never chosen as pivots (augmented parts)
        self.pivot_limit = pivot_limit
        self.pivots: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        for p in [c for c in row if c in self.pivots]:
            f = row.get(p)
            if f:
                _axpy(row, f, self.pivots[p])
        return row

    def insert(self, row: dict) -> Optional[int]:
        """Add a row; return its new pivot column, or None if it was dependent."""
        row = self.reduce(row)
        if self.pivot_limit is None:
            cols = row
        else:
            cols = [c for c in row if c < self.pivot_limit]
        if not cols:
            return None
        lead = min(cols)
        inv = row[lead]
        if inv != 1:
            row = {c: _div(v, inv) for c, v in row.items()}
        for prow in self.pivots.values():
            f = prow.get(lead)
            if f:
                _axpy(prow, f, row)
        self.pivots[lead] = row
        return lead

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rows(self) -> list[tuple[int, dict]]:
        return sorted(self.pivots.items())


def _echelon(rows: Iterable[dict], pivot_limit: Optional[int] = None) -> Echelon:
    ech = Echelon(pivot_limit)
    for r in rows:
        if r:
            ech.insert(r)
    return ech


def sparse_nullspace(rows: Iterable[dict], ncols: int) -> list[dict]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column.

    Not canonical; wrap in :meth:`Subspace.span` for that.
    """
    ech = _echelon(rows)
    free = [c for c in range(ncols) if c not in ech.pivots]
    basis = []
    for f in free:
        v = {f: 1}
        for p, prow in ech.pivots.items():
            x = prow.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


# -- public operations --------------------------------------------------------

def rref(m: RMatrix) -> tuple[RMatrix, list[int], int]:
    """Reduced row echelon form, pivot columns, and rank."""
    ech = _echelon(_sparse(r) for r in m.data)
    prs = ech.rows()
    data = [_dense(r, m.cols) for _, r in prs]
    data += [(0,) * m.cols] * (m.rows - len(data))
    return RMatrix._raw(tuple(data), m.rows, m.cols), [p for p, _ in prs], len(prs)


def rank(m: RMatrix) -> int:
    return _echelon(_sparse(r) for r in m.data).rank


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^length held as its canonical basis.

    The basis is the nonzero part of the RREF of any spanning set, rows
    ordered by pivot column, so two equal subspaces compare equal.
    """

    length: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], length: Optional[int] = None) -> "Subspace":
        vectors = [tuple(scalar(x) for x in v) for v in vectors]
        if length is None:
            if not vectors:
                raise ValueError("length is required to span an empty set")
            length = len(vectors[0])
        for v in vectors:
            if len(v) != length:
                raise ValueError(f"vector of length {len(v)} in a space of length {length}")
        return cls._from_sparse((_sparse(v) for v in vectors), length)

    @classmethod
    def _from_sparse(cls, rows: Iterable[dict], length: int) -> "Subspace":
        ech = _echelon(rows)
        return cls(length, tuple(_dense(r, length) for _, r in ech.rows()))

    @classmethod
    def full(cls, length: int) -> "Subspace":
        return cls(length, tuple(tuple(int(i == j) for j in range(length)) for i in range(length)))

    @classmethod
    def zero(cls, length: int) -> "Subspace":
        return cls(length, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]

    def __contains__(self, v) -> bool:
        return solve_in_span(self.basis, v) is not None

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(v) if x) for v in self.basis]


def nullspace(m: RMatrix) -> Subspace:
    """Canonical basis of {v : m v = 0}."""
    return Subspace._from_sparse(sparse_nullspace((_sparse(r) for r in m.data), m.cols), m.cols)


def solve_in_span(span: Sequence[Sequence], target: Sequence) -> Optional[tuple]:
    """Coefficients c with sum(c_i * span_i) == target, or None.

    When the span vectors are dependent, free coefficients are set to 0.
    """
    target = tuple(scalar(x) for x in target)
    k = len(span)
    if k == 0:
        return () if not any(target) else None
    n = len(target)
    # columns 0..k-1 are the unknowns, column k carries the right-hand side
    rows = []
    for i in range(n):
        row = {j: span[j][i] for j in range(k) if span[j][i]}
        if target[i]:
            row[k] = target[i]
        if row:
            rows.append(row)
    ech = _echelon(rows)
    if k in ech.pivots:
        return None
    coeffs = [0] * k
    for p, prow in ech.pivots.items():
        coeffs[p] = prow.get(k, 0)
    return tuple(coeffs)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Canonical basis of span(a) & span(b).

    Solves sum x_i a_i = sum y_j b_j through the nullspace of [a^T | -b^T]
    and maps the x-part back through a.
    """
    if a.length != b.length:
        raise ValueError("subspaces live in different ambient spaces")
    ka, kb = a.dim, b.dim
    rows = []
    for i in range(a.length):
        row = {j: v[i] for j, v in enumerate(a.basis) if v[i]}
        row.update({ka + j: -v[i] for j, v in enumerate(b.basis) if v[i]})
        if row:
            rows.append(row)
    images = []
    for sol in sparse_nullspace(rows, ka + kb):
        img: dict = {}
        for j, x in sol.items():
            if j < ka:
                _axpy(img, -x, _sparse(a.basis[j]))
        images.append(img)
    return Subspace._from_sparse(images, a.length)


def sum_space(a: Subspace, b: Subspace) -> Subspace:
    return Subspace.span(a.basis + b.basis, a.length)


def independent(vs: Sequence[Sequence]) -> bool:
    """True iff the vectors are linearly independent (vacuously for [])."""
    return _echelon(_sparse(tuple(scalar(x) for x in v)) for v in vs).rank == len(vs)


def primitive(v: Sequence[Scalar]) -> tuple:
    """Scale a nonzero vector to coprime integers with first nonzero entry positive."""
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)
