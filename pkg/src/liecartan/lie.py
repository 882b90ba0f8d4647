"""Matrix Lie algebras given by an explicit basis of square matrices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .linalg import (
    Echelon,
    RMatrix,
    Scalar,
    Subspace,
    _axpy,
    _dense,
    scalar,
    sparse_nullspace,
)


class DependentBasisError(ValueError):
    def __init__(self, index: int):
        super().__init__(f"basis element b{index} is a linear combination of the previous ones")
        self.index = index


class NotClosedError(ValueError):
    """A bracket left the span of the basis."""

    def __init__(self, message: str, pair: Optional[tuple] = None):
        super().__init__(message)
        self.pair = pair


def bracket(x: RMatrix, y: RMatrix) -> RMatrix:
    """The commutator ``x y - y x``."""
    if not (x.is_square() and x.shape == y.shape):
        raise ValueError(f"bracket needs square matrices of equal size, got {x.shape} and {y.shape}")
    return x @ y - y @ x


def scala(x: RMatrix, y: RMatrix) -> Scalar:
    """Sum of entrywise products, i.e. trace(x^T y)."""
    if x.shape != y.shape:
        raise ValueError(f"size mismatch: {x.shape} vs {y.shape}")
    total = 0
    for rx, ry in zip(x.nonzeros(), y.data):
        for j, a in rx:
            total += a * ry[j]
    return total


@dataclass(frozen=True)
class Element:
    """An algebra element: coordinates over the basis and the matrix they realize."""

    coords: tuple
    matrix: RMatrix

    def __iter__(self):
        return iter(self.coords)


class LieAlgebra:
    """A real matrix Lie algebra with an ordered basis ``b_1..b_n``.

    The basis must be linearly independent; this is checked on construction.
    Closure under the bracket is not checked here (see :func:`is_closed`).
    """

    def __init__(self, basis: Sequence[RMatrix], name: str = "custom", ambient: Optional[int] = None):
        basis = tuple(basis)
        if ambient is None:
            if not basis:
                raise ValueError("ambient size is required for an empty basis")
            ambient = basis[0].rows
        for i, b in enumerate(basis, 1):
            if b.shape != (ambient, ambient):
                raise ValueError(f"b{i} has shape {b.shape}, expected {ambient}x{ambient}")
        self.ambient = ambient
        self.basis = basis
        self.name = name
        self._extractor  # fail early on a dependent basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, ambient={self.ambient}, dim={self.dim})"

    @cached_property
    def _sparse_basis(self) -> list[dict]:
        return [b.sparse() for b in self.basis]

    @cached_property
    def _extractor(self) -> list[tuple[int, dict, dict]]:
        # RREF of the flattened basis, augmented with the identity so each
        # reduced row remembers which combination of basis elements it is.
        t2 = self.ambient * self.ambient
        ech = Echelon(pivot_limit=t2)
        for i, b in enumerate(self._sparse_basis):
            row = dict(b)
            row[t2 + i] = 1
            if ech.insert(row) is None:
                raise DependentBasisError(i + 1)
        out = []
        for p, row in ech.rows():
            entries = {c: v for c, v in row.items() if c < t2}
            combo = {c - t2: v for c, v in row.items() if c >= t2}
            out.append((p, entries, combo))
        return out

    def _coords_sparse(self, m: dict) -> Optional[dict]:
        residual = dict(m)
        coords: dict = {}
        for p, entries, combo in self._extractor:
            f = residual.get(p)
            if f:
                _axpy(residual, f, entries)
                _axpy(coords, -f, combo)
        if residual:
            return None
        return coords

    def expand(self, coords: Sequence) -> RMatrix:
        """The matrix ``sum coords_i b_i``."""
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        acc: dict = {}
        for a, b in zip(coords, self._sparse_basis):
            if a:
                _axpy(acc, -a, b)
        return RMatrix.from_flat(self.ambient, self.ambient, _dense(acc, self.ambient * self.ambient))

    def element(self, coords: Sequence) -> Element:
        coords = tuple(scalar(x) for x in coords)
        return Element(coords, self.expand(coords))

    def unit(self, i: int) -> Element:
        """The basis element ``b_i`` (1-based) as an Element."""
        return Element(tuple(int(j == i - 1) for j in range(self.dim)), self.basis[i - 1])


def coords_of(alg: LieAlgebra, m: RMatrix) -> Optional[Element]:
    """Express *m* in the basis of *alg*, or None if it lies outside the span."""
    if m.shape != (alg.ambient, alg.ambient):
        raise ValueError(f"expected a {alg.ambient}x{alg.ambient} matrix, got {m.shape}")
    c = alg._coords_sparse(m.sparse())
    if c is None:
        return None
    return Element(_dense(c, alg.dim), m)


def ad_matrix(alg: LieAlgebra, m: RMatrix) -> list[dict]:
    """Columns of ad_m in basis coordinates, as sparse dicts; column l is [m, b_l]."""
    cols = []
    for l, b in enumerate(alg.basis):
        c = alg._coords_sparse(bracket(m, b).sparse())
        if c is None:
            raise NotClosedError(f"[m, b{l + 1}] is not in the span of the basis", (None, l + 1))
        cols.append(c)
    return cols


def ad_kernel(alg: LieAlgebra, m: RMatrix) -> Subspace:
    """Canonical basis of the coordinate vectors a with [m, sum a_i b_i] = 0."""
    cols = ad_matrix(alg, m)
    rows: list[dict] = [{} for _ in range(alg.dim)]
    for l, col in enumerate(cols):
        for i, v in col.items():
            rows[i][l] = v
    return Subspace._from_sparse(sparse_nullspace(rows, alg.dim), alg.dim)


def is_closed(alg: LieAlgebra) -> tuple[bool, Optional[tuple[int, int]]]:
    """Check [b_i, b_j] stays in the span for all i < j; return the first failing pair (1-based)."""
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            if alg._coords_sparse(bracket(alg.basis[i], alg.basis[j]).sparse()) is None:
                return False, (i + 1, j + 1)
    return True, None
