"""Extend a seed to a Cartan subalgebra and report the rank.

A set v_1..v_r is extended while the constraint space

    L = {y : [v_k, y] = 0, [v_k^T, y] = 0, scala(y, v_k) = 0 for all k}

contains a nonzero normal element (one with [y, y^T] = 0).  L is linear, the
normality condition is quadratic; the quadratic part is handled by
polarization, a bounded witness search, and a definiteness certificate.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence, Union

from .lie import Element, LieAlgebra, bracket, coords_of, scala
from .linalg import (
    RMatrix,
    Subspace,
    _axpy,
    _div,
    _sparse,
    independent,
    primitive,
    sparse_nullspace,
)


class SeedError(ValueError):
    """The seed cannot start a Cartan subalgebra (printed as ``False`` by the original routine)."""

    status = "invalid_seed"


class SeedNotInAlgebra(SeedError):
    status = "seed_not_in_algebra"

    def __init__(self, index: int):
        super().__init__(f"seed element v{index} is not in the algebra")
        self.index = index


class SeedNotIndependent(SeedError):
    status = "seed_not_independent"

    def __init__(self, index: int):
        super().__init__(f"seed element v{index} depends linearly on the previous ones")
        self.index = index


class SeedNotAbelian(SeedError):
    status = "seed_not_abelian"

    def __init__(self, pair: tuple[int, int]):
        i, j = pair
        super().__init__(f"[v{i}, v{j}] != 0: the seed is not abelian")
        self.pair = pair


class SeedNotNormal(SeedError):
    status = "seed_not_normal"

    def __init__(self, pair: tuple[int, int]):
        i, j = pair
        super().__init__(f"[v{i}, v{j}^T] != 0: the seed fails the transpose condition")
        self.pair = pair


class MaximalityUndecided(RuntimeError):
    status = "undecided"

    def __init__(self, space_dim: int, partial: Sequence[Element] = ()):
        super().__init__(
            f"no normal element found in a constraint space of dimension {space_dim} "
            "and no certificate that none exists; try a larger search budget")
        self.space_dim = space_dim
        self.partial = tuple(partial)


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for the integer-combination stage of the witness search."""

    max_coeff: int = 2
    max_terms: int = 3
    max_candidates: int = 200_000
    certificate_max_dim: int = 40

    @classmethod
    def from_level(cls, level: int) -> "SearchBudget":
        """Level 0 disables the combination stage; level k searches |c| <= k with k+1 terms."""
        if level < 0:
            raise ValueError("budget level must be >= 0")
        if level == 0:
            return cls(max_coeff=0, max_terms=0)
        return cls(max_coeff=level, max_terms=level + 1, max_candidates=200_000 * level)


DEFAULT_BUDGET = SearchBudget()


class Normality(enum.Enum):
    IDENTICALLY_NORMAL = "identically normal"
    NOT_IDENTICALLY = "not identically normal"


@dataclass(frozen=True)
class Maximal:
    certificate: str  # "trivial-space" or "definite-form"


@dataclass(frozen=True)
class NotMaximal:
    witness: Element


@dataclass(frozen=True)
class Undecided:
    space_dim: int


MaximalityVerdict = Union[Maximal, NotMaximal, Undecided]


@dataclass(frozen=True)
class CartanResult:
    algebra: str
    elements: tuple
    origins: tuple  # "seed" or "added", per element
    status: str = "maximal"
    certificate: str = "trivial-space"

    @property
    def rank(self) -> int:
        return len(self.elements)


# -- seed checks --------------------------------------------------------------

def check_independent(seed: Sequence[Element]) -> bool:
    return independent([v.coords for v in seed])


def _first_dependent(seed: Sequence[Element]) -> Optional[int]:
    for k in range(1, len(seed) + 1):
        if not independent([v.coords for v in seed[:k]]):
            return k
    return None


def check_abelian(seed: Sequence[Element]) -> tuple[bool, Optional[tuple[int, int]]]:
    """[v_i, v_j] = 0 for all i < j; the first failing pair is 1-based."""
    for i, j in itertools.combinations(range(len(seed)), 2):
        if not bracket(seed[i].matrix, seed[j].matrix).is_zero():
            return False, (i + 1, j + 1)
    return True, None


def check_normal_pairs(seed: Sequence[Element]) -> tuple[bool, Optional[tuple[int, int]]]:
    """[v_i, v_j^T] = 0 for all i <= j."""
    for i in range(len(seed)):
        for j in range(i, len(seed)):
            if not bracket(seed[i].matrix, seed[j].matrix.T).is_zero():
                return False, (i + 1, j + 1)
    return True, None


def is_normal(m: RMatrix) -> bool:
    return bracket(m, m.T).is_zero()


# -- the linear constraint space ------------------------------------------------

def _restrict(alg: LieAlgebra, space: Subspace, v: RMatrix) -> Subspace:
    """Cut *space* down by [v, y] = 0, [v^T, y] = 0 and scala(y, v) = 0."""
    k = space.dim
    if k == 0:
        return space
    vt = v.T
    t2 = alg.ambient * alg.ambient
    rows: dict[int, dict] = {}
    scala_row: dict = {}
    for j, coords in enumerate(space.basis):
        y = alg.expand(coords)
        for offset, image in ((0, bracket(v, y)), (t2, bracket(vt, y))):
            for e, x in image.sparse().items():
                rows.setdefault(offset + e, {})[j] = x
        s = scala(y, v)
        if s:
            scala_row[j] = s
    eqs = list(rows.values())
    if scala_row:
        eqs.append(scala_row)
    combos = []
    for f in sparse_nullspace(eqs, k):
        acc: dict = {}
        for j, c in f.items():
            _axpy(acc, -c, _sparse(space.basis[j]))
        combos.append(acc)
    return Subspace._from_sparse(combos, alg.dim)


def constraint_space(alg: LieAlgebra, current: Sequence[Element]) -> Subspace:
    """Canonical basis of L for the elements in *current*."""
    space = Subspace.full(alg.dim)
    for v in current:
        space = _restrict(alg, space, v.matrix)
    return space


# -- the quadratic condition ----------------------------------------------------

class _NormalTable:
    """Lazy values of N(y) = [y, y^T] and its polarization on a basis of L.

    N(sum c_i e_i) = sum c_i^2 N_i + sum_{i<j} c_i c_j P_ij with
    N_i = [e_i, e_i^T] and P_ij = [e_i, e_j^T] + [e_j, e_i^T].
    Values are sparse dicts over flattened matrix entries.
    """

    def __init__(self, alg: LieAlgebra, space: Subspace):
        self.alg = alg
        self.space = space
        self.mats = [alg.expand(v) for v in space.basis]
        self._n: dict[int, dict] = {}
        self._p: dict[tuple[int, int], dict] = {}

    def __len__(self):
        return len(self.mats)

    def n(self, i: int) -> dict:
        if i not in self._n:
            m = self.mats[i]
            self._n[i] = bracket(m, m.T).sparse()
        return self._n[i]

    def p(self, i: int, j: int) -> dict:
        key = (i, j) if i < j else (j, i)
        if key not in self._p:
            a, b = self.mats[key[0]], self.mats[key[1]]
            self._p[key] = (bracket(a, b.T) + bracket(b, a.T)).sparse()
        return self._p[key]

    def value(self, coeffs: dict) -> dict:
        """N at sum coeffs[i] e_i."""
        out: dict = {}
        items = sorted(coeffs.items())
        for a, (i, ci) in enumerate(items):
            _axpy(out, -ci * ci, self.n(i))
            for j, cj in items[a + 1:]:
                _axpy(out, -ci * cj, self.p(i, j))
        return out

    def element(self, coeffs: dict) -> Element:
        acc: dict = {}
        for i, c in coeffs.items():
            _axpy(acc, -c, _sparse(self.space.basis[i]))
        return self.alg.element([acc.get(i, 0) for i in range(self.alg.dim)])


def _all_skew_or_all_symmetric(mats: Sequence[RMatrix]) -> bool:
    return all(m.T == -m for m in mats) or all(m.T == m for m in mats)


def normality_on_space(alg: LieAlgebra, space: Subspace, _table: Optional[_NormalTable] = None) -> Normality:
    """Decide whether [y, y^T] vanishes for every y in the span of *space*."""
    table = _table or _NormalTable(alg, space)
    # a span of skew (or of symmetric) matrices is closed under y -> y^T = -y (or y)
    if _all_skew_or_all_symmetric(table.mats):
        return Normality.IDENTICALLY_NORMAL
    k = len(table)
    for i in range(k):
        if table.n(i):
            return Normality.NOT_IDENTICALLY
    for i, j in itertools.combinations(range(k), 2):
        if table.p(i, j):
            return Normality.NOT_IDENTICALLY
    return Normality.IDENTICALLY_NORMAL


def _stage4_candidates(k: int, budget: SearchBudget):
    order = list(range(k - 1, -1, -1))
    values = [c for a in range(1, budget.max_coeff + 1) for c in (a, -a)]
    for size in range(1, min(budget.max_terms, k) + 1):
        for idx in itertools.combinations(order, size):
            for cs in itertools.product(values, repeat=size):
                if cs[0] < 0:
                    continue  # y and -y are the same witness
                g = 0
                for c in cs:
                    g = gcd(g, c)
                if g != 1:
                    continue
                if size <= 2 and all(abs(c) == 1 for c in cs):
                    continue  # already tried in stages 2 and 3
                yield dict(zip(idx, cs))


def _search(table: _NormalTable, budget: SearchBudget, combinations: bool) -> Optional[dict]:
    k = len(table)
    # single basis vectors, last first
    for i in range(k - 1, -1, -1):
        if not table.n(i):
            return {i: 1}
    for j in range(k - 1, -1, -1):
        for i in range(j - 1, -1, -1):
            for s in (1, -1):
                c = {j: 1, i: s}
                if not table.value(c):
                    return c
    if not combinations or budget.max_terms == 0:
        return None
    for n, c in enumerate(_stage4_candidates(k, budget)):
        if n >= budget.max_candidates:
            break
        if not table.value(c):
            return c
    return None


def find_normal_witness(alg: LieAlgebra, space: Subspace, budget: SearchBudget = DEFAULT_BUDGET,
                        _table: Optional[_NormalTable] = None) -> Optional[Element]:
    """A nonzero y in span(space) with [y, y^T] = 0, or None if the search runs dry.

    Candidates are tried in a fixed order, always starting from the last
    canonical basis vector: the whole space if it is identically normal,
    then single basis vectors, then e_i + e_j and e_i - e_j, then small
    integer combinations bounded by *budget*.
    """
    if space.dim == 0:
        return None
    table = _table or _NormalTable(alg, space)
    if normality_on_space(alg, space, table) is Normality.IDENTICALLY_NORMAL:
        return table.element({space.dim - 1: 1})
    c = _search(table, budget, combinations=True)
    return None if c is None else table.element(c)


def _definite(g: list[list]) -> bool:
    """Exact test that a symmetric rational matrix is positive definite."""
    a = [row[:] for row in g]
    n = len(a)
    for i in range(n):
        if a[i][i] <= 0:
            return False
        for r in range(i + 1, n):
            if a[r][i]:
                f = _div(a[r][i], a[i][i])
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return True


def _no_normal_certificate(table: _NormalTable, budget: SearchBudget) -> bool:
    """Try to prove that no nonzero y in L has [y, y^T] = 0.

    For a symmetric S, q(y) = scala(N(y), S) is a quadratic form on L; if
    it is definite then N(y) != 0 whenever y != 0.  The candidates for S
    are the N(e_i) and their sum.
    """
    k = len(table)
    if k == 0:
        return True
    if k > budget.certificate_max_dim:
        return False

    def dot(x: dict, y: dict):
        return sum((v * y[e] for e, v in x.items() if e in y), 0)

    candidates = [table.n(i) for i in range(k) if table.n(i)]
    if len(candidates) > 1:
        total: dict = {}
        for c in candidates:
            _axpy(total, -1, c)
        candidates.append(total)
    for s in candidates:
        g = [[0] * k for _ in range(k)]
        for i in range(k):
            g[i][i] = dot(table.n(i), s)
            for j in range(i + 1, k):
                g[i][j] = g[j][i] = _div(dot(table.p(i, j), s), 2)
        if _definite(g) or _definite([[-x for x in row] for row in g]):
            return True
    return False


def _verdict(alg: LieAlgebra, space: Subspace, budget: SearchBudget) -> MaximalityVerdict:
    if space.dim == 0:
        return Maximal("trivial-space")
    table = _NormalTable(alg, space)
    if normality_on_space(alg, space, table) is Normality.IDENTICALLY_NORMAL:
        return NotMaximal(table.element({space.dim - 1: 1}))
    c = _search(table, budget, combinations=False)
    if c is not None:
        return NotMaximal(table.element(c))
    if _no_normal_certificate(table, budget):
        return Maximal("definite-form")
    c = _search(table, budget, combinations=True)
    if c is not None:
        return NotMaximal(table.element(c))
    return Undecided(space.dim)


def check_maximal(alg: LieAlgebra, current: Sequence[Element],
                  budget: SearchBudget = DEFAULT_BUDGET) -> MaximalityVerdict:
    """Maximal, NotMaximal(witness) or Undecided(dim L) for the set *current*."""
    return _verdict(alg, constraint_space(alg, current), budget)


def canonical_element(alg: LieAlgebra, v: Element) -> Element:
    """Integer coordinates with gcd 1 and first nonzero coordinate positive."""
    return alg.element(primitive(v.coords))


def extend_one(alg: LieAlgebra, current: Sequence[Element],
               budget: SearchBudget = DEFAULT_BUDGET) -> Element:
    """The next element to add to *current*; raises if *current* is already maximal."""
    verdict = check_maximal(alg, current, budget)
    if isinstance(verdict, NotMaximal):
        return canonical_element(alg, verdict.witness)
    if isinstance(verdict, Maximal):
        raise ValueError("the set is already maximal")
    raise MaximalityUndecided(verdict.space_dim, current)


# -- main routine -------------------------------------------------------------------

SeedItem = Union[Element, RMatrix, Sequence]


def _as_element(alg: LieAlgebra, item: SeedItem, index: int) -> Element:
    if isinstance(item, Element):
        m = item.matrix
    elif isinstance(item, RMatrix):
        m = item
    else:
        coords = tuple(item)
        if len(coords) != alg.dim:
            raise SeedNotInAlgebra(index)
        return alg.element(coords)
    if m.shape != (alg.ambient, alg.ambient):
        raise SeedNotInAlgebra(index)
    found = coords_of(alg, m)
    if found is None:
        raise SeedNotInAlgebra(index)
    return found


def validate_seed(alg: LieAlgebra, seed: Sequence[SeedItem]) -> list[Element]:
    """Membership, independence, abelian and transpose checks, in that order."""
    elements = [_as_element(alg, item, k) for k, item in enumerate(seed, 1)]
    bad = _first_dependent(elements)
    if bad is not None:
        raise SeedNotIndependent(bad)
    ok, pair = check_abelian(elements)
    if not ok:
        raise SeedNotAbelian(pair)
    ok, pair = check_normal_pairs(elements)
    if not ok:
        raise SeedNotNormal(pair)
    return elements


def _starting_element(alg: LieAlgebra, budget: SearchBudget) -> Optional[Element]:
    for i in range(1, alg.dim + 1):
        if is_normal(alg.basis[i - 1]):
            return alg.unit(i)
    verdict = _verdict(alg, Subspace.full(alg.dim), budget)
    if isinstance(verdict, Undecided):
        raise MaximalityUndecided(verdict.space_dim)
    if isinstance(verdict, Maximal):
        return None
    return canonical_element(alg, verdict.witness)


def rank_and_cartan(alg: LieAlgebra, seed: Sequence[SeedItem] = (),
                    budget: SearchBudget = DEFAULT_BUDGET) -> CartanResult:
    """Extend *seed* one element at a time until no normal element is left in L.

    Seed items may be Elements, matrices, or coordinate vectors.  An empty
    seed starts from the first basis element that commutes with its transpose.
    """
    elements = validate_seed(alg, seed)
    origins = ["seed"] * len(elements)
    if not elements:
        start = _starting_element(alg, budget)
        if start is None:
            return CartanResult(alg.name, (), (), "maximal", "definite-form")
        elements, origins = [start], ["added"]

    space = constraint_space(alg, elements)
    while True:
        verdict = _verdict(alg, space, budget)
        if isinstance(verdict, Maximal):
            return CartanResult(alg.name, tuple(elements), tuple(origins), "maximal", verdict.certificate)
        if isinstance(verdict, Undecided):
            raise MaximalityUndecided(verdict.space_dim, elements)
        w = canonical_element(alg, verdict.witness)
        elements.append(w)
        origins.append("added")
        space = _restrict(alg, space, w.matrix)
