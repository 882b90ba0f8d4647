"""Shared strategies and independent oracles for the test suite."""

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from liecartan import catalog
from liecartan.lie import bracket
from liecartan.linalg import RMatrix
from liecartan.solver import constraint_space

CATALOG = {
    "so(4)": lambda: catalog.so_basis(4),
    "so(6)": lambda: catalog.so_basis(6),
    "sl(3)": lambda: catalog.sl_basis(3),
    "sl(4)": lambda: catalog.sl_basis(4),
    "g2": catalog.g2_basis,
    "split g2": catalog.split_g2_basis,
    "so(4,4)+so(2,2)": catalog.so44_so22_basis,
}

_cache = {}


def algebra(name):
    if name not in _cache:
        _cache[name] = CATALOG[name]()
    return _cache[name]


small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)
sparse_rationals = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), small_rationals)


@st.composite
def matrices(draw, max_rows=5, max_cols=6, rows=None, cols=None, elements=sparse_rationals):
    r = rows if rows is not None else draw(st.integers(1, max_rows))
    c = cols if cols is not None else draw(st.integers(1, max_cols))
    data = draw(st.lists(st.lists(elements, min_size=c, max_size=c), min_size=r, max_size=r))
    return RMatrix(data)


@st.composite
def vector_lists(draw, length, max_vectors=4):
    k = draw(st.integers(0, max_vectors))
    return [tuple(draw(st.lists(sparse_rationals, min_size=length, max_size=length))) for _ in range(k)]


def coords(n):
    return st.lists(st.integers(-3, 3), min_size=n, max_size=n)


def sym(m: RMatrix) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction)
                                         else sympy.Integer(x) for x in m.entries])


def sym_rank(vectors) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    return sympy.Matrix([[sympy.Rational(str(x)) for x in v] for v in vectors]).rank()


def same_span(a, b) -> bool:
    a, b = list(a), list(b)
    ra, rb = sym_rank(a), sym_rank(b)
    return ra == rb == sym_rank(a + b)


def validity_problems(alg, result):
    """Everything wrong with a CartanResult, checked without the solver's own linear algebra."""
    problems = []
    els = result.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            if not bracket(els[i].matrix, els[j].matrix).is_zero():
                problems.append(f"[v{i + 1}, v{j + 1}] != 0")
        for j in range(i, len(els)):
            if not bracket(els[i].matrix, els[j].matrix.T).is_zero():
                problems.append(f"[v{i + 1}, v{j + 1}^T] != 0")
    for e in els:
        if alg.expand(e.coords) != e.matrix:
            problems.append("coordinates do not realize the matrix")
    if sym_rank(e.coords for e in els) != len(els):
        problems.append("elements are dependent")
    if result.certificate == "trivial-space":
        if constraint_space(alg, els).dim != 0:
            problems.append("constraint space of the result is not {0}")
    elif result.certificate != "definite-form":
        problems.append(f"unknown certificate {result.certificate!r}")
    return problems


def generic_entry(alg, i, j):
    """Entry (i, j) (1-based) of sum a_k b_k as {k: coefficient}."""
    return {k: b[i - 1, j - 1] for k, b in enumerate(alg.basis, 1) if b[i - 1, j - 1]}


# lines printed by the acceptance suite, echoed in the terminal summary
ACCEPTANCE = []
