import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import CATALOG, algebra, coords, matrices, sym
from liecartan.catalog import F, J, sl_basis, so_basis
from liecartan.lie import LieAlgebra, NotClosedError, ad_kernel, bracket, coords_of, is_closed, scala
from liecartan.linalg import RMatrix, Subspace


def test_bracket_with_itself_vanishes():
    x = RMatrix([[1, 2], [3, 4]])
    assert bracket(x, x).is_zero()


def test_bracket_sl3_b1_with_its_transpose():
    b1 = sl_basis(3).basis[0]
    assert bracket(b1, b1.T) == RMatrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]])


def test_identity_is_central():
    y = RMatrix([[1, 2, 0], [0, 5, 7], [1, 1, 1]])
    assert bracket(RMatrix.identity(3), y).is_zero()


def test_bracket_size_mismatch():
    with pytest.raises(ValueError):
        bracket(RMatrix.identity(2), RMatrix.identity(3))


def test_scala_examples():
    j12 = J(4, 1, 2)
    assert scala(j12, j12) == 2
    assert scala(j12, RMatrix.zeros(4)) == 0
    x, y = RMatrix([[1, 2], [3, 4]]), RMatrix([[5, 6], [7, 8]])
    assert scala(x, y) == scala(y, x) == 70
    with pytest.raises(ValueError):
        scala(RMatrix.identity(2), RMatrix.identity(3))


def test_coords_of_basis_element():
    alg = so_basis(6)
    assert coords_of(alg, alg.basis[2]).coords == tuple(int(i == 2) for i in range(15))


def test_coords_of_combination():
    alg = algebra("g2")
    m = alg.basis[0] + alg.basis[4] * 5
    e = coords_of(alg, m)
    assert e.coords == (1, 0, 0, 0, 5) + (0,) * 9
    assert e.matrix == m


def test_coords_of_outside_the_algebra():
    assert coords_of(so_basis(4), F(4, 1, 2)) is None
    assert coords_of(sl_basis(3), RMatrix.identity(3)) is None


def test_ad_kernel_of_zero_is_everything():
    alg = so_basis(5)
    assert ad_kernel(alg, RMatrix.zeros(5)) == Subspace.full(alg.dim)


def test_ad_kernel_so6_b1():
    alg = so_basis(6)
    ker = ad_kernel(alg, alg.basis[0])
    # independent oracle: sympy nullspace of the flattened bracket equations
    cols = [sym(bracket(alg.basis[0], b)).reshape(36, 1) for b in alg.basis]
    oracle = sympy.Matrix.hstack(*cols).nullspace()
    assert ker.dim == len(oracle) == 7
    for k in (1, 10, 15):
        assert tuple(int(i == k - 1) for i in range(15)) in ker


def test_ad_kernel_requires_closure():
    # span{F12, F21} is not closed: [F12, F21] = F11 - F22
    alg = LieAlgebra([F(2, 1, 2), F(2, 2, 1)])
    with pytest.raises(NotClosedError):
        ad_kernel(alg, alg.basis[0])


def test_is_closed_examples():
    assert is_closed(so_basis(4)) == (True, None)
    assert is_closed(algebra("g2")) == (True, None)
    assert is_closed(LieAlgebra([F(2, 1, 2), F(2, 2, 1)])) == (False, (1, 2))
    # [F12, F11 - F22] = -2 F12 stays inside
    assert is_closed(LieAlgebra([F(2, 1, 2), F(2, 1, 1) - F(2, 2, 2)])) == (True, None)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_algebras_are_closed(name):
    assert is_closed(algebra(name)) == (True, None)


# -- properties on random elements of each catalog algebra ---------------------------

def _elements(draw, alg, k):
    return [alg.expand(draw(coords(alg.dim))) for _ in range(k)]


@pytest.mark.parametrize("name", sorted(CATALOG))
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_bracket_antisymmetry_and_jacobi(name, data):
    alg = algebra(name)
    x, y, z = _elements(data.draw, alg, 3)
    assert bracket(x, y) == -bracket(y, x)
    jacobi = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert jacobi.is_zero()
    # bilinearity in the first slot
    assert bracket(x + y * 3, z) == bracket(x, z) + bracket(y, z) * 3


@pytest.mark.parametrize("name", ["so(4)", "sl(3)", "g2", "split g2"])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_ad_kernel_defining_property(name, data):
    alg = algebra(name)
    c = data.draw(coords(alg.dim))
    m = alg.expand(c)
    ker = ad_kernel(alg, m)
    for v in ker:
        assert bracket(m, alg.expand(v)).is_zero()
    assert tuple(c) in ker
    # dimension matches an independent rank computation
    cols = [sym(bracket(m, b)).reshape(alg.ambient ** 2, 1) for b in alg.basis]
    assert ker.dim == alg.dim - sympy.Matrix.hstack(*cols).rank()


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_scala_is_positive_definite(m):
    if m.is_zero():
        assert scala(m, m) == 0
    else:
        assert scala(m, m) > 0
