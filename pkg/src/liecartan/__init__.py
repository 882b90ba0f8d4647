"""Rank and Cartan subalgebras of matrix Lie algebras, computed exactly."""

from .catalog import g2_basis, get_algebra, load_custom, sl_basis, so44_so22_basis, so_basis, split_g2_basis
from .lie import Element, LieAlgebra, ad_kernel, bracket, coords_of, is_closed, scala
from .linalg import RMatrix, Subspace, intersect, nullspace, rref, solve_in_span
from .solver import CartanResult, SearchBudget, rank_and_cartan

__all__ = [
    "CartanResult", "Element", "LieAlgebra", "RMatrix", "SearchBudget", "Subspace",
    "ad_kernel", "bracket", "coords_of", "g2_basis", "get_algebra", "intersect", "is_closed",
    "load_custom", "nullspace", "rank_and_cartan", "rref", "scala", "sl_basis",
    "so44_so22_basis", "so_basis", "solve_in_span", "split_g2_basis",
]
