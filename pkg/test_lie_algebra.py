#!/usr/bin/env python3
# test_lie_algebra.py
# Tests for o(p+1,q+1): grading, T and U_i, centralizers, stabilizers and SL(2)

from fractions import Fraction

import numpy as np
import pytest

from ein import exact
from ein.errors import NotContainedError, NotInAlgebraError, NotInGroupError, NotNilpotentError
from ein.lie_algebra import (
    AlgElement, GroupElement, Subalgebra, adjoint, algebra_basis, algebra_coordinates,
    algebra_dimension, basis_U, centralizer, closure, codim_in, element_T, exp_nilpotent,
    from_algebra_coordinates, grade, group_inverse, iminus, iminus_inverse, iplus, iplus_inverse,
    parabolic, reductive_action, reductive_basis, rotation_sl2, sl2_algebra_embed, sl2_embed,
    translation_type, uminus_basis, uplus_basis,
)
from ein.nilpotency import random_group_element
from ein.quadratic_forms import Signature, basis_point, basis_vector

SIGNATURES = [Signature(1, 2), Signature(1, 3), Signature(2, 2)]


def unit_matrix(N, entries):
    rows = [[0] * N for _ in range(N)]
    for (i, j), v in entries.items():
        rows[i][j] = v
    return rows


def test_T_and_U_matrices():
    sig = Signature(1, 2)
    assert element_T(sig).entries() == unit_matrix(5, {(0, 3): 1, (1, 4): -1})
    assert basis_U(sig, 1).entries() == unit_matrix(5, {(1, 0): 1, (4, 3): -1})
    assert basis_U(sig, 3).entries() == unit_matrix(5, {(3, 0): 1, (4, 1): -1})
    print("✓ T = E_0^n - E_1^{n+1}, U_1 and U_n as displayed")


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_basis_dimensions(sig):
    N = sig.ambient_dim
    assert len(algebra_basis(sig)) == algebra_dimension(sig) == N * (N - 1) // 2
    assert len(uminus_basis(sig)) == len(uplus_basis(sig)) == sig.n
    assert len(reductive_basis(sig)) == algebra_dimension(sig) - 2 * sig.n


def test_non_algebra_matrix_rejected():
    sig = Signature(1, 2)
    with pytest.raises(NotInAlgebraError):
        AlgElement(unit_matrix(5, {(0, 0): 1}), sig)


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_algebra_coordinates_roundtrip(sig):
    rng = np.random.default_rng(3)
    coords = [Fraction(int(rng.integers(-3, 4))) for _ in range(algebra_dimension(sig))]
    X = AlgElement.zero(sig)
    for B, c in zip(algebra_basis(sig), coords):
        X = X + B * c
    assert [exact.to_fraction(c) for c in algebra_coordinates(X)] == coords
    assert from_algebra_coordinates([exact.qq(c) for c in coords], sig) == X


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_grading_reconstructs(sig):
    rng = np.random.default_rng(5)
    X = AlgElement.zero(sig)
    for B in algebra_basis(sig):
        X = X + B * Fraction(int(rng.integers(-2, 3)))
    parts = grade(X)
    assert parts.total() == X
    assert Subalgebra(sig, uminus_basis(sig)).contains(parts.minus)
    assert Subalgebra(sig, uplus_basis(sig)).contains(parts.plus)


def test_translation_isomorphisms():
    sig = Signature(1, 3)
    v = (Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(4))
    assert iminus_inverse(iminus(v, sig)) == v
    assert iplus_inverse(iplus(v, sig)) == v
    assert iplus(basis_vector(4, 0), sig) == element_T(sig)
    with pytest.raises(NotContainedError):
        iminus_inverse(element_T(sig))


def test_uplus_square():
    sig = Signature(1, 2)
    v = (Fraction(1), Fraction(2), Fraction(3))
    X = iplus(v, sig)
    # Q(v) = 2 * 1 * 3 + 2^2 = 10
    assert (X.mat * X.mat).to_list() == unit_matrix(5, {(0, 4): -10})


def test_translation_types():
    sig = Signature(1, 2)
    assert translation_type(element_T(sig)) == "null"
    assert translation_type(iplus((0, 1, 0), sig)) == "spacelike"
    assert translation_type(iplus((1, 0, -1), sig)) == "timelike"


def test_reductive_action():
    sig = Signature(1, 2)
    # diag(a, M, -a) acts on R^{p,q} by M + a I
    Z = [B for B in reductive_basis(sig) if B.entry(0, 0) != 0][0]
    action = reductive_action(Z).to_list()
    a = Z.entry(0, 0)
    assert all(exact.to_fraction(action[i][i]) == Z.entry(1 + i, 1 + i) + a for i in range(sig.n))


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_kernel_of_ad_T(sig):
    cT = centralizer([element_T(sig)])
    uminus = Subalgebra(sig, uminus_basis(sig))
    assert cT.intersection(uminus) == Subalgebra(sig, [basis_U(sig, 1)])
    p_alg = parabolic(basis_point(sig, 0), sig)
    assert codim_in(cT.intersection(p_alg), cT) == 1
    print(f"✓ {sig}: ker(ad T) cap u- = R U_1, dim c(T) = {cT.dimension}")


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_parabolic_is_r_plus_uplus(sig):
    p_alg = parabolic(basis_point(sig, 0), sig)
    assert p_alg == Subalgebra(sig, reductive_basis(sig) + uplus_basis(sig))
    assert p_alg.dimension == algebra_dimension(sig) - sig.n
    assert p_alg.is_closed()


def test_closure_of_uminus_and_T():
    sig = Signature(1, 2)
    h = closure(sig, [basis_U(sig, 1), element_T(sig)])
    # U_1 and T commute
    assert h.dimension == 2
    whole = closure(sig, [basis_U(sig, 2), iplus((0, 1, 0), sig)])
    assert whole.dimension > 2


def test_exp_nilpotent_and_group():
    sig = Signature(1, 2)
    g = exp_nilpotent(basis_U(sig, 1) * Fraction(3, 2))
    GroupElement(g.mat, sig)
    assert g * group_inverse(g) == GroupElement.identity(sig)
    assert exp_nilpotent(element_T(sig) * 2) == exp_nilpotent(element_T(sig)) * exp_nilpotent(element_T(sig))
    with pytest.raises(NotNilpotentError):
        exp_nilpotent(reductive_basis(sig)[0])


def test_random_group_elements_preserve_form():
    sig = Signature(2, 2)
    rng = np.random.default_rng(11)
    for _ in range(5):
        g = random_group_element(sig, rng)
        GroupElement(g.mat, sig)
        X = adjoint(g, basis_U(sig, 2))
        AlgElement(X.mat, sig)


def test_sl2_embedding_commutes_with_T():
    sig = Signature(1, 2)
    T = exp_nilpotent(element_T(sig))
    for A in ([[1, 1], [0, 1]], [[2, 0], [0, Fraction(1, 2)]], [[0, -1], [1, 0]], rotation_sl2(Fraction(1, 3))):
        assert sl2_embed(A, sig).commutes_with(T)
    with pytest.raises(NotInGroupError):
        sl2_embed([[2, 0], [0, 1]], sig)


def test_sl2_bottom_block_closed_form():
    sig = Signature(1, 2)
    g = sl2_embed([[2, 3], [1, 2]], sig).entries()
    assert [row[3:] for row in g[3:]] == [[2, -3], [-1, 2]]


def test_sl2_algebra_embed_is_derivative():
    sig = Signature(1, 2)
    L = sl2_algebra_embed([[0, 1], [0, 0]], sig)
    assert exp_nilpotent(L * 5) == sl2_embed([[1, 5], [0, 1]], sig)
    assert L.bracket(element_T(sig)).is_zero()


def test_rotation_by_quarter_turn_fixes_U_n():
    sig = Signature(1, 3)
    assert rotation_sl2(1) == [[0, -1], [1, 0]]
    g = sl2_embed(rotation_sl2(1), sig)
    assert adjoint(g, basis_U(sig, sig.n)) == basis_U(sig, sig.n)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
