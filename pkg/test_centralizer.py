#!/usr/bin/env python3
# test_centralizer.py
# Tests for c(T), its parameter slots, the slice q and the Heisenberg ideal

from fractions import Fraction

import numpy as np
import pytest

from ein import centralizer_structure as cs
from ein.errors import (
    DimensionMismatch, NotCommutingError, NotContainedError, NotInAlgebraError, PreconditionError,
)
from ein.lie_algebra import Subalgebra, basis_U, element_T
from ein.nilpotency import maximal_unipotent
from ein.quadratic_forms import Signature

SIGNATURES = [Signature(1, 2), Signature(1, 3), Signature(2, 2)]


@pytest.mark.parametrize("sig,dim", [(Signature(1, 2), 6), (Signature(2, 2), 9), (Signature(1, 3), 9)], ids=str)
def test_ctau_dimension(sig, dim):
    report = cs.ctau_basis(sig.p, sig.q)
    assert report.kernel.dimension == dim
    assert report.expected_dimension == dim
    assert report.passed
    print(f"✓ dim c(T) at {sig} = {dim}")


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_assemble_roundtrip(sig):
    rng = np.random.default_rng(13)
    for _ in range(5):
        e = cs.random_ctau(sig, rng)
        X = cs.assemble(e)
        assert X.bracket(element_T(sig)).is_zero()
        assert cs.disassemble(X) == e


def test_s_slot_is_T():
    sig = Signature(1, 3)
    assert cs.assemble(cs.CTauElement(sig, s=1)) == element_T(sig)


def test_slot_validation():
    sig = Signature(2, 2)
    with pytest.raises(NotInAlgebraError):
        cs.CTauElement(sig, M=((1, 0), (0, 1)))
    with pytest.raises(DimensionMismatch):
        cs.CTauElement(sig, x=(1, 2, 3))
    with pytest.raises(NotContainedError):
        cs.CTauElement(sig, a=1).to_q()


def test_disassemble_needs_commuting_element():
    sig = Signature(1, 2)
    with pytest.raises(NotCommutingError):
        cs.disassemble(basis_U(sig, sig.n))


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_q_bracket_laws(sig):
    rng = np.random.default_rng(31)
    for _ in range(5):
        u1, u2 = cs.random_q(sig, rng), cs.random_q(sig, rng)
        out = cs.q_bracket(u1, u2)
        assert out.b == 0
        assert out == cs.disassemble(u1.matrix().bracket(u2.matrix())).to_q()


@pytest.mark.parametrize("sig,ideal", [(Signature(1, 2), 3), (Signature(2, 2), 5), (Signature(1, 3), 5)], ids=str)
def test_heisenberg_structure(sig, ideal):
    report = cs.heis_structure_report(sig.p, sig.q)
    assert report.ideal_dimension == ideal
    assert report.center_dimension == 1
    assert report.q_dimension == cs.ctau_basis(sig.p, sig.q).kernel.dimension - 2
    assert report.passed
    assert report.to_json()["passed"]


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_heisenberg_triple(sig):
    X, Y, Z = cs.heisenberg_triple(sig)
    assert X.bracket(Y) == -Z
    assert X.bracket(Z).is_zero()
    assert Y.bracket(Z).is_zero()


def test_b_vanishing_on_maximal_unipotent():
    sig = Signature(1, 2)
    report = cs.centralizer_b_vanishing(maximal_unipotent(sig))
    assert report.passed
    assert all(b == 0 for b in report.b_values)


def test_b_vanishing_preconditions():
    sig = Signature(1, 2)
    with pytest.raises(PreconditionError):
        cs.centralizer_b_vanishing(Subalgebra(sig, [element_T(sig)], closed=True))
    with pytest.raises(PreconditionError):
        cs.centralizer_b_vanishing(Subalgebra(sig, [basis_U(sig, 1)], closed=True))


def test_relations_for_central_element():
    sig = Signature(2, 2)
    rng = np.random.default_rng(2)
    center = cs.QElement(sig, s=Fraction(1))
    assert cs.centralizer_relations(center, cs.random_q(sig, rng)).passed


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
