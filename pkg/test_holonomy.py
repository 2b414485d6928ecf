#!/usr/bin/env python3
# test_holonomy.py
# Tests for holonomy factorizations, the subgroup S, framings of g/p and developments

from fractions import Fraction

import numpy as np
import pytest

from ein import cartan_holonomy as ch
from ein import einstein_model as em
from ein import exact
from ein.errors import (
    NonContiguousCurveError, NotCommutingError, NotInSError, PoleError, PreconditionError,
)
from ein.lie_algebra import GroupElement, basis_U, element_T, exp_nilpotent, iminus, sl2_embed
from ein.quadratic_forms import Signature

SIGNATURES = [Signature(1, 2), Signature(1, 3), Signature(2, 2), Signature(2, 3)]
ST_SAMPLES = [(1, 1), (Fraction(1, 2), 3), (-1, Fraction(1, 3)), (2, Fraction(-1, 5)), (0, 4)]


def test_reparametrization():
    c = ch.Reparametrization(1)
    assert c(1) == Fraction(1, 2)
    assert c.pole == -1
    with pytest.raises(PoleError):
        c(-1)
    assert ch.Reparametrization(0).pole is None
    other = ch.Reparametrization(Fraction(2, 3))
    assert c.compose(other) == ch.Reparametrization(Fraction(5, 3))
    assert c(other(2)) == c.compose(other)(2)
    assert c.inverse()(c(5)) == 5


def test_holonomy_matrix_example():
    h = ch.holonomy_matrix(1, 1, Signature(1, 2)).entries()
    assert [h[i][i] for i in range(5)] == [2, 2, 1, Fraction(1, 2), Fraction(1, 2)]
    assert h[0][3] == 1
    assert h[1][4] == -1
    print("✓ h(1,1) = diag(2,2,1,1/2,1/2) + T")


def test_holonomy_matrix_at_pole():
    with pytest.raises(PoleError):
        ch.holonomy_matrix(1, -1, Signature(1, 2))


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_base_factorization(sig):
    for s, t in ST_SAMPLES:
        assert ch.verify_base_factorization(s, t, sig)
        factorization = ch.base_factorization(s, sig)
        assert factorization.verify(t)
        assert factorization.path_in_parabolic(t)


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_base_factorization_random_samples(sig):
    rng = np.random.default_rng(sig.p * 10 + sig.q)
    checked = 0
    while checked < 50:
        s, t = exact.random_fraction(rng), exact.random_fraction(rng)
        if 1 + s * t == 0:
            continue
        assert ch.verify_base_factorization(s, t, sig), (s, t)
        checked += 1
    print(f"✓ {sig}: tau^s e^(tU_n) = e^(c(t)U_n) h(s,t) on {checked} samples")


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_quotient_diagonal(sig):
    for s, t in ST_SAMPLES:
        h = ch.holonomy_matrix(s, t, sig)
        matrix = ch.adjoint_on_quotient(h, ch.u_minus_frame(sig))
        expected = ch.FramingScaling(sig.n).diagonal(s, t)
        assert matrix == [[expected[i] if i == j else 0 for j in range(sig.n)] for i in range(sig.n)]


def test_quotient_diagonal_example():
    assert ch.FramingScaling(3).diagonal(1, 1) == [1, Fraction(1, 2), Fraction(1, 4)]
    assert [ch.FramingScaling(4).sigma(i) for i in range(1, 5)] == [0, 1, 1, 2]


def test_S_element():
    sig = Signature(1, 2)
    U = iminus((Fraction(-1, 2), Fraction(1), Fraction(1)), sig)
    assert ch.in_S_domain(U)
    g = ch.construct_S_element(U)
    assert ch.fixes_base_point(g)
    assert g.commutes_with(ch.tau(1, sig))
    factorization = ch.conjugated_factorization(g, 1, t=1)
    assert factorization.generator == U
    for s, t in ST_SAMPLES:
        conj = ch.conjugated_factorization(g, s)
        assert conj.verify(t)
        h = conj.path(Fraction(t))
        matrix = ch.adjoint_on_quotient(h, ch.u_minus_frame(sig, g))
        expected = ch.FramingScaling(sig.n).diagonal(s, t)
        assert [matrix[i][i] for i in range(sig.n)] == expected


def test_S_element_rejections():
    sig = Signature(1, 2)
    with pytest.raises(NotInSError):
        ch.construct_S_element(iminus((Fraction(1, 2), Fraction(1), Fraction(-1)), sig))
    with pytest.raises(NotInSError):
        ch.construct_S_element(iminus((Fraction(1), Fraction(0), Fraction(1)), sig))
    assert not ch.in_S_domain(element_T(sig))


def test_t_dependent_operations_refuse_p_zero():
    sig = Signature(0, 3)
    refusals = [
        lambda: element_T(sig),
        lambda: ch.tau(1, sig),
        lambda: ch.holonomy_matrix(Fraction(4, 3), Fraction(1, 2), sig),
        lambda: ch.base_factorization(1, sig),
        lambda: ch.verify_base_factorization(1, 1, sig),
        lambda: ch.g_theta(1, sig),
        lambda: ch.lambda_factorization(1, sig),
        lambda: ch.construct_S_element(basis_U(sig, 1)),
        lambda: sl2_embed([[1, 0], [0, 1]], sig),
    ]
    for call in refusals:
        with pytest.raises(PreconditionError):
            call()
    # the graded algebra itself is still available
    assert ch.FramingScaling(sig.n).diagonal(1, 1) == [1, Fraction(1, 2), Fraction(1, 4)]
    assert exp_nilpotent(basis_U(sig, 2)).signature == sig


def test_conjugator_must_commute_with_tau():
    sig = Signature(1, 2)
    with pytest.raises(NotCommutingError):
        ch.conjugated_factorization(exp_nilpotent(basis_U(sig, 2)), 1)


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_g_theta_and_lambda_factorization(sig):
    for m in (0, 1, Fraction(1, 2), -3):
        assert ch.g_theta(m, sig).commutes_with(ch.tau(1, sig))
    for s, t in ST_SAMPLES:
        factorization = ch.lambda_factorization(s, sig)
        assert factorization.verify(t)
        assert factorization.path_in_parabolic(t)


def test_completeness_factorization():
    sig = Signature(1, 2)
    X = basis_U(sig, 1) + element_T(sig)
    Y = basis_U(sig, 1)
    samples = [Fraction(k, 3) for k in range(-4, 5)]
    assert ch.completeness_factorization_check(X, Y, lambda t: t, samples=samples).passed
    report = ch.completeness_factorization_check(X, Y, lambda t: 2 * t, samples=samples)
    assert not report.passed
    assert report.counterexample is not None


def test_model_geodesic_traces_lambda():
    sig = Signature(1, 3)
    geodesic = ch.GeodesicSpec(GroupElement.identity(sig), basis_U(sig, 1) + element_T(sig))
    for t in (0, 1, Fraction(-5, 2)):
        assert geodesic.projected(t) == em.lambda_point(t, sig)


def test_completeness_needs_c_fixing_zero():
    sig = Signature(1, 2)
    with pytest.raises(PreconditionError):
        ch.completeness_factorization_check(basis_U(sig, 1), basis_U(sig, 1), lambda t: t + 1, samples=[1])


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_triangle_development(sig):
    X = basis_U(sig, 2) * 2
    for a, c, r in ((0, 1, 1), (Fraction(1, 2), 2, 3), (-1, Fraction(-1, 3), Fraction(1, 2))):
        curve = ch.triangle_curve(a, X, c, r)
        assert ch.develop(curve) == ch.triangle_target(a, X, c, r)
    print(f"✓ {sig}: triangles develop to e^(rY)")


def test_triangle_preconditions():
    sig = Signature(1, 2)
    with pytest.raises(PreconditionError):
        ch.triangle_curve(0, basis_U(sig, 1), 1, 1)
    with pytest.raises(PreconditionError):
        ch.triangle_curve(0, basis_U(sig, 2), 0, 1)


def test_rectangle_closes():
    sig = Signature(1, 3)
    curve = ch.rectangle_curve(basis_U(sig, 1), element_T(sig), 2, Fraction(1, 3))
    assert ch.develop(curve) == GroupElement.identity(sig)
    with pytest.raises(PreconditionError):
        ch.rectangle_curve(basis_U(sig, 2), element_T(sig), 1, 1)


def test_curve_contiguity():
    sig = Signature(1, 2)
    identity = GroupElement.identity(sig)
    U = basis_U(sig, 1)
    with pytest.raises(NonContiguousCurveError):
        ch.Segment(identity, U, 1, 0)
    with pytest.raises(NonContiguousCurveError):
        ch.PiecewiseCurve([ch.Segment(identity, U, 0, 1), ch.Segment(identity, U, 2, 3)])
    with pytest.raises(NonContiguousCurveError):
        ch.PiecewiseCurve([ch.Segment(identity, U, 0, 1), ch.Segment(identity, U, 1, 2)])


def test_concatenation_multiplies_developments():
    sig = Signature(1, 2)
    first = ch.PiecewiseCurve.from_directions([(basis_U(sig, 2), 0, 1)])
    second = ch.PiecewiseCurve.from_directions([(element_T(sig), 0, 2)])
    joined = first.then(second)
    assert joined.end == 3
    assert ch.develop(joined) == ch.develop(first) * ch.develop(second)


def test_develop_sampled_constant_velocity():
    sig = Signature(1, 2)
    X = basis_U(sig, 1) + element_T(sig)
    Xf = exact.to_float_array(X.mat)
    D = ch.develop_sampled(lambda t: Xf, 0.0, 1.0)
    expected = exact.to_float_array(exp_nilpotent(X).mat)
    np.testing.assert_allclose(D, expected, atol=1e-8)
    assert ch.is_group_float(D, sig, rtol=1e-8)
    assert not ch.is_group_float(2 * np.eye(5), sig)


def test_develop_sampled_piecewise_curve():
    sig = Signature(1, 3)
    curve = ch.triangle_curve(1, basis_U(sig, 2), 2, 1)
    D = ch.develop_sampled(ch.curve_velocity_float(curve), 0.0, 1.0)
    np.testing.assert_allclose(D, exact.to_float_array(ch.develop(curve).mat), atol=1e-6)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
