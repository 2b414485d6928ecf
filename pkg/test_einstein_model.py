#!/usr/bin/env python3
# test_einstein_model.py
# Tests for Ein^{p,q}: stereographic charts, null lines, the flow tau^s and its fixed set

from fractions import Fraction

import numpy as np
import pytest

from ein import einstein_model as em
from ein.errors import ChartDomainError, FixedSetError, NoCommonGeodesicError, NotNullError, PreconditionError
from ein.quadratic_forms import Signature

SIGNATURES = [Signature(1, 2), Signature(1, 3), Signature(2, 2)]


def test_flow_example():
    sig = Signature(1, 2)
    y = em.EinPoint.of([0, 0, 0, 1, 0], sig)
    assert str(em.tau_flow(1, y)) == "[1:0:0:1:0]"
    assert em.tau_limit(y) == em.basis_ein_point(sig, 0)
    assert em.attractor_vertex(y) == em.basis_ein_point(sig, 0)
    print("✓ tau^1 [0:0:0:1:0] = [1:0:0:1:0], limit [e_0]")


def test_off_cone_point_rejected():
    with pytest.raises(NotNullError):
        em.EinPoint.of([1, 0, 0, 0, 1], Signature(1, 2))


def test_flow_refused_without_null_directions():
    sig = Signature(0, 3)
    y = em.EinPoint.of([0, 0, 0, 0, 1], sig)
    refusals = [
        lambda: em.tau_flow(1, y),
        lambda: em.tau_matrix(1, sig),
        lambda: em.tau_limit(y),
        lambda: em.attractor_vertex(y),
        lambda: em.in_fixed_set(y),
        lambda: em.lambda_point(0, sig),
        lambda: em.lambda_geodesic(sig),
    ]
    for call in refusals:
        with pytest.raises(PreconditionError):
            call()
    x = em.stereo_inverse((1, 2, 3), sig)
    assert tuple(em.stereo_forward(x)) == (1, 2, 3)


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_flow_matches_matrix(sig):
    rng = np.random.default_rng(21)
    for _ in range(5):
        y = em.random_ein_point(sig, rng)
        s = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
        assert em.act(em.tau_matrix(s, sig), y) == em.tau_flow(s, y)


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_limit_is_attractor_vertex(sig):
    rng = np.random.default_rng(4)
    for _ in range(10):
        y = em.random_point_off_fixed_set(sig, rng)
        limit = em.tau_limit(y)
        assert em.in_lambda(limit)
        assert limit == em.attractor_vertex(y)
        assert em.lightcone_contains(em.LightconeSpec(limit), y)


def test_limit_of_fixed_point_fails():
    sig = Signature(1, 2)
    with pytest.raises(FixedSetError):
        em.tau_limit(em.basis_ein_point(sig, 0))
    with pytest.raises(FixedSetError):
        em.attractor_vertex(em.lambda_point(3, sig))


def test_lambda_is_fixed_geodesic():
    sig = Signature(1, 3)
    geodesic = em.lambda_geodesic(sig)
    for t in (0, 1, Fraction(-2, 3)):
        x = em.lambda_point(t, sig)
        assert geodesic.contains(x)
        assert em.tau_flow(5, x) == x
    assert geodesic.contains(em.lambda_at_infinity(sig))


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_stereo_roundtrip(sig):
    v = tuple(Fraction(k + 1, 2) for k in range(sig.n))
    assert em.stereo_forward(em.stereo_inverse(v, sig)) == v
    assert em.minkowski_contains(em.basis_ein_point(sig, 0), em.stereo_inverse(v, sig))


def test_stereo_forward_outside_chart():
    sig = Signature(1, 2)
    with pytest.raises(ChartDomainError):
        em.stereo_forward(em.basis_ein_point(sig, 0))


def test_conformal_ratio():
    sig = Signature(1, 2)
    assert em.conformal_ratio((0, 0, 0), sig) == 1
    assert em.conformal_ratio((1, 0, 0), sig) == 4
    v = (Fraction(1, 2), Fraction(-1), Fraction(2))
    assert em.conformal_ratio(v, sig) == (1 + sum(x * x for x in v)) ** 2


def test_null_line_boundary():
    sig = Signature(1, 2)
    c, u = (0, 0, 0), (1, 0, 0)
    assert str(em.null_line_boundary(c, u, sig)) == "[0:1:0:0:0]"
    assert em.same_boundary_predicate(c, u, (0, 1, 0), u, sig)
    assert not em.same_boundary_predicate(c, u, (0, 0, 1), u, sig)
    assert not em.same_boundary_predicate(c, u, c, (0, 0, 1), sig)
    with pytest.raises(NotNullError):
        em.null_line_boundary(c, (0, 1, 0), sig)


def test_null_line_images_are_geodesics():
    sig = Signature(1, 3)
    assert em.null_line_image_is_geodesic((1, 2, 3, 4), (0, 0, 0, 1), sig)
    assert em.null_line_image_is_geodesic((0, 1, -1, 2), (1, 1, 1, -1), sig)


def test_geodesic_through_needs_orthogonal_points():
    sig = Signature(1, 2)
    e0 = em.basis_ein_point(sig, 0)
    with pytest.raises(NoCommonGeodesicError):
        em.geodesic_through(e0, em.basis_ein_point(sig, 4))
    with pytest.raises(NoCommonGeodesicError):
        em.geodesic_through(e0, e0)
    geodesic = em.geodesic_through(e0, em.basis_ein_point(sig, 1))
    assert geodesic.same_as(em.lambda_geodesic(sig))


def test_fixed_set_dimension():
    sig = Signature(2, 2)
    rng = np.random.default_rng(9)
    for _ in range(5):
        y = em.random_fixed_point(sig, rng)
        assert em.in_fixed_set(y)
        assert em.tau_flow(3, y) == y
        assert em.fixed_set_dimension_at(y) == sig.n - 2
    with pytest.raises(PreconditionError):
        em.random_fixed_point(Signature(1, 2), rng)


def test_float_flow_approaches_limit():
    sig = Signature(1, 2)
    y = em.stereo_inverse((1, 2, 3), sig)
    arr = [float(c) for c in y.rep]
    approx = em.tau_flow_float(1e8, arr, sig.n)
    limit = em.tau_limit_float(arr, sig.n)
    np.testing.assert_allclose(limit, [1.0, -1.0 / 3.0, 0.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(approx, limit, atol=1e-6)


def test_float_limit_near_fixed_set():
    with pytest.raises(FixedSetError):
        em.tau_limit_float([1.0, 0.0, 0.0, 1e-12, 0.0], 3)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
