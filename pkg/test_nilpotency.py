#!/usr/bin/env python3
# test_nilpotency.py
# Tests for lower central series, the 2p+1 bound, null translations and witnesses

import numpy as np
import pytest

from ein import nilpotency
from ein.errors import NotContainedError, NotNilpotentError, PreconditionError, WitnessSearchError
from ein.lie_algebra import Subalgebra, adjoint, basis_U, element_T, iplus, uplus_basis
from ein.nilpotency import (
    ModuleSpec, ad_brackets_property, is_null_translation, lower_central_series, maximal_unipotent,
    nilpotence_degree, order_of_nilpotents, random_group_element, random_nilpotent_subalgebra,
    reductive_projection, relation_containment, rep_order_bound, translation_conjugacy_witness,
    verify_degree_bound, witness_search,
)
from ein.quadratic_forms import Signature

SIGNATURES = [Signature(1, 2), Signature(1, 3), Signature(2, 2)]


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_translations_are_abelian(sig):
    uplus = Subalgebra(sig, uplus_basis(sig), closed=True)
    series = lower_central_series(uplus)
    assert series.degree == 1
    assert series.dimensions == [sig.n, 0]
    assert nilpotence_degree(uplus) == 1


@pytest.mark.parametrize("sig,degree", [(Signature(1, 2), 3), (Signature(1, 3), 3), (Signature(2, 2), 3)], ids=str)
def test_maximal_unipotent_degree(sig, degree):
    n = maximal_unipotent(sig)
    assert n.is_closed()
    assert nilpotence_degree(n) == degree
    print(f"✓ maximal unipotent of o{sig}: degree {degree}")


def test_whole_algebra_is_not_nilpotent():
    whole = Subalgebra.whole(Signature(1, 2))
    assert lower_central_series(whole).degree is None
    with pytest.raises(NotNilpotentError):
        nilpotence_degree(whole)
    report = verify_degree_bound(whole)
    assert report.degree is None
    assert not report.passed


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_degree_bound_on_random_subalgebras(sig):
    rng = np.random.default_rng(2024)
    for _ in range(5):
        h = random_nilpotent_subalgebra(sig, rng)
        report = verify_degree_bound(h)
        assert report.passed
        assert report.degree <= 2 * sig.p + 1


def test_degree_bound_checks_last_term():
    sig = Signature(1, 2)
    report = verify_degree_bound(maximal_unipotent(sig))
    assert report.degree == 3
    assert report.null_translation_checks
    assert all(report.null_translation_checks)


def test_null_translation_test():
    sig = Signature(1, 2)
    assert is_null_translation(element_T(sig))
    assert is_null_translation(basis_U(sig, 1))
    assert not is_null_translation(iplus((0, 1, 0), sig))
    assert not is_null_translation(element_T(sig) * 0)


def test_null_translation_invariant_under_conjugation():
    sig = Signature(2, 2)
    rng = np.random.default_rng(8)
    for _ in range(3):
        g = random_group_element(sig, rng)
        assert is_null_translation(adjoint(g, element_T(sig)))


def test_conjugacy_witness():
    sig = Signature(1, 2)
    witness = translation_conjugacy_witness(element_T(sig))
    assert witness is not None
    assert witness.null
    spacelike = translation_conjugacy_witness(iplus((0, 1, 0), sig))
    assert spacelike is None or not spacelike.null


@pytest.mark.parametrize("sig", [Signature(1, 2), Signature(1, 3), Signature(2, 3)], ids=str)
def test_witness_search_finds_degree_2p_plus_1(sig):
    h = witness_search(sig.p, sig.q)
    assert nilpotence_degree(h) == 2 * sig.p + 1
    print(f"✓ {sig}: witness of degree {2 * sig.p + 1}, dimension {h.dimension}")


def test_witness_search_reports_trace_on_failure():
    with pytest.raises(WitnessSearchError) as info:
        witness_search(2, 2)
    trace = info.value.trace
    assert trace[0]["stage"] == "maximal_unipotent"
    assert trace[0]["degree"] == 3
    assert trace[-1]["stage"] == "stopped"


def test_witness_search_stops_without_sampling(monkeypatch):
    def no_sampling(*args, **kwargs):
        raise AssertionError("witness_search sampled a random subalgebra")

    monkeypatch.setattr(nilpotency, "random_nilpotent_subalgebra", no_sampling)
    with pytest.raises(WitnessSearchError) as info:
        witness_search(2, 2)
    assert all("trials" not in entry for entry in info.value.trace)


@pytest.mark.parametrize("q", [3, 4])
def test_witness_search_needs_p_positive(q):
    with pytest.raises(PreconditionError):
        witness_search(0, q)


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_relation_containment(sig):
    report = relation_containment(maximal_unipotent(sig))
    assert report.passed
    rng = np.random.default_rng(17)
    u = random_nilpotent_subalgebra(sig, rng, conjugate=False)
    assert relation_containment(u).passed


def test_relation_containment_needs_parabolic():
    sig = Signature(1, 2)
    with pytest.raises(NotContainedError):
        relation_containment(Subalgebra(sig, [basis_U(sig, 1)], closed=True))


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_rep_order_bound(sig):
    ubar = reductive_projection(maximal_unipotent(sig))
    report = rep_order_bound(ubar)
    assert report.passed
    assert report.bound == 2 * sig.p + 1


def test_ad_brackets_property():
    sig = Signature(1, 3)
    n = maximal_unipotent(sig)
    module = ModuleSpec.ambient(sig)
    for k in range(1, nilpotence_degree(n) + 1):
        assert ad_brackets_property(n, module, k).passed
    with pytest.raises(PreconditionError):
        ad_brackets_property(n, module, 0)


def test_order_on_modules():
    sig = Signature(1, 2)
    n = maximal_unipotent(sig)
    ambient = order_of_nilpotents(n, ModuleSpec.ambient(sig))
    assert ambient.nilpotent
    assert ambient.order <= sig.ambient_dim
    uplus = Subalgebra(sig, uplus_basis(sig), closed=True)
    adjoint_order = order_of_nilpotents(uplus, ModuleSpec.adjoint(uplus))
    assert adjoint_order.order == 1


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
