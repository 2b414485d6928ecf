# suite.py
# Seeded verification suites: check registry, run_suite and the versioned Report

import logging
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from . import cartan_holonomy as ch
from . import centralizer_structure as cs
from . import einstein_model as em
from . import exact
from . import nilpotency as nil
from .codec import encode_element, encode_subalgebra, encode_vector, to_jsonable
from .config import SUITE_NAMES, SuiteConfig, scaled_trials
from .errors import EinError, PreconditionError, UnknownSuite, WitnessSearchError
from .lie_algebra import (
    AlgElement, GroupElement, Subalgebra, adjoint, algebra_dimension, basis_U, centralizer,
    codim_in, element_T, exp_nilpotent, from_algebra_coordinates, grade, iminus, iminus_inverse,
    iplus, iplus_inverse, parabolic, reductive_basis, sl2_embed, uminus_basis, uplus_basis,
)
from .quadratic_forms import (
    Cover, Signature, SplitForm, basis_point, basis_vector, projectivize, random_null_vector,
    require_null_translations,
)

logger = logging.getLogger(__name__)

REPORT_VERSION = 1
PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class CheckOutcome:
    status: str
    witness: Any = None
    detail: str = ""

    @classmethod
    def passed(cls, detail: str = "") -> "CheckOutcome":
        return cls(PASS, None, detail)

    @classmethod
    def failed(cls, detail: str, witness: Any = None) -> "CheckOutcome":
        return cls(FAIL, witness, detail)

    @classmethod
    def skipped(cls, detail: str, witness: Any = None) -> "CheckOutcome":
        return cls(SKIP, witness, detail)


CheckFn = Callable[[Signature, int, np.random.Generator, SuiteConfig], CheckOutcome]

# suite -> check name -> function
REGISTRY: Dict[str, Dict[str, CheckFn]] = {name: {} for name in SUITE_NAMES}


def register(suite: str, name: str):
    if suite not in REGISTRY:
        raise UnknownSuite(f"unknown suite {suite!r}")

    def decorator(fn: CheckFn) -> CheckFn:
        REGISTRY[suite][name] = fn
        return fn
    return decorator


def registered_checks() -> List[Tuple[str, str]]:
    return sorted((suite, name) for suite, checks in REGISTRY.items() for name in checks)


def check_rng(seed: int, name: str, signature: Signature) -> np.random.Generator:
    """Independent stream per (check, signature), stable across execution order."""
    entropy = [seed & 0xFFFFFFFF, seed >> 32, zlib.crc32(name.encode()), signature.p, signature.q]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def _trials(name: str, trials: int) -> int:
    return scaled_trials(name, trials)


def _random_algebra_element(sig: Signature, rng: np.random.Generator) -> AlgElement:
    coords = [exact.qq(exact.random_fraction(rng, 3, 2)) for _ in range(algebra_dimension(sig))]
    return from_algebra_coordinates(coords, sig)


def _random_st(rng: np.random.Generator) -> Tuple[Fraction, Fraction]:
    while True:
        s = exact.random_fraction(rng, 4, 3)
        t = exact.random_fraction(rng, 4, 3)
        if 1 + s * t != 0:
            return s, t


def _random_admissible_U(sig: Signature, rng: np.random.Generator) -> AlgElement:
    u = random_null_vector(SplitForm.tangent(sig), rng)
    if u[-1] < 0:
        u = tuple(-x for x in u)
    return iminus(u, sig)


def _projective_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(min(np.max(np.abs(a - b)), np.max(np.abs(a + b))))


# forms

@register("forms", "form_bilinearity")
def check_form_bilinearity(sig, trials, rng, cfg):
    for level in (SplitForm.ambient(sig), SplitForm.tangent(sig)):
        for _ in range(_trials("form_bilinearity", trials)):
            x = exact.random_vector(rng, level.dim)
            y = exact.random_vector(rng, level.dim)
            a = exact.random_fraction(rng)
            ax = [a * v for v in x]
            if level.inner(ax, y) != a * level.inner(x, y):
                return CheckOutcome.failed("inner is not linear", encode_vector(x))
            if level.inner(x, y) != level.inner(y, x):
                return CheckOutcome.failed("inner is not symmetric", encode_vector(x))
            if level.eval(x) != level.inner(x, x):
                return CheckOutcome.failed("eval_form differs from inner(x, x)", encode_vector(x))
    return CheckOutcome.passed()


@register("forms", "form_examples")
def check_form_examples(sig, trials, rng, cfg):
    form = SplitForm.ambient(sig)
    N = sig.ambient_dim
    e = lambda i: basis_vector(N, i)
    if form.eval(e(0)) != 0 or form.inner(e(0), e(N - 1)) != 1:
        return CheckOutcome.failed("split pair (e_0, e_{n+1}) is not hyperbolic")
    gram = form.gram.to_list()
    column = [row[0] for row in gram]
    if [i for i, v in enumerate(column) if v != 0] != [N - 1] or column[N - 1] != 1:
        return CheckOutcome.failed("J e_0 is not e_{n+1}")
    if sig.q > sig.p and form.eval(e(sig.p + 1)) != 1:
        return CheckOutcome.failed("middle block is not positive definite")
    return CheckOutcome.passed()


@register("forms", "projective_scaling")
def check_projective_scaling(sig, trials, rng, cfg):
    for _ in range(_trials("projective_scaling", trials)):
        x = exact.random_vector(rng, sig.ambient_dim)
        if all(v == 0 for v in x):
            continue
        lam = exact.random_fraction(rng, nonzero=True)
        scaled = [lam * v for v in x]
        if projectivize(scaled) != projectivize(x):
            return CheckOutcome.failed("projective point changed under scaling", encode_vector(x))
        ray_equal = projectivize(scaled, Cover.RAY) == projectivize(x, Cover.RAY)
        if ray_equal != (lam > 0):
            return CheckOutcome.failed("ray point ignores the sign of the scalar", encode_vector(x))
    return CheckOutcome.passed()


@register("forms", "null_sampler")
def check_null_sampler(sig, trials, rng, cfg):
    form = SplitForm.ambient(sig)
    for _ in range(_trials("null_sampler", trials)):
        x = random_null_vector(form, rng)
        if form.eval(x) != 0:
            return CheckOutcome.failed("sampled vector is not null", encode_vector(x))
    return CheckOutcome.passed()


# liealg

@register("liealg", "bracket_membership")
def check_bracket_membership(sig, trials, rng, cfg):
    for _ in range(max(1, trials // 10)):
        X = _random_algebra_element(sig, rng)
        Y = _random_algebra_element(sig, rng)
        Z = X.bracket(Y)
        AlgElement(Z.mat, sig)
        if not X.bracket(X).is_zero() or Y.bracket(X) != -Z:
            return CheckOutcome.failed("bracket is not antisymmetric", encode_element(X))
        if grade(X).total() != X:
            return CheckOutcome.failed("grading does not reconstruct X", encode_element(X))
    return CheckOutcome.passed()


@register("liealg", "translation_isomorphisms")
def check_translation_isomorphisms(sig, trials, rng, cfg):
    if iplus(basis_vector(sig.n, 0), sig) != element_T(sig):
        return CheckOutcome.failed("i+(1, 0, ..., 0) is not T")
    for _ in range(max(1, trials // 10)):
        v = exact.random_vector(rng, sig.n)
        if tuple(iminus_inverse(iminus(v, sig))) != tuple(v) or tuple(iplus_inverse(iplus(v, sig))) != tuple(v):
            return CheckOutcome.failed("i+- inverse is not a left inverse", encode_vector(v))
        X = iplus(v, sig)
        square = X.mat * X.mat
        expected = [[Fraction(0)] * sig.ambient_dim for _ in range(sig.ambient_dim)]
        expected[0][sig.n + 1] = -SplitForm.tangent(sig).eval(v)
        if exact.entries(square) != expected:
            return CheckOutcome.failed("i+(v)^2 != -Q(v) E_0^{n+1}", encode_vector(v))
    return CheckOutcome.passed()


@register("liealg", "kernel_facts")
def check_kernel_facts(sig, trials, rng, cfg):
    T = element_T(sig)
    cT = centralizer([T])
    uminus = Subalgebra(sig, uminus_basis(sig))
    if cT.intersection(uminus) != Subalgebra(sig, [basis_U(sig, 1)]):
        return CheckOutcome.failed("ker(ad T) meets u- outside R U_1")
    p_alg = parabolic(basis_point(sig, 0), sig)
    codim = codim_in(cT.intersection(p_alg), cT)
    if codim != 1:
        return CheckOutcome.failed(f"c(T) cap p has codimension {codim} in c(T)")
    return CheckOutcome.passed()


@register("liealg", "parabolic_blocks")
def check_parabolic_blocks(sig, trials, rng, cfg):
    p_alg = parabolic(basis_point(sig, 0), sig)
    graded = Subalgebra(sig, reductive_basis(sig) + uplus_basis(sig))
    if p_alg != graded:
        return CheckOutcome.failed("stabilizer of [e_0] differs from r + u+")
    p_minus = parabolic(basis_point(sig, sig.n + 1), sig)
    if p_minus != Subalgebra(sig, reductive_basis(sig) + uminus_basis(sig)):
        return CheckOutcome.failed("stabilizer of [e_{n+1}] differs from r + u-")
    if p_alg.dimension != algebra_dimension(sig) - sig.n:
        return CheckOutcome.failed(f"parabolic has dimension {p_alg.dimension}")
    return CheckOutcome.passed()


@register("liealg", "exp_in_group")
def check_exp_in_group(sig, trials, rng, cfg):
    for _ in range(max(1, trials // 20)):
        g = nil.random_group_element(sig, rng)
        GroupElement(g.mat, sig)
        if g * g.inverse() != GroupElement.identity(sig):
            return CheckOutcome.failed("J g^T J is not the inverse", encode_element(g))
    return CheckOutcome.passed()


@register("liealg", "sl2_embedding")
def check_sl2_embedding(sig, trials, rng, cfg):
    g = ch.g_theta(1, sig)
    U_n = basis_U(sig, sig.n)
    if adjoint(g, U_n) != U_n:
        return CheckOutcome.failed("rotation by pi/2 moves U_n")
    for _ in range(max(1, trials // 20)):
        alpha = exact.random_fraction(rng, nonzero=True)
        beta = exact.random_fraction(rng)
        gamma = exact.random_fraction(rng)
        A = [[alpha, beta], [gamma, (1 + beta * gamma) / alpha]]
        h = sl2_embed(A, sig)
        t = exact.random_fraction(rng)
        if alpha + beta * t == 0:
            continue
        image = em.act(h, em.lambda_point(t, sig))
        expected = em.lambda_point((gamma + A[1][1] * t) / (alpha + beta * t), sig)
        if image != expected:
            return CheckOutcome.failed("SL(2) does not act on Lambda by Moebius maps", to_jsonable(A))
    return CheckOutcome.passed()


# nilpotency

@register("nilpotency", "degree_bound")
def check_degree_bound(sig, trials, rng, cfg):
    if sig.p < 1:
        raise PreconditionError("degree bound is stated for p >= 1")
    for _ in range(_trials("degree_bound", trials)):
        h = nil.random_nilpotent_subalgebra(sig, rng)
        report = nil.verify_degree_bound(h)
        if not report.passed:
            return CheckOutcome.failed(f"degree {report.degree} against bound {report.bound}",
                                       encode_subalgebra(h))
    return CheckOutcome.passed()


@register("nilpotency", "tightness_witness")
def check_tightness_witness(sig, trials, rng, cfg):
    try:
        h = nil.witness_search(sig.p, sig.q)
    except WitnessSearchError as err:
        return CheckOutcome.skipped(str(err), err.trace)
    d = nil.nilpotence_degree(h)
    if d != 2 * sig.p + 1:
        return CheckOutcome.failed(f"witness has degree {d}", encode_subalgebra(h))
    return CheckOutcome.passed(f"degree {d}, dimension {h.dimension}")


@register("nilpotency", "null_translation_oracle")
def check_null_translation_oracle(sig, trials, rng, cfg):
    tangent = SplitForm.tangent(sig)
    for _ in range(max(1, trials // 20)):
        v = random_null_vector(tangent, rng)
        g = nil.random_group_element(sig, rng)
        X = adjoint(g, iplus(v, sig))
        if not nil.is_null_translation(X):
            return CheckOutcome.failed("conjugated null translation rejected", encode_element(X))
        witness = nil.translation_conjugacy_witness(X)
        if witness is None or not witness.null:
            return CheckOutcome.failed("no null conjugacy witness", encode_element(X))
    # Q(u_1 + u_n) = 2
    spacelike = iplus([Fraction(1) if i in (0, sig.n - 1) else Fraction(0) for i in range(sig.n)], sig)
    if nil.is_null_translation(spacelike):
        return CheckOutcome.failed("non-null translation accepted", encode_element(spacelike))
    return CheckOutcome.passed()


@register("nilpotency", "relation_containment")
def check_relation_containment(sig, trials, rng, cfg):
    for _ in range(max(1, trials // 20)):
        u = nil.random_nilpotent_subalgebra(sig, rng, conjugate=False)
        report = nil.relation_containment(u)
        if not report.passed:
            return CheckOutcome.failed(f"containment fails at k in {report.containments}",
                                       encode_subalgebra(u))
        ubar = nil.reductive_projection(u)
        if ubar.dimension:
            order = nil.rep_order_bound(ubar)
            if not order.passed:
                return CheckOutcome.failed(f"order {order.order} exceeds {order.bound}", encode_subalgebra(ubar))
    return CheckOutcome.passed()


@register("nilpotency", "ad_brackets")
def check_ad_brackets(sig, trials, rng, cfg):
    module = nil.ModuleSpec.ambient(sig)
    for _ in range(max(1, trials // 20)):
        h = nil.random_nilpotent_subalgebra(sig, rng)
        degree = nil.lower_central_series(h).degree
        for k in range(1, degree + 1):
            report = nil.ad_brackets_property(h, module, k)
            if not report.passed:
                return CheckOutcome.failed(f"l_{k - 1} does not map V into l^{k}(V)", encode_subalgebra(h))
    return CheckOutcome.passed()


# model

@register("model", "tau_flow_matches_matrix")
def check_tau_flow_matches_matrix(sig, trials, rng, cfg):
    for _ in range(max(1, trials // 5)):
        y = em.random_ein_point(sig, rng)
        s = exact.random_fraction(rng)
        t = exact.random_fraction(rng)
        flowed = em.tau_flow(s, y)
        if flowed != em.act(em.tau_matrix(s, sig), y):
            return CheckOutcome.failed("coordinate flow differs from exp(sT)", encode_vector(y.rep))
        if em.tau_flow(s, em.tau_flow(t, y)) != em.tau_flow(s + t, y):
            return CheckOutcome.failed("flow is not a one-parameter group", encode_vector(y.rep))
    return CheckOutcome.passed()


@register("model", "stereo_roundtrip")
def check_stereo_roundtrip(sig, trials, rng, cfg):
    origin = em.basis_ein_point(sig, 0)
    for _ in range(_trials("stereo_roundtrip", trials)):
        v = exact.random_vector(rng, sig.n)
        x = em.stereo_inverse(v, sig)
        if tuple(em.stereo_forward(x)) != tuple(v):
            return CheckOutcome.failed("chart roundtrip is not the identity", encode_vector(v))
        if not em.minkowski_contains(origin, x):
            return CheckOutcome.failed("chart image meets C([e_0])", encode_vector(v))
    return CheckOutcome.passed()


@register("model", "stereo_conformality")
def check_stereo_conformality(sig, trials, rng, cfg):
    for _ in range(_trials("stereo_conformality", trials)):
        v = exact.random_vector(rng, sig.n, 3, 2)
        ratio = em.conformal_ratio(v, sig)
        lam = 1 + sum(x * x for x in v)
        if ratio is None or ratio != lam * lam:
            return CheckOutcome.failed("pullback is not a multiple of Q^{p,q}", encode_vector(v))
    return CheckOutcome.passed()


@register("model", "null_line_boundary")
def check_null_line_boundary(sig, trials, rng, cfg):
    require_null_translations(sig, "null lines")
    tangent = SplitForm.tangent(sig)
    for k in range(_trials("null_line_boundary", trials)):
        u = random_null_vector(tangent, rng)
        c = exact.random_vector(rng, sig.n)
        v = u if k % 3 else random_null_vector(tangent, rng)
        b = list(exact.random_vector(rng, sig.n))
        if k % 2:
            # move b inside u^perp relative to c
            shift = tangent.inner([bi - ci for bi, ci in zip(b, c)], u)
            pivot = next(i for i in range(sig.n) if u[tangent.partner(i)] != 0)
            b[pivot] -= shift / u[tangent.partner(pivot)]
        predicted = em.same_boundary_predicate(c, u, b, v, sig)
        actual = em.null_line_boundary(c, u, sig) == em.null_line_boundary(b, v, sig)
        if predicted != actual:
            return CheckOutcome.failed("boundary equivalence predicate disagrees", encode_vector(c))
        if not em.null_line_image_is_geodesic(c, u, sig):
            return CheckOutcome.failed("null line image leaves its null geodesic", encode_vector(c))
    return CheckOutcome.passed()


@register("model", "flow_limit")
def check_flow_limit(sig, trials, rng, cfg):
    for _ in range(_trials("flow_limit_float", trials)):
        y = em.random_point_off_fixed_set(sig, rng)
        limit = em.tau_limit(y)
        if limit != em.attractor_vertex(y):
            return CheckOutcome.failed("tau_limit differs from the attractor vertex", encode_vector(y.rep))
        s = exact.random_fraction(rng)
        if em.attractor_vertex(em.tau_flow(s, y)) != limit:
            return CheckOutcome.failed("attractor vertex changes along the orbit", encode_vector(y.rep))
        floats = [float(v) for v in y.rep]
        approx = em.tau_flow_float(1e8, floats, sig.n)
        target = em.normalize_projective(np.array([float(v) for v in limit.rep]))
        if _projective_distance(approx, target) > 1e-6:
            return CheckOutcome.failed("float flow at s = 1e8 misses the limit", encode_vector(y.rep))
    return CheckOutcome.passed()


@register("model", "fixed_set")
def check_fixed_set(sig, trials, rng, cfg):
    for _ in range(max(1, trials // 10)):
        y = em.random_fixed_point(sig, rng)
        if em.tau_flow(exact.random_fraction(rng), y) != y:
            return CheckOutcome.failed("point of F moved by the flow", encode_vector(y.rep))
        if em.fixed_set_dimension_at(y) != sig.n - 2:
            return CheckOutcome.failed("F does not have codimension 2", encode_vector(y.rep))
    return CheckOutcome.passed()


@register("model", "lightcones_and_geodesics")
def check_lightcones_and_geodesics(sig, trials, rng, cfg):
    e0, e1 = em.basis_ein_point(sig, 0), em.lambda_at_infinity(sig)
    last = em.basis_ein_point(sig, sig.n + 1)
    cone = em.LightconeSpec(e0)
    if not cone.contains(e0) or cone.contains(last) or not cone.contains(e1):
        return CheckOutcome.failed("lightcone of [e_0] misclassifies basis points")
    if not em.geodesic_through(e0, e1).same_as(em.lambda_geodesic(sig)):
        return CheckOutcome.failed("geodesic through [e_0], [e_1] is not Lambda")
    for _ in range(max(1, trials // 10)):
        y = em.random_point_off_fixed_set(sig, rng)
        vertex = em.attractor_vertex(y)
        geodesic = em.geodesic_through(vertex, y)
        s = exact.random_fraction(rng, nonzero=True)
        if not geodesic.contains(em.tau_flow(s, y)):
            return CheckOutcome.failed("flow leaves a null geodesic from Lambda", encode_vector(y.rep))
    return CheckOutcome.passed()


# holonomy

@register("holonomy", "base_factorization")
def check_base_factorization(sig, trials, rng, cfg):
    for _ in range(_trials("base_factorization", trials)):
        s, t = _random_st(rng)
        if not ch.verify_base_factorization(s, t, sig):
            return CheckOutcome.failed("tau^s e^{tU_n} != e^{c(t)U_n} h(s,t)", to_jsonable([s, t]))
    return CheckOutcome.passed()


@register("holonomy", "reparametrization_group")
def check_reparametrization_group(sig, trials, rng, cfg):
    for _ in range(trials):
        s1, s2 = exact.random_fraction(rng), exact.random_fraction(rng)
        t = exact.random_fraction(rng)
        c1, c2 = ch.Reparametrization(s1), ch.Reparametrization(s2)
        try:
            composed = c1(c2(t))
        except EinError:
            continue
        if c1.compose(c2)(t) != composed:
            return CheckOutcome.failed("c_s o c_s' != c_{s+s'}", to_jsonable([s1, s2, t]))
    return CheckOutcome.passed()


@register("holonomy", "conjugated_factorization")
def check_conjugated_factorization(sig, trials, rng, cfg):
    require_null_translations(sig, "the subgroup S")
    for _ in range(_trials("conjugated_factorization", trials)):
        U = _random_admissible_U(sig, rng)
        g = ch.construct_S_element(U)
        s, t = _random_st(rng)
        if not g.commutes_with(ch.tau(s, sig)):
            return CheckOutcome.failed("S element does not commute with tau^s", encode_element(g))
        if not ch.is_unipotent(g):
            return CheckOutcome.failed("S element is not unipotent", encode_element(g))
        factorization = ch.conjugated_factorization(g, s)
        if not factorization.verify(t):
            return CheckOutcome.failed("conjugated factorization fails", encode_element(g))
    return CheckOutcome.passed()


@register("holonomy", "quotient_diagonal")
def check_quotient_diagonal(sig, trials, rng, cfg):
    for _ in range(max(1, trials // 25)):
        s, t = _random_st(rng)
        expected = ch.FramingScaling(sig.n).diagonal(s, t)
        diagonal = [[expected[i] if i == j else Fraction(0) for j in range(sig.n)] for i in range(sig.n)]
        h = ch.holonomy_matrix(s, t, sig)
        if ch.adjoint_on_quotient(h, ch.u_minus_frame(sig)) != diagonal:
            return CheckOutcome.failed("Ad h(s,t) on g/p is not the framing diagonal", to_jsonable([s, t]))
        if sig.p >= 1:
            g = ch.construct_S_element(_random_admissible_U(sig, rng))
            conjugated = g * h * g.inverse()
            if ch.adjoint_on_quotient(conjugated, ch.u_minus_frame(sig, g)) != diagonal:
                return CheckOutcome.failed("conjugated frame changes the diagonal", encode_element(g))
    return CheckOutcome.passed()


@register("holonomy", "lambda_factorization")
def check_lambda_factorization(sig, trials, rng, cfg):
    for _ in range(max(1, trials // 10)):
        s, t = _random_st(rng)
        factorization = ch.lambda_factorization(s, sig)
        if not factorization.verify(t) or not factorization.path_in_parabolic(t):
            return CheckOutcome.failed("e^{sL} e^{tU_1} factorization fails", to_jsonable([s, t]))
    return CheckOutcome.passed()


@register("holonomy", "completeness_factorization")
def check_completeness_factorization(sig, trials, rng, cfg):
    U_1 = basis_U(sig, 1)
    L = U_1 + element_T(sig)
    samples = [exact.random_fraction(rng, nonzero=True) for _ in range(20)]
    report = ch.completeness_factorization_check(L, U_1, lambda t: t, samples=samples)
    if not report.passed:
        return CheckOutcome.failed(f"{report.reason} at t = {report.counterexample}")
    if em.act(exp_nilpotent(L * samples[0]), em.basis_ein_point(sig, 0)) != em.lambda_point(samples[0], sig):
        return CheckOutcome.failed("e^{tL} [e_0] is not Lambda(t)")
    control = ch.completeness_factorization_check(L, U_1, lambda t: 2 * t, samples=samples)
    if control.passed:
        return CheckOutcome.failed("wrong reparametrization accepted")
    return CheckOutcome.passed()


@register("holonomy", "g_theta")
def check_g_theta(sig, trials, rng, cfg):
    for _ in range(max(1, trials // 20)):
        g = ch.g_theta(exact.random_fraction(rng), sig)
        s, t = _random_st(rng)
        if not g.commutes_with(ch.holonomy_matrix(s, t, sig)):
            return CheckOutcome.failed("g_theta does not commute with h(s,t)", encode_element(g))
    return CheckOutcome.passed()


@register("holonomy", "triangle_development")
def check_triangle_development(sig, trials, rng, cfg):
    middle = [basis_U(sig, i) for i in range(2, sig.n)]
    for _ in range(_trials("triangle_development", trials)):
        X = AlgElement.zero(sig)
        for U in middle:
            X = X + U * exact.random_fraction(rng)
        a = exact.random_fraction(rng)
        c = exact.random_fraction(rng, nonzero=True)
        r = exact.random_fraction(rng, nonzero=True)
        r = abs(r)
        curve = ch.triangle_curve(a, X, c, r)
        if ch.develop(curve) != ch.triangle_target(a, X, c, r):
            return CheckOutcome.failed("triangle does not develop to e^{rY}", encode_element(X))
    return CheckOutcome.passed()


@register("holonomy", "rectangle_development")
def check_rectangle_development(sig, trials, rng, cfg):
    uminus = uminus_basis(sig)
    for _ in range(max(1, trials // 20)):
        X = nil._random_combination(rng, uminus)
        Y = nil._random_combination(rng, uminus)
        a = abs(exact.random_fraction(rng, nonzero=True))
        b = abs(exact.random_fraction(rng, nonzero=True))
        if ch.develop(ch.rectangle_curve(X, Y, a, b)) != GroupElement.identity(sig):
            return CheckOutcome.failed("closed abelian rectangle develops away from e", encode_element(X))
    return CheckOutcome.passed()


@register("holonomy", "sampled_development")
def check_sampled_development(sig, trials, rng, cfg):
    # generic velocity: u- + u+ is usually not nilpotent, so only group membership is exact
    X = nil._random_combination(rng, uminus_basis(sig), bound=1) + \
        nil._random_combination(rng, uplus_basis(sig), bound=1)
    constant = exact.to_float_array(X.mat)
    D = ch.develop_sampled(lambda t: constant, 0.0, 1.0)
    if not ch.is_group_float(D, sig, rtol=1e-8):
        return CheckOutcome.failed("float development leaves the group", encode_element(X))
    # piecewise velocity with an exact endpoint
    Y = nil._random_combination(rng, uminus_basis(sig), bound=1)
    Z = nil._random_combination(rng, uplus_basis(sig), bound=1)
    curve = ch.PiecewiseCurve.from_directions([(Y, 0, 1), (Z, 1, 2)])
    sampled = ch.develop_sampled(ch.curve_velocity_float(curve), 0.0, 2.0)
    expected = exact.to_float_array(ch.develop(curve).mat)
    if float(np.max(np.abs(sampled - expected))) > 1e-6 * max(1.0, float(np.max(np.abs(expected)))):
        return CheckOutcome.failed("sampled development misses the exact endpoint", encode_element(Y))
    return CheckOutcome.passed()


# centralizer

@register("centralizer", "ctau_basis")
def check_ctau_basis(sig, trials, rng, cfg):
    report = cs.ctau_basis(sig.p, sig.q)
    if not report.passed:
        return CheckOutcome.failed(
            f"kernel {report.kernel.dimension}, family {report.family.dimension}, "
            f"expected {report.expected_dimension}")
    return CheckOutcome.passed(f"dimension {report.expected_dimension}")


@register("centralizer", "assemble_roundtrip")
def check_assemble_roundtrip(sig, trials, rng, cfg):
    require_null_translations(sig, "c(T) slots")
    for _ in range(max(1, trials // 10)):
        e = cs.random_ctau(sig, rng)
        if cs.disassemble(cs.assemble(e)) != e:
            return CheckOutcome.failed("disassemble does not invert assemble", to_jsonable([e.a, e.b, e.c, e.s]))
    return CheckOutcome.passed()


@register("centralizer", "q_bracket_laws")
def check_q_bracket_laws(sig, trials, rng, cfg):
    require_null_translations(sig, "q")
    for _ in range(_trials("q_bracket_laws", trials)):
        u1, u2 = cs.random_q(sig, rng), cs.random_q(sig, rng)
        cs.q_bracket(u1, u2)
        if cs.q_bracket(u1, u1) != cs.QElement(sig):
            return CheckOutcome.failed("[u, u] != 0 in q")
    return CheckOutcome.passed()


@register("centralizer", "heisenberg_structure")
def check_heisenberg_structure(sig, trials, rng, cfg):
    report = cs.heis_structure_report(sig.p, sig.q)
    if not report.passed:
        return CheckOutcome.failed("q is not (R + o) acting on a Heisenberg ideal", report.to_json())
    cs.heisenberg_triple(sig)
    return CheckOutcome.passed(f"ideal dimension {report.ideal_dimension}")


@register("centralizer", "b_vanishing")
def check_b_vanishing(sig, trials, rng, cfg):
    abelian = Subalgebra(sig, [element_T(sig)])
    try:
        cs.centralizer_b_vanishing(abelian)
    except PreconditionError:
        pass
    else:
        return CheckOutcome.failed("abelian span{T} passed the degree precondition")
    try:
        witness = nil.witness_search(sig.p, sig.q)
    except WitnessSearchError as err:
        return CheckOutcome.skipped("no degree 2p+1 witness inside q", err.trace)
    report = cs.centralizer_b_vanishing(witness)
    if not report.passed:
        return CheckOutcome.failed("centralizer element with b != 0",
                                   [encode_element(X) for X in report.offending])
    return CheckOutcome.passed(f"{report.centralizer_dimension} centralizer elements, "
                               f"{report.relations_checked} relation checks")


# Running

@dataclass
class CheckRecord:
    name: str
    suite: str
    signature: Signature
    status: str
    witness: Any = None
    detail: str = ""
    duration: Optional[float] = None

    def to_json(self, timings: bool = False) -> Dict:
        record = {
            "name": self.name,
            "suite": self.suite,
            "signature": self.signature.to_json(),
            "status": self.status,
            "witness": to_jsonable(self.witness),
            "detail": self.detail,
        }
        if timings and self.duration is not None:
            record["duration"] = round(self.duration, 6)
        return record


@dataclass
class Report:
    config: SuiteConfig
    records: List[CheckRecord] = field(default_factory=list)

    def sorted_records(self) -> List[CheckRecord]:
        return sorted(self.records, key=lambda r: (r.name, r.signature.p, r.signature.q))

    def counts(self) -> Dict[str, int]:
        counts = {PASS: 0, FAIL: 0, SKIP: 0}
        for r in self.records:
            counts[r.status] += 1
        return counts

    @property
    def ok(self) -> bool:
        return self.counts()[FAIL] == 0

    def to_json(self) -> Dict:
        return {
            "report_version": REPORT_VERSION,
            "seed": self.config.seed,
            "trials": self.config.trials,
            "signatures": [s.to_json() for s in self.config.signatures],
            "suites": list(self.config.suites),
            "summary": self.counts(),
            "checks": [r.to_json(self.config.timings) for r in self.sorted_records()],
        }


def run_check(suite: str, name: str, sig: Signature, cfg: SuiteConfig) -> CheckRecord:
    fn = REGISTRY[suite][name]
    rng = check_rng(cfg.seed, name, sig)
    start = time.perf_counter()
    try:
        outcome = fn(sig, cfg.trials, rng, cfg)
    except PreconditionError as err:
        outcome = CheckOutcome.skipped(str(err))
    except WitnessSearchError as err:
        outcome = CheckOutcome.skipped(str(err), err.trace)
    except EinError as err:
        outcome = CheckOutcome.failed(f"{type(err).__name__}: {err}")
    duration = time.perf_counter() - start
    logger.info("%s %s%s: %s (%.2fs)", suite, name, sig, outcome.status, duration)
    return CheckRecord(name, suite, sig, outcome.status, outcome.witness, outcome.detail, duration)


def _run_task(task: Tuple[str, str, Tuple[int, int], SuiteConfig]) -> CheckRecord:
    suite, name, (p, q), cfg = task
    return run_check(suite, name, Signature(p, q), cfg)


def run_suite(cfg: SuiteConfig) -> Report:
    cfg.validate()
    report = Report(cfg)
    tasks = []
    for suite, name in registered_checks():
        for sig in cfg.signatures:
            if cfg.selects(suite):
                tasks.append((suite, name, (sig.p, sig.q), cfg))
            else:
                report.records.append(CheckRecord(name, suite, sig, SKIP, None, "suite not selected"))
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            report.records.extend(pool.map(_run_task, tasks))
    else:
        report.records.extend(_run_task(task) for task in tasks)
    counts = report.counts()
    logger.info("verify: %d pass, %d fail, %d skip", counts[PASS], counts[FAIL], counts[SKIP])
    return report
