# nilpotency.py
# Lower central series, order of nilpotence on a module, the degree bound 2p+1
# and the null-translation test

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from . import exact
from .errors import (
    DimensionMismatch, InternalAssertion, NotClosedError, NotContainedError,
    NotNilpotentError, PreconditionError, WitnessSearchError,
)
from .lie_algebra import (
    AlgElement, GroupElement, Subalgebra, adjoint, algebra_basis, closure, exp_nilpotent,
    grade, iplus, matrix_power_vanishes, parabolic, reductive_action,
    uminus_basis, uplus_basis,
)
from .quadratic_forms import Signature, SplitForm, basis_point, basis_vector, require_null_translations

logger = logging.getLogger(__name__)


@dataclass
class LowerCentralSeries:
    terms: List[List[AlgElement]]
    degree: Optional[int]       # None marks "not nilpotent"

    @property
    def nilpotent(self) -> bool:
        return self.degree is not None

    @property
    def dimensions(self) -> List[int]:
        return [len(t) for t in self.terms]


@dataclass
class OrderReport:
    module_dim: int
    order: Optional[int]        # None marks "not nilpotent"
    product_subspaces: List[exact.Span] = field(default_factory=list)

    @property
    def nilpotent(self) -> bool:
        return self.order is not None


# Modules

@dataclass
class ModuleSpec:
    """A finite-dimensional module: carrier QQ^dim, an action, an invariant subspace and a quotient."""
    name: str
    dim: int
    action: Callable[[AlgElement], DomainMatrix]
    space: Optional[exact.Span] = None
    modulo: Optional[exact.Span] = None

    def __post_init__(self):
        if self.space is None:
            self.space = exact.Span.full(self.dim)
        if self.modulo is None:
            self.modulo = exact.Span.zero(self.dim)
        if self.space.dim != self.dim or self.modulo.dim != self.dim:
            raise DimensionMismatch(f"module {self.name}: subspaces must live in dimension {self.dim}")

    @property
    def module_dim(self) -> int:
        return (self.space + self.modulo).rank - self.modulo.rank

    @classmethod
    def ambient(cls, signature: Signature) -> "ModuleSpec":
        return cls(f"R^{{{signature.p + 1},{signature.q + 1}}}", signature.ambient_dim, lambda X: X.mat)

    @classmethod
    def translations(cls, signature: Signature) -> "ModuleSpec":
        """R^{p,q}, acted on by the reductive block through i+."""
        return cls(f"R^{{{signature.p},{signature.q}}}", signature.n, reductive_action)

    @classmethod
    def subspace(cls, signature: Signature, vectors: Sequence[Sequence]) -> "ModuleSpec":
        span = exact.Span.of([[exact.qq(v) for v in vec] for vec in vectors], signature.ambient_dim)
        return cls("subspace", signature.ambient_dim, lambda X: X.mat, space=span)

    @classmethod
    def quotient(cls, signature: Signature, vectors: Sequence[Sequence]) -> "ModuleSpec":
        span = exact.Span.of([[exact.qq(v) for v in vec] for vec in vectors], signature.ambient_dim)
        return cls("quotient", signature.ambient_dim, lambda X: X.mat, modulo=span)

    @classmethod
    def adjoint(cls, h: Subalgebra) -> "ModuleSpec":
        """h acting on itself by ad, in basis coordinates."""
        k = h.dimension

        def ad(X: AlgElement) -> DomainMatrix:
            columns = []
            for B in h.basis:
                coords = h.coordinates(X.bracket(B))
                if coords is None:
                    raise NotClosedError("ad X leaves the subalgebra")
                columns.append(coords)
            return DomainMatrix([[columns[j][i] for j in range(k)] for i in range(k)], (k, k), exact.QQ)

        return cls("adjoint", k, ad)


def _elements(l) -> List[AlgElement]:
    return list(l.basis) if isinstance(l, Subalgebra) else list(l)


def lower_central_series(h: Subalgebra) -> LowerCentralSeries:
    if not (h.closed or h.is_closed()):
        raise NotClosedError("lower central series needs a bracket-closed subalgebra")
    size = h.signature.ambient_dim ** 2
    terms = [list(h.basis)]
    current = list(h.basis)
    while current:
        brackets = [X.bracket(Y) for X in h.basis for Y in current]
        nxt_span = exact.Span.of([B.flat() for B in brackets], size)
        if nxt_span.rank == len(current):
            logger.debug("series stabilizes at dimension %d: not nilpotent", len(current))
            return LowerCentralSeries(terms, None)
        current = [AlgElement(exact.unflatten(row, h.signature.ambient_dim), h.signature, check=False)
                   for row in nxt_span.rows]
        terms.append(current)
    return LowerCentralSeries(terms, len(terms) - 1)


def order_of_nilpotents(l, V: ModuleSpec) -> OrderReport:
    """Smallest k with l^k(V) = 0, computed by iterated images."""
    operators = [V.action(X) for X in _elements(l)]
    for op in operators:
        if op.shape != (V.dim, V.dim):
            raise DimensionMismatch(f"operator of shape {op.shape} on a module of dimension {V.dim}")
    current = V.space + V.modulo
    subspaces = [current]
    k = 0
    while True:
        if V.modulo.contains_span(current):
            return OrderReport(V.module_dim, k, subspaces)
        images = [exact.mat_vec(op, row) for op in operators for row in current.rows]
        nxt = V.modulo.extend(images)
        k += 1
        if nxt == current:
            return OrderReport(V.module_dim, None, subspaces)
        subspaces.append(nxt)
        current = nxt


def nilpotence_degree(h: Subalgebra) -> int:
    series = lower_central_series(h)
    if not series.nilpotent:
        raise NotNilpotentError("subalgebra is not nilpotent")
    ad_order = order_of_nilpotents(h, ModuleSpec.adjoint(h)).order
    if ad_order != series.degree:
        raise InternalAssertion(f"d(h) = {series.degree} but o(ad h) = {ad_order}")
    return series.degree


def is_null_translation(X: AlgElement) -> bool:
    """X != 0, X^2 = 0 and rank X = 2."""
    if X.is_zero():
        return False
    if not exact.is_zero(X.mat * X.mat):
        return False
    return exact.rank(X.mat.to_list(), X.signature.ambient_dim) == 2


@dataclass
class DegreeBoundReport:
    degree: Optional[int]
    bound: int
    passed: bool
    null_translation_checks: List[bool] = field(default_factory=list)


def verify_degree_bound(h: Subalgebra) -> DegreeBoundReport:
    p = h.signature.p
    bound = 2 * p + 1
    series = lower_central_series(h)
    if not series.nilpotent:
        return DegreeBoundReport(None, bound, False)
    d = series.degree
    checks: List[bool] = []
    if p >= 1 and d >= 2 * p and d >= 1:
        last = series.terms[d - 1]
        checks = [is_null_translation(X) for X in last]
        if len(last) > 1:
            total = last[0]
            for X in last[1:]:
                total = total + X
            checks.append(is_null_translation(total))
    passed = d <= bound and all(checks)
    return DegreeBoundReport(d, bound, passed, checks)


# Conjugation oracle for null translations

@dataclass
class ConjugacyWitness:
    w: Tuple[Fraction, ...]
    x: Tuple[Fraction, ...]
    form_value: Fraction

    @property
    def null(self) -> bool:
        return self.form_value == 0


def translation_conjugacy_witness(X: AlgElement, grid: int = 2) -> Optional[ConjugacyWitness]:
    """Search w in Im X with X(w^perp) in Rw, then write X v = <w,v> x - <x,v> w.

    Such an X is conjugate to the translation i+(x'), Q(x') = Q(x); a null x certifies a null translation.
    """
    sig = X.signature
    form = SplitForm.ambient(sig)
    N = sig.ambient_dim
    image = exact.Span.of(X.mat.transpose().to_list(), N)
    if image.rank == 0:
        return None
    ranges = range(-grid, grid + 1)
    candidates = [[]]
    for _ in image.rows:
        candidates = [c + [a] for c in candidates for a in ranges]
    for coeffs in candidates:
        if all(a == 0 for a in coeffs):
            continue
        w = [exact.ZERO] * N
        for a, row in zip(coeffs, image.rows):
            w = [wi + exact.QQ(a) * ri for wi, ri in zip(w, row)]
        w_frac = tuple(exact.to_fraction(v) for v in w)
        if any(v != 0 for v in X.apply(w_frac)):
            continue
        if not _maps_perp_into_line(X, w_frac, form):
            continue
        # w' null with <w, w'> = 1
        u_index = next(i for i in range(N) if w_frac[form.partner(i)] != 0)
        u = list(basis_vector(N, u_index))
        scale = form.inner(w_frac, u)
        u = [v / scale for v in u]
        half = form.eval(u) / 2
        w_dual = tuple(ui - half * wi for ui, wi in zip(u, w_frac))
        x = X.apply(w_dual)
        for k in range(N):
            v = basis_vector(N, k)
            expected = tuple(form.inner(w_frac, v) * xi - form.inner(x, v) * wi for xi, wi in zip(x, w_frac))
            if X.apply(v) != expected:
                break
        else:
            return ConjugacyWitness(w_frac, x, form.eval(x))
    return None


def _maps_perp_into_line(X: AlgElement, w: Tuple[Fraction, ...], form: SplitForm) -> bool:
    lowered = [exact.qq(v) for v in form.lower(w)]
    perp = exact.nullspace([lowered], len(w))
    line = exact.Span.of([[exact.qq(v) for v in w]], len(w))
    return all(line.contains(exact.mat_vec(X.mat, v)) for v in perp)


# Relation u_k in ubar_k + ubar^k(R^{p,q})

@dataclass
class RelationReport:
    degree: int
    containments: List[bool]

    @property
    def passed(self) -> bool:
        return all(self.containments)


def _require_in_parabolic(u: Subalgebra):
    sig = u.signature
    p_alg = parabolic(basis_point(sig, 0), sig)
    if not p_alg.contains_all(u):
        raise NotContainedError("subalgebra is not contained in the parabolic p")


def reductive_projection(u: Subalgebra) -> Subalgebra:
    parts = [grade(X).zero for X in u.basis]
    return closure(u.signature, parts)


def relation_containment(u: Subalgebra) -> RelationReport:
    _require_in_parabolic(u)
    series = lower_central_series(u)
    if not series.nilpotent:
        raise NotNilpotentError("relation needs a nilpotent subalgebra")
    sig = u.signature
    ubar = reductive_projection(u)
    ubar_series = lower_central_series(ubar)
    orders = order_of_nilpotents(ubar, ModuleSpec.translations(sig))
    size = sig.ambient_dim ** 2
    results = []
    for k in range(series.degree + 1):
        ubar_k = ubar_series.terms[k] if k < len(ubar_series.terms) else []
        trans_k = orders.product_subspaces[k].rows if k < len(orders.product_subspaces) else []
        translations = [iplus([exact.to_fraction(x) for x in row], sig) for row in trans_k]
        rhs = exact.Span.of([X.flat() for X in list(ubar_k) + translations], size)
        results.append(all(rhs.contains(X.flat()) for X in series.terms[k]))
    return RelationReport(series.degree, results)


@dataclass
class BracketsReport:
    k: int
    checked: int
    passed: bool


def ad_brackets_property(l: Subalgebra, V: ModuleSpec, k: int) -> BracketsReport:
    """Every Y in l_{k-1} maps V into l^k(V)."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    series = lower_central_series(l)
    order = order_of_nilpotents(l, V)
    terms = series.terms
    Ys = terms[k - 1] if k - 1 < len(terms) else []
    if k < len(order.product_subspaces):
        target = order.product_subspaces[k]
    else:
        target = V.modulo
    checked = 0
    ok = True
    for Y in Ys:
        op = V.action(Y)
        for v in V.space.rows:
            checked += 1
            if not target.contains(exact.mat_vec(op, v)):
                ok = False
    return BracketsReport(k, checked, ok)


@dataclass
class RepOrderReport:
    order: int
    bound: int
    passed: bool


def rep_order_bound(ubar: Subalgebra) -> RepOrderReport:
    """Order of a subalgebra of nilpotents of co(p,q) on R^{p,q}, against 2p+1."""
    sig = ubar.signature
    for Y in ubar.basis:
        if not matrix_power_vanishes(reductive_action(Y), sig.n):
            raise NotNilpotentError("element does not act nilpotently on R^{p,q}")
    report = order_of_nilpotents(ubar, ModuleSpec.translations(sig))
    if report.order is None:
        raise InternalAssertion("nilpotent operators produced a non-nilpotent order")
    bound = 2 * sig.p + 1
    return RepOrderReport(report.order, bound, report.order <= bound)


# Witnesses and random subalgebras

def maximal_unipotent(signature: Signature) -> Subalgebra:
    """o(p+1,q+1) intersected with the strictly upper triangular matrices."""
    picked = []
    for B in algebra_basis(signature):
        rows = B.mat.to_list()
        if all(x == 0 for i, row in enumerate(rows) for j, x in enumerate(row) if j <= i):
            picked.append(B)
    sub = Subalgebra(signature, picked)
    sub.closed = True
    return sub


def witness_search(p: int, q: int) -> Subalgebra:
    """A nilpotent subalgebra of degree exactly 2p+1, certified by its lower central series.

    The maximal unipotent subalgebra is the candidate. Its subalgebras and conjugates never
    exceed its degree, so when it falls short the search stops with a trace instead of sampling.
    """
    sig = Signature(p, q)
    require_null_translations(sig, "witness_search")
    target = 2 * p + 1
    unipotent = maximal_unipotent(sig)
    series = lower_central_series(unipotent)
    trace: List[Dict] = [
        {"stage": "maximal_unipotent", "series_dims": series.dimensions, "degree": series.degree},
    ]
    if series.degree == target:
        logger.info("witness for %s: maximal unipotent subalgebra of dimension %d", sig, unipotent.dimension)
        return unipotent
    trace.append({
        "stage": "stopped",
        "reason": f"subalgebras of the maximal unipotent subalgebra have degree at most {series.degree}",
    })
    raise WitnessSearchError(f"no subalgebra of degree {target} found for signature {sig}", trace)


def _random_combination(rng: np.random.Generator, basis: Sequence[AlgElement], bound: int = 2) -> AlgElement:
    while True:
        total = AlgElement.zero(basis[0].signature)
        for B in basis:
            if rng.random() < 0.6:
                total = total + B * int(rng.integers(-bound, bound + 1))
        if not total.is_zero():
            return total


def random_group_element(signature: Signature, rng: np.random.Generator) -> GroupElement:
    """Product of exponentials of random translations in u+ and u-."""
    plus = _random_combination(rng, uplus_basis(signature), bound=1)
    minus = _random_combination(rng, uminus_basis(signature), bound=1)
    return exp_nilpotent(plus) * exp_nilpotent(minus)


def random_nilpotent_subalgebra(signature: Signature, rng: np.random.Generator,
                                conjugate: bool = True, max_generators: int = 3) -> Subalgebra:
    """Close 1 to max_generators random elements of the maximal unipotent, then conjugate."""
    unipotent = maximal_unipotent(signature).basis
    count = int(rng.integers(1, max_generators + 1))
    generators = [_random_combination(rng, unipotent) for _ in range(count)]
    h = closure(signature, generators)
    if not conjugate:
        return h
    g = random_group_element(signature, rng)
    conjugated = Subalgebra(signature, [adjoint(g, X) for X in h.basis])
    conjugated.closed = True
    return conjugated
