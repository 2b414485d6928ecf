# einstein_model.py
# Ein^{p,q} as the projectivized null cone of R^{p+1,q+1}: points, charts onto Minkowski components,
# lightcones, null geodesics, and the flow tau^s = exp(sT) with its fixed set F, the circle Lambda and limits

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

from . import exact
from .errors import (
    ChartDomainError, DimensionMismatch, FixedSetError, InternalAssertion,
    NoCommonGeodesicError, NotNullError, PreconditionError, ZeroVectorError,
)
from .lie_algebra import GroupElement, element_T, exp_nilpotent
from .quadratic_forms import (
    Cover, ProjectivePoint, Signature, SplitForm, Vector, basis_vector, projectivize, random_null_vector,
    require_null_translations,
)

logger = logging.getLogger(__name__)

# Points closer to F than this (relative) have no well-defined float limit
NEAR_FIXED_SET = 1e-9


@dataclass(frozen=True)
class EinPoint:
    point: ProjectivePoint
    signature: Signature

    def __post_init__(self):
        if self.point.dim != self.signature.ambient_dim:
            raise DimensionMismatch(
                f"point has {self.point.dim} coordinates, Ein{self.signature} needs {self.signature.ambient_dim}")
        if SplitForm.ambient(self.signature).eval(self.point.rep) != 0:
            raise NotNullError(f"{self.point} is not on the null cone")

    @classmethod
    def of(cls, coords: Sequence, signature: Signature, cover: Cover = Cover.PROJECTIVE) -> "EinPoint":
        return cls(projectivize([exact.fraction(c) for c in coords], cover), signature)

    @property
    def rep(self) -> Vector:
        return self.point.rep

    def __str__(self) -> str:
        return str(self.point)


def basis_ein_point(signature: Signature, i: int) -> EinPoint:
    return EinPoint(projectivize(basis_vector(signature.ambient_dim, i)), signature)


def random_ein_point(signature: Signature, rng: np.random.Generator) -> EinPoint:
    return EinPoint(projectivize(random_null_vector(SplitForm.ambient(signature), rng)), signature)


@dataclass(frozen=True)
class LightconeSpec:
    vertex: EinPoint

    def contains(self, y: EinPoint) -> bool:
        return lightcone_contains(self, y)


@dataclass(frozen=True)
class FlowState:
    s: Fraction

    def matrix(self, signature: Signature) -> GroupElement:
        return tau_matrix(self.s, signature)


class NullGeodesic:
    """Projectivization of a totally isotropic 2-plane span{v1, v2}."""

    def __init__(self, v1: Sequence, v2: Sequence, signature: Signature):
        form = SplitForm.ambient(signature)
        self.signature = signature
        self.v1 = tuple(exact.fraction(x) for x in v1)
        self.v2 = tuple(exact.fraction(x) for x in v2)
        if exact.rank([[exact.qq(x) for x in self.v1], [exact.qq(x) for x in self.v2]],
                      signature.ambient_dim) != 2:
            raise NoCommonGeodesicError("plane vectors are linearly dependent")
        if form.eval(self.v1) != 0 or form.eval(self.v2) != 0 or form.inner(self.v1, self.v2) != 0:
            raise NoCommonGeodesicError("plane is not totally isotropic")

    @property
    def plane(self) -> Tuple[Vector, Vector]:
        return self.v1, self.v2

    def point_at(self, t) -> EinPoint:
        t = exact.fraction(t)
        return EinPoint(projectivize([a + t * b for a, b in zip(self.v1, self.v2)]), self.signature)

    def point_at_infinity(self) -> EinPoint:
        return EinPoint(projectivize(self.v2), self.signature)

    def contains(self, y: EinPoint) -> bool:
        rows = [[exact.qq(x) for x in v] for v in (self.v1, self.v2, y.rep)]
        return exact.rank(rows, self.signature.ambient_dim) == 2

    def same_as(self, other: "NullGeodesic") -> bool:
        mine = exact.Span.of([[exact.qq(x) for x in v] for v in self.plane], self.signature.ambient_dim)
        theirs = exact.Span.of([[exact.qq(x) for x in v] for v in other.plane], self.signature.ambient_dim)
        return mine == theirs

    def __repr__(self) -> str:
        return f"NullGeodesic({self.v1}, {self.v2})"


# Group action

def act(g: GroupElement, x: EinPoint) -> EinPoint:
    image = g.apply(x.rep)
    if SplitForm.ambient(x.signature).eval(image) != 0:
        raise InternalAssertion("group element moved a point off the null cone")
    return EinPoint(projectivize(image, x.point.cover), x.signature)


# Stereographic projection and Minkowski charts

def stereo_inverse(v: Sequence, signature: Signature) -> EinPoint:
    """phi(v) = [-Q(v)/2 : v : 1]."""
    if len(v) != signature.n:
        raise DimensionMismatch(f"expected a vector of R^{signature} with {signature.n} entries")
    v = [exact.fraction(x) for x in v]
    half = SplitForm.tangent(signature).eval(v) / 2
    return EinPoint(projectivize([-half] + v + [Fraction(1)]), signature)


def stereo_forward(x: EinPoint) -> Vector:
    n = x.signature.n
    last = x.rep[n + 1]
    if last == 0:
        raise ChartDomainError(f"{x} lies on the lightcone of [e_0], outside the Minkowski chart")
    return tuple(c / last for c in x.rep[1:n + 1])


def minkowski_contains(vertex: EinPoint, y: EinPoint) -> bool:
    """y lies in the Minkowski component M(vertex), the complement of C(vertex)."""
    return not lightcone_contains(LightconeSpec(vertex), y)


def lightcone_contains(c: LightconeSpec, y: EinPoint) -> bool:
    form = SplitForm.ambient(y.signature)
    return form.inner(c.vertex.rep, y.rep) == 0


def null_line_boundary(c: Sequence, u: Sequence, signature: Signature) -> EinPoint:
    """Common limit of phi(c + tu) as t -> +-inf: [-<c,u> : u : 0]."""
    form = SplitForm.tangent(signature)
    c = [exact.fraction(x) for x in c]
    u = [exact.fraction(x) for x in u]
    if all(x == 0 for x in u):
        raise ZeroVectorError("null line direction must be nonzero")
    if form.eval(u) != 0:
        raise NotNullError("null line direction must be null")
    return EinPoint(projectivize([-form.inner(c, u)] + u + [Fraction(0)]), signature)


def same_boundary_predicate(c: Sequence, u: Sequence, b: Sequence, v: Sequence,
                            signature: Signature) -> bool:
    """Lines c + tu and b + tv share their boundary point iff [u] = [v] and <b - c, u> = 0."""
    form = SplitForm.tangent(signature)
    if projectivize(u) != projectivize(v):
        return False
    diff = [exact.fraction(x) - exact.fraction(y) for x, y in zip(b, c)]
    return form.inner(diff, u) == 0


def geodesic_through(x: EinPoint, y: EinPoint) -> NullGeodesic:
    """The null geodesic P(span{x, y}), parametrized as t -> [x + t y] with [y] at infinity."""
    if x.signature != y.signature:
        raise DimensionMismatch(f"signatures differ: {x.signature} vs {y.signature}")
    if x == y:
        raise NoCommonGeodesicError(f"{x} and {y} are the same point")
    if SplitForm.ambient(x.signature).inner(x.rep, y.rep) != 0:
        raise NoCommonGeodesicError(f"{x} and {y} are not orthogonal; no null geodesic joins them")
    return NullGeodesic(x.rep, y.rep, x.signature)


def null_line_image(c: Sequence, u: Sequence, signature: Signature) -> NullGeodesic:
    """The null geodesic through phi(c) and the boundary point of the line c + tu."""
    return geodesic_through(stereo_inverse(c, signature), null_line_boundary(c, u, signature))


def null_line_image_is_geodesic(c: Sequence, u: Sequence, signature: Signature, samples: int = 3) -> bool:
    """phi(c + tu) stays on the null geodesic spanned by phi(c) and its boundary point."""
    geodesic = null_line_image(c, u, signature)
    for k in range(1, samples + 1):
        t = Fraction(k, 2)
        point = stereo_inverse([exact.fraction(a) + t * exact.fraction(b) for a, b in zip(c, u)], signature)
        if not geodesic.contains(point):
            return False
    return True


@lru_cache(maxsize=None)
def _rescaled_lift_jacobian(signature: Signature):
    n = signature.n
    form = SplitForm.tangent(signature)
    symbols = sympy.symbols(f"v0:{n}")
    q_sym = sum(symbols[i] * symbols[form.partner(i)] for i in range(n))
    lam = 1 + sum(s ** 2 for s in symbols)
    lift = sympy.Matrix([lam * (-q_sym / 2)] + [lam * s for s in symbols] + [lam])
    return symbols, lift.jacobian(symbols)


def stereo_pullback_gram(v: Sequence, signature: Signature) -> List[List[Fraction]]:
    """Gram matrix of the pullback of the ambient form by lambda(v) * (-Q(v)/2, v, 1).

    lambda(v) = 1 + sum v_i^2 rescales the lift; the result equals lambda(v)^2 J_{p,q}.
    """
    n = signature.n
    if len(v) != n:
        raise DimensionMismatch(f"expected a vector of R^{signature} with {n} entries")
    symbols, jacobian = _rescaled_lift_jacobian(signature)
    point = {s: sympy.Rational(exact.fraction(x).numerator, exact.fraction(x).denominator)
             for s, x in zip(symbols, v)}
    D = jacobian.subs(point)
    J = SplitForm.ambient(signature).gram.to_Matrix()
    G = D.T * J * D
    return [[Fraction(int(G[i, j].p), int(G[i, j].q)) for j in range(n)] for i in range(n)]


def conformal_ratio(v: Sequence, signature: Signature) -> Optional[Fraction]:
    """The scalar r with pullback = r * J_{p,q}, or None when no such scalar exists."""
    G = stereo_pullback_gram(v, signature)
    form = SplitForm.tangent(signature)
    n = signature.n
    r = G[0][form.partner(0)]
    for i in range(n):
        for j in range(n):
            expected = r if j == form.partner(i) else Fraction(0)
            if G[i][j] != expected:
                return None
    return r


# The flow tau^s = exp(sT)

def tau_matrix(s, signature: Signature) -> GroupElement:
    return exp_nilpotent(element_T(signature) * exact.fraction(s))


def tau_flow(s, y: EinPoint) -> EinPoint:
    """[y_0 + s y_n : y_1 - s y_{n+1} : y_2 : ... : y_{n+1}]."""
    require_null_translations(y.signature, "the flow tau^s")
    s = exact.fraction(s)
    n = y.signature.n
    rep = list(y.rep)
    rep[0] = rep[0] + s * rep[n]
    rep[1] = rep[1] - s * rep[n + 1]
    return EinPoint(projectivize(rep, y.point.cover), y.signature)


def in_fixed_set(y: EinPoint) -> bool:
    """F = P(e_0^perp cap e_1^perp cap N): y_n = y_{n+1} = 0."""
    require_null_translations(y.signature, "the fixed set F")
    n = y.signature.n
    return y.rep[n] == 0 and y.rep[n + 1] == 0


def in_lambda(y: EinPoint) -> bool:
    require_null_translations(y.signature, "Lambda")
    return all(c == 0 for c in y.rep[2:])


def lambda_point(t, signature: Signature) -> EinPoint:
    """Lambda(t) = [e_0 + t e_1]."""
    require_null_translations(signature, "Lambda")
    rep = [Fraction(0)] * signature.ambient_dim
    rep[0] = Fraction(1)
    rep[1] = exact.fraction(t)
    return EinPoint(projectivize(rep), signature)


def lambda_at_infinity(signature: Signature) -> EinPoint:
    require_null_translations(signature, "Lambda")
    return basis_ein_point(signature, 1)


def lambda_geodesic(signature: Signature) -> NullGeodesic:
    require_null_translations(signature, "Lambda")
    N = signature.ambient_dim
    return NullGeodesic(basis_vector(N, 0), basis_vector(N, 1), signature)


def tau_limit(y: EinPoint) -> EinPoint:
    """Limit of tau^s y as s -> inf: [y_n : -y_{n+1} : 0 : ... : 0]."""
    if in_fixed_set(y):
        raise FixedSetError(f"{y} is fixed by the flow")
    n = y.signature.n
    rep = [Fraction(0)] * (n + 2)
    rep[0] = y.rep[n]
    rep[1] = -y.rep[n + 1]
    return EinPoint(projectivize(rep), y.signature)


def attractor_vertex(y: EinPoint) -> EinPoint:
    """The unique lambda in Lambda with y in C(lambda): solve a y_{n+1} + b y_n = 0."""
    if in_fixed_set(y):
        raise FixedSetError(f"{y} is fixed; every vertex of Lambda sees it")
    n = y.signature.n
    solutions = exact.nullspace([[exact.qq(y.rep[n + 1]), exact.qq(y.rep[n])]], 2)
    if len(solutions) != 1:
        raise InternalAssertion("vertex equation has a solution space of the wrong dimension")
    a, b = (exact.to_fraction(x) for x in solutions[0])
    rep = [Fraction(0)] * (n + 2)
    rep[0], rep[1] = a, b
    vertex = EinPoint(projectivize(rep), y.signature)
    if not lightcone_contains(LightconeSpec(vertex), y):
        raise InternalAssertion("attractor vertex does not see the point")
    return vertex


def fixed_set_tangent_rank(y: EinPoint) -> int:
    """Rank of the linearized constraints dy_n, dy_{n+1}, <y, dy> at a point of F minus Lambda."""
    if not in_fixed_set(y) or in_lambda(y):
        raise PreconditionError(f"{y} is not a point of F outside Lambda")
    sig = y.signature
    N = sig.ambient_dim
    form = SplitForm.ambient(sig)
    rows = [
        [exact.qq(x) for x in basis_vector(N, sig.n)],
        [exact.qq(x) for x in basis_vector(N, sig.n + 1)],
        [exact.qq(x) for x in form.lower(y.rep)],
    ]
    return exact.rank(rows, N)


def fixed_set_dimension_at(y: EinPoint) -> int:
    # tangent space of the cone slice, modulo the radial direction
    return y.signature.ambient_dim - fixed_set_tangent_rank(y) - 1


def random_fixed_point(signature: Signature, rng: np.random.Generator) -> EinPoint:
    """A random point of F outside Lambda; needs a null middle block, i.e. p >= 2."""
    if signature.p < 2:
        raise PreconditionError(f"F = Lambda for signature {signature}")
    inner_form = SplitForm.inner_block(signature)
    middle = random_null_vector(inner_form, rng)
    head = [exact.random_fraction(rng), exact.random_fraction(rng)]
    return EinPoint(projectivize(head + list(middle) + [Fraction(0), Fraction(0)]), signature)


def random_point_off_fixed_set(signature: Signature, rng: np.random.Generator) -> EinPoint:
    while True:
        y = random_ein_point(signature, rng)
        if not in_fixed_set(y):
            return y


# Float path

def normalize_projective(arr: np.ndarray) -> np.ndarray:
    """Divide by the entry of largest magnitude (first one on ties)."""
    return arr / arr[int(np.argmax(np.abs(arr)))]


def tau_flow_float(s: float, y: Sequence[float], n: int) -> np.ndarray:
    arr = np.asarray(y, dtype=float).copy()
    if arr.shape != (n + 2,):
        raise DimensionMismatch(f"expected {n + 2} homogeneous coordinates")
    arr[0] += s * arr[n]
    arr[1] -= s * arr[n + 1]
    return normalize_projective(arr)


def tau_limit_float(y: Sequence[float], n: int) -> np.ndarray:
    arr = np.asarray(y, dtype=float)
    scale = np.max(np.abs(arr))
    if scale == 0:
        raise ZeroVectorError("a projective point needs a nonzero representative")
    if max(abs(arr[n]), abs(arr[n + 1])) < NEAR_FIXED_SET * scale:
        raise FixedSetError("point is numerically on the fixed set")
    limit = np.zeros(n + 2)
    limit[0] = arr[n]
    limit[1] = -arr[n + 1]
    return normalize_projective(limit)
