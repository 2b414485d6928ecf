# cartan_holonomy.py
# Holonomy factorizations g_0 e^{tX} = e^{c(t)X} g(t) on the flat model, framing scalings,
# and developments of piecewise-geodesic curves in the group

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import exact
from .einstein_model import EinPoint, act, basis_ein_point
from .errors import (
    DimensionMismatch, InternalAssertion, NonContiguousCurveError, NotCommutingError,
    NotContainedError, NotInGroupError, NotInSError, NotTransverseError, PoleError, PreconditionError,
)
from .lie_algebra import (
    AlgElement, GroupElement, adjoint, algebra_coordinates, basis_U, element_T, exp_nilpotent,
    iminus, iminus_inverse, parabolic, rotation_sl2, sl2_algebra_embed, sl2_embed,
)
from .quadratic_forms import Signature, SplitForm, basis_point, require_null_translations

logger = logging.getLogger(__name__)


class Reparametrization:
    """c_s(t) = t / (1 + s t), with its pole at t = -1/s."""

    def __init__(self, s):
        self.s = exact.fraction(s)

    @property
    def pole(self) -> Optional[Fraction]:
        return None if self.s == 0 else -1 / self.s

    def __call__(self, t) -> Fraction:
        t = exact.fraction(t)
        denominator = 1 + self.s * t
        if denominator == 0:
            raise PoleError(f"c(t) has a pole at t = {t} for s = {self.s}")
        return t / denominator

    def compose(self, other: "Reparametrization") -> "Reparametrization":
        return Reparametrization(self.s + other.s)

    def inverse(self) -> "Reparametrization":
        return Reparametrization(-self.s)

    def __eq__(self, other) -> bool:
        return isinstance(other, Reparametrization) and self.s == other.s

    def __hash__(self):
        return hash(("mobius", self.s))

    def __repr__(self) -> str:
        return f"Reparametrization(s={self.s})"

    def to_json(self):
        return {"kind": "mobius", "s": self.s}


def _scale_factor(s, t) -> Fraction:
    lam = 1 + exact.fraction(s) * exact.fraction(t)
    if lam == 0:
        raise PoleError(f"1 + st = 0 at s = {s}, t = {t}")
    return lam


def holonomy_matrix(s, t, signature: Signature) -> GroupElement:
    """h(s,t) = diag(1+st, 1+st, 1, ..., 1, 1/(1+st), 1/(1+st)) + sT."""
    require_null_translations(signature, "h(s,t)")
    lam = _scale_factor(s, t)
    n = signature.n
    N = n + 2
    rows = [[Fraction(0)] * N for _ in range(N)]
    for i in range(N):
        if i < 2:
            rows[i][i] = lam
        elif i >= n:
            rows[i][i] = 1 / lam
        else:
            rows[i][i] = Fraction(1)
    s = exact.fraction(s)
    rows[0][n] += s
    rows[1][n + 1] -= s
    try:
        return GroupElement(rows, signature)
    except NotInGroupError as err:
        raise InternalAssertion(f"h({s},{t}) left the group: {err}")


def tau(s, signature: Signature) -> GroupElement:
    return exp_nilpotent(element_T(signature) * exact.fraction(s))


def verify_base_factorization(s, t, signature: Signature) -> bool:
    """tau^s e^{tU_n} = e^{c(t)U_n} h(s,t)."""
    c = Reparametrization(s)(t)
    U_n = basis_U(signature, signature.n)
    lhs = tau(s, signature) * exp_nilpotent(U_n * exact.fraction(t))
    rhs = exp_nilpotent(U_n * c) * holonomy_matrix(s, t, signature)
    return lhs == rhs


@dataclass
class HolonomyFactorization:
    """left * e^{tX} = e^{c(t)X} * path(t) for every t off the pole."""
    left: GroupElement
    generator: AlgElement
    reparam: Reparametrization
    path: Callable[[Fraction], GroupElement]

    @property
    def signature(self) -> Signature:
        return self.generator.signature

    def lhs(self, t) -> GroupElement:
        return self.left * exp_nilpotent(self.generator * exact.fraction(t))

    def rhs(self, t) -> GroupElement:
        return exp_nilpotent(self.generator * self.reparam(t)) * self.path(exact.fraction(t))

    def verify(self, t) -> bool:
        return self.lhs(t) == self.rhs(t)

    def path_in_parabolic(self, t) -> bool:
        return fixes_base_point(self.path(exact.fraction(t)))


def fixes_base_point(g: GroupElement) -> bool:
    """g lies in P, the stabilizer of [e_0]."""
    column = [row[0] for row in g.entries()]
    return column[0] != 0 and all(v == 0 for v in column[1:])


def base_factorization(s, signature: Signature) -> HolonomyFactorization:
    return HolonomyFactorization(
        left=tau(s, signature),
        generator=basis_U(signature, signature.n),
        reparam=Reparametrization(s),
        path=lambda t: holonomy_matrix(s, t, signature),
    )


def conjugated_factorization(g: GroupElement, s, t=None) -> HolonomyFactorization:
    """tau^s e^{tU} = e^{c(t)U} g h(s,t) g^{-1} with U = (Ad g) U_n, for g commuting with tau^s.

    When t is given the identity is certified at t before returning.
    """
    sig = g.signature
    tau_s = tau(s, sig)
    if not g.commutes_with(tau_s):
        raise NotCommutingError(f"conjugator does not commute with tau^{s}")
    g_inv = g.inverse()
    factorization = HolonomyFactorization(
        left=tau_s,
        generator=adjoint(g, basis_U(sig, sig.n)),
        reparam=Reparametrization(s),
        path=lambda t_: g * holonomy_matrix(s, t_, sig) * g_inv,
    )
    if t is not None and not factorization.verify(t):
        raise InternalAssertion(f"conjugated factorization fails at s = {s}, t = {t}")
    return factorization


# The subgroup S

def in_S_domain(U: AlgElement) -> bool:
    """U is a null element of u- with <U, U_1> > 0 under Q^-."""
    try:
        u = iminus_inverse(U)
    except NotContainedError:
        return False
    if all(x == 0 for x in u):
        return False
    form = SplitForm.tangent(U.signature)
    return form.eval(u) == 0 and u[-1] > 0


def construct_S_element(U: AlgElement) -> GroupElement:
    """g = diag(1, A, 1) with U_1 -> U_1, U_n -> U, V -> V - <V,U> U_1 on the middle slots.

    U is first rescaled so that <U, U_1> = 1.
    """
    sig = U.signature
    require_null_translations(sig, "the subgroup S")
    u = iminus_inverse(U)
    form = SplitForm.tangent(sig)
    if form.eval(u) != 0:
        raise NotInSError("U is not null under Q^-")
    if u[-1] <= 0:
        raise NotInSError(f"<U, U_1> = {u[-1]} is not positive")
    u = tuple(x / u[-1] for x in u)
    n = sig.n
    # columns of A on R^{p,q}: e_1 fixed, e_n -> u, middle V -> V - <V,u> e_1
    A = [[Fraction(0)] * n for _ in range(n)]
    A[0][0] = Fraction(1)
    for i in range(n):
        A[i][n - 1] = u[i]
    for j in range(1, n - 1):
        A[j][j] = Fraction(1)
        A[0][j] -= form.inner(tuple(Fraction(1) if k == j else Fraction(0) for k in range(n)), u)
    rows = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
    rows[0][0] = Fraction(1)
    rows[n + 1][n + 1] = Fraction(1)
    for i in range(n):
        for j in range(n):
            rows[1 + i][1 + j] = A[i][j]
    try:
        g = GroupElement(rows, sig)
    except NotInGroupError as err:
        raise InternalAssertion(f"S element left the group: {err}")
    if adjoint(g, basis_U(sig, n)) != iminus(u, sig):
        raise InternalAssertion("S element does not carry U_n to U")
    return g


def is_unipotent(g: GroupElement) -> bool:
    N = g.signature.ambient_dim
    delta = g.mat - exact.identity(N)
    power = delta
    for _ in range(N - 1):
        power = power * delta
    return exact.is_zero(power)


# Ad on g/p

def adjoint_on_quotient(h: GroupElement, frame: Sequence[AlgElement]) -> List[List[Fraction]]:
    """Matrix of Ad h on g/p, in a frame of n elements completing p."""
    sig = h.signature
    n = sig.n
    if len(frame) != n:
        raise DimensionMismatch(f"a frame of g/p needs {n} elements, got {len(frame)}")
    p_alg = parabolic(basis_point(sig, 0), sig)
    columns = [algebra_coordinates(F) for F in frame] + [algebra_coordinates(B) for B in p_alg.basis]
    dim = len(columns[0])
    if exact.rank(columns, dim) != len(columns) or len(columns) != dim:
        raise NotTransverseError("frame does not span a complement of p")
    A = exact.matrix([[columns[j][i] for j in range(len(columns))] for i in range(dim)])
    result = [[Fraction(0)] * n for _ in range(n)]
    for j, F in enumerate(frame):
        coords = exact.solve(A, algebra_coordinates(adjoint(h, F)))
        if coords is None:
            raise InternalAssertion("Ad h F has no coordinates in a basis of g")
        for i in range(n):
            result[i][j] = exact.to_fraction(coords[i])
    return result


def u_minus_frame(signature: Signature, g: Optional[GroupElement] = None) -> List[AlgElement]:
    frame = [basis_U(signature, i) for i in range(1, signature.n + 1)]
    if g is None:
        return frame
    return [adjoint(g, U) for U in frame]


@dataclass(frozen=True)
class FramingScaling:
    """sigma(1) = 0, sigma(i) = 1 for 2 <= i <= n-1, sigma(n) = 2."""
    n: int

    def sigma(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise DimensionMismatch(f"frame index {i} outside 1..{self.n}")
        if i == 1:
            return 0
        if i == self.n:
            return 2
        return 1

    def diagonal(self, s, t) -> List[Fraction]:
        return [framing_scale(i, s, t, self.n) for i in range(1, self.n + 1)]


def framing_scale(i: int, s, t, n: int) -> Fraction:
    lam = _scale_factor(s, t)
    return (1 / lam) ** FramingScaling(n).sigma(i)


# SL(2) elements centralizing T

def g_theta(m, signature: Signature) -> GroupElement:
    """Rational rotation in the SL(2) acting on span{e_0, e_1} and span{e_n, e_{n+1}}."""
    g = sl2_embed(rotation_sl2(m), signature)
    if not g.commutes_with(tau(1, signature)):
        raise InternalAssertion("g_theta does not centralize T")
    return g


def parabolic_generator_L(signature: Signature) -> AlgElement:
    return sl2_algebra_embed([[0, 1], [0, 0]], signature)


def lambda_factorization(s, signature: Signature) -> HolonomyFactorization:
    """e^{sL} e^{tU_1} = e^{c(t)U_1} G(t) with G(t) = [[1+st, s], [0, 1/(1+st)]] in the SL(2)."""
    s = exact.fraction(s)

    def path(t):
        lam = _scale_factor(s, t)
        return sl2_embed([[lam, s], [Fraction(0), 1 / lam]], signature)

    return HolonomyFactorization(
        left=exp_nilpotent(parabolic_generator_L(signature) * s),
        generator=basis_U(signature, 1),
        reparam=Reparametrization(s),
        path=path,
    )


@dataclass
class CompletenessReport:
    samples: List[Fraction]
    passed: bool
    counterexample: Optional[Fraction] = None
    reason: str = ""


def completeness_factorization_check(X: AlgElement, Y: AlgElement, c: Callable[[Fraction], Fraction],
                                     g: Optional[Callable[[Fraction], GroupElement]] = None,
                                     samples: Sequence = ()) -> CompletenessReport:
    """Certify e^{tX} = e^{c(t)Y} g(t) with g(t) in P at rational samples.

    Without g, g(t) is solved as e^{-c(t)Y} e^{tX} and only P-membership is checked.
    """
    if X.signature != Y.signature:
        raise DimensionMismatch(f"signatures differ: {X.signature} vs {Y.signature}")
    if c(Fraction(0)) != 0:
        raise PreconditionError("reparametrization must fix 0")
    points = [exact.fraction(t) for t in samples]
    for t in points:
        ct = exact.fraction(c(t))
        flow = exp_nilpotent(X * t)
        if g is None:
            g_t = exp_nilpotent(Y * (-ct)) * flow
        else:
            g_t = g(t)
            if exp_nilpotent(Y * ct) * g_t != flow:
                return CompletenessReport(points, False, t, "factorization fails")
        if not fixes_base_point(g_t):
            return CompletenessReport(points, False, t, "g(t) leaves P")
    return CompletenessReport(points, True)


# Developments

@dataclass(frozen=True)
class GeodesicSpec:
    """t -> base * exp(tX) in the group; projected through [e_0] it is a model geodesic."""
    base: GroupElement
    direction: AlgElement

    def __post_init__(self):
        if self.base.signature != self.direction.signature:
            raise DimensionMismatch(f"signatures differ: {self.base.signature} vs {self.direction.signature}")

    def at(self, t) -> GroupElement:
        return self.base * exp_nilpotent(self.direction * exact.fraction(t))

    def projected(self, t) -> EinPoint:
        return act(self.at(t), basis_ein_point(self.base.signature, 0))


@dataclass
class Segment:
    """gamma(t) = base * exp((t - start) X) for start <= t <= end."""
    base: GroupElement
    direction: AlgElement
    start: Fraction
    end: Fraction

    def __post_init__(self):
        self.start = exact.fraction(self.start)
        self.end = exact.fraction(self.end)
        if self.end < self.start:
            raise NonContiguousCurveError(f"segment runs backwards: [{self.start}, {self.end}]")

    @property
    def length(self) -> Fraction:
        return self.end - self.start

    @property
    def geodesic(self) -> GeodesicSpec:
        return GeodesicSpec(self.base, self.direction)

    def increment(self) -> GroupElement:
        return exp_nilpotent(self.direction * self.length)

    def endpoint(self) -> GroupElement:
        return self.geodesic.at(self.length)


@dataclass
class PiecewiseCurve:
    segments: List[Segment] = field(default_factory=list)

    def __post_init__(self):
        if not self.segments:
            raise PreconditionError("a curve needs at least one segment")
        for prev, nxt in zip(self.segments, self.segments[1:]):
            if prev.end != nxt.start:
                raise NonContiguousCurveError(f"gap between t = {prev.end} and t = {nxt.start}")
            if prev.endpoint() != nxt.base:
                raise NonContiguousCurveError(f"segment at t = {nxt.start} starts away from the previous end")

    @classmethod
    def from_directions(cls, pieces: Sequence[Tuple[AlgElement, object, object]],
                        start: Optional[GroupElement] = None) -> "PiecewiseCurve":
        """Chain (X, from, to) pieces, computing each base from the previous endpoint."""
        if not pieces:
            raise PreconditionError("a curve needs at least one segment")
        sig = pieces[0][0].signature
        base = start if start is not None else GroupElement.identity(sig)
        segments = []
        for X, t0, t1 in pieces:
            segment = Segment(base, X, t0, t1)
            segments.append(segment)
            base = segment.endpoint()
        return cls(segments)

    @property
    def signature(self) -> Signature:
        return self.segments[0].direction.signature

    @property
    def start(self) -> Fraction:
        return self.segments[0].start

    @property
    def end(self) -> Fraction:
        return self.segments[-1].end

    def then(self, other: "PiecewiseCurve") -> "PiecewiseCurve":
        """Concatenation, translating other so it starts where self ends."""
        shift = self.end - other.start
        pieces = [(seg.direction, seg.start + shift, seg.end + shift) for seg in other.segments]
        first = self.segments[-1].endpoint()
        return PiecewiseCurve(self.segments + PiecewiseCurve.from_directions(pieces, first).segments)


def develop(curve: PiecewiseCurve) -> GroupElement:
    """Endpoint of the development: the ordered product of the segment exponentials."""
    result = GroupElement.identity(curve.signature)
    for segment in curve.segments:
        result = result * segment.increment()
    return result


def triangle_curve(a, X: AlgElement, c, r) -> PiecewiseCurve:
    """Two null edges in u- whose development ends at e^{rY}, Y = aU_1 + X + cU_n.

    X must be a combination of the middle U_i; k = Q(X)/(2c) makes the second edge null.
    """
    sig = X.signature
    n = sig.n
    x = iminus_inverse(X)
    if x[0] != 0 or x[-1] != 0:
        raise PreconditionError("X must lie in the span of U_2, ..., U_{n-1}")
    a, c, r = exact.fraction(a), exact.fraction(c), exact.fraction(r)
    if c == 0:
        raise PreconditionError("the triangle needs c != 0")
    k = SplitForm.tangent(sig).eval(x) / (2 * c)
    U_1 = basis_U(sig, 1)
    U_n = basis_U(sig, n)
    first = U_1 * (2 * k + 2 * a)
    second = (U_n * c + X - U_1 * k) * 2
    return PiecewiseCurve.from_directions([(first, 0, r / 2), (second, r / 2, r)])


def triangle_target(a, X: AlgElement, c, r) -> GroupElement:
    sig = X.signature
    Y = basis_U(sig, 1) * exact.fraction(a) + X + basis_U(sig, sig.n) * exact.fraction(c)
    return exp_nilpotent(Y * exact.fraction(r))


def rectangle_curve(X: AlgElement, Y: AlgElement, a, b) -> PiecewiseCurve:
    """Closed loop with edges aX, bY, -aX, -bY for commuting X, Y."""
    if not X.bracket(Y).is_zero():
        raise PreconditionError("rectangle edges must commute")
    a, b = exact.fraction(a), exact.fraction(b)
    if a <= 0 or b <= 0:
        raise PreconditionError("rectangle sides must be positive")
    return PiecewiseCurve.from_directions([
        (X, 0, a),
        (Y, a, a + b),
        (-X, a + b, 2 * a + b),
        (-Y, 2 * a + b, 2 * a + 2 * b),
    ])


# Float path

def _rk4_step(D: np.ndarray, velocity: Callable[[float], np.ndarray], t: float, h: float) -> np.ndarray:
    k1 = D @ velocity(t)
    k2 = (D + 0.5 * h * k1) @ velocity(t + 0.5 * h)
    k3 = (D + 0.5 * h * k2) @ velocity(t + 0.5 * h)
    k4 = (D + h * k3) @ velocity(t + h)
    return D + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def develop_sampled(velocity: Callable[[float], np.ndarray], t0: float, t1: float, rtol: float = 1e-10,
                    h0: Optional[float] = None, max_steps: int = 100000) -> np.ndarray:
    """Solve D' = D X(t), D(t0) = I, by RK4 with step doubling and Richardson extrapolation."""
    D = np.eye(np.asarray(velocity(t0)).shape[0])
    t = float(t0)
    h = h0 if h0 is not None else (t1 - t0) / 16.0
    steps = 0
    while t < t1:
        if steps >= max_steps:
            raise PreconditionError(f"develop_sampled exceeded {max_steps} steps")
        h = min(h, t1 - t)
        full = _rk4_step(D, velocity, t, h)
        half = _rk4_step(_rk4_step(D, velocity, t, h / 2), velocity, t + h / 2, h / 2)
        error = np.max(np.abs(half - full)) / 15.0
        scale = max(1.0, np.max(np.abs(half)))
        if error <= rtol * scale:
            D = half + (half - full) / 15.0
            t += h
            steps += 1
            # grow the step, bounded by the fifth-order error model
            factor = 2.0 if error == 0 else min(2.0, 0.9 * (rtol * scale / error) ** 0.2)
            h *= max(factor, 1.0)
        else:
            h *= max(0.1, 0.9 * (rtol * scale / error) ** 0.2)
    logger.debug("develop_sampled: %d accepted steps on [%s, %s]", steps, t0, t1)
    return D


def is_group_float(mat: np.ndarray, signature: Signature, rtol: float = 1e-12) -> bool:
    J = exact.to_float_array(SplitForm.ambient(signature).gram)
    mat = np.asarray(mat, dtype=float)
    if mat.shape != J.shape:
        raise DimensionMismatch(f"expected a {J.shape[0]}x{J.shape[0]} matrix")
    defect = mat.T @ J @ mat - J
    return float(np.max(np.abs(defect))) <= rtol * max(1.0, float(np.max(np.abs(mat))) ** 2)


def curve_velocity_float(curve: PiecewiseCurve) -> Callable[[float], np.ndarray]:
    """Piecewise-constant velocity of a curve, as the float input of develop_sampled."""
    pieces = [(float(seg.start), float(seg.end), exact.to_float_array(seg.direction.mat))
              for seg in curve.segments]

    def velocity(t: float) -> np.ndarray:
        for t0, t1, X in pieces:
            if t <= t1:
                return X
        return pieces[-1][2]

    return velocity
