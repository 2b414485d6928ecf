# centralizer_structure.py
# The centralizer c(T) of the null translation T, read through the slots (a, b, c, s, x, y, M),
# and its slice q = {a = c = 0}: (R + o(p-1,q-1)) acting on the Heisenberg ideal of the x, y and s slots

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import exact
from .errors import (
    DimensionMismatch, InternalAssertion, NotCommutingError, NotContainedError, NotInAlgebraError,
    PreconditionError,
)
from .lie_algebra import AlgElement, Subalgebra, centralizer, closure, element_T
from .nilpotency import lower_central_series
from .quadratic_forms import Signature, SplitForm, require_null_translations

logger = logging.getLogger(__name__)

Vec = Tuple[Fraction, ...]
Mat = Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class SlotLayout:
    """Where the x, y and M slots live in the (n+2)x(n+2) matrix."""
    n: int

    @property
    def inner_dim(self) -> int:
        return self.n - 2

    def inner(self, i: int) -> int:
        """Ambient index of the i-th inner coordinate."""
        return 2 + i

    @property
    def y_column(self) -> int:
        return self.n

    @property
    def x_column(self) -> int:
        return self.n + 1


def inner_form(signature: Signature) -> SplitForm:
    return SplitForm.inner_block(signature)


def _is_inner_algebra(M: Sequence[Sequence[Fraction]], form: SplitForm) -> bool:
    m = form.dim
    # J'M antisymmetric
    JM = [[M[form.partner(i)][j] for j in range(m)] for i in range(m)]
    return all(JM[i][j] == -JM[j][i] for i in range(m) for j in range(m))


def inner_algebra_basis(signature: Signature) -> List[Mat]:
    """E_{s(i),j} - E_{s(j),i}, i < j, for the inner form's pairing s."""
    form = inner_form(signature)
    m = form.dim
    basis = []
    for i in range(m):
        for j in range(i + 1, m):
            rows = [[Fraction(0)] * m for _ in range(m)]
            rows[form.partner(i)][j] += 1
            rows[form.partner(j)][i] -= 1
            basis.append(tuple(tuple(r) for r in rows))
    return basis


def _zero_vec(m: int) -> Vec:
    return tuple(Fraction(0) for _ in range(m))


def _zero_mat(m: int) -> Mat:
    return tuple(_zero_vec(m) for _ in range(m))


def _mat_vec(M: Mat, v: Vec) -> Vec:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in M)


def _mat_mul(A: Mat, B: Mat) -> Mat:
    m = len(A)
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(m)), Fraction(0)) for j in range(m))
                 for i in range(m))


def _mat_sub(A: Mat, B: Mat) -> Mat:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def _vec_comb(*terms: Tuple[Fraction, Vec]) -> Vec:
    length = len(terms[0][1])
    return tuple(sum((k * v[i] for k, v in terms), Fraction(0)) for i in range(length))


@dataclass(frozen=True)
class CTauElement:
    signature: Signature
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    x: Optional[Vec] = None
    y: Optional[Vec] = None
    M: Optional[Mat] = None

    def __post_init__(self):
        m = self.signature.n - 2
        for name in ("a", "b", "c", "s"):
            object.__setattr__(self, name, exact.fraction(getattr(self, name)))
        for name in ("x", "y"):
            value = getattr(self, name)
            value = _zero_vec(m) if value is None else tuple(exact.fraction(v) for v in value)
            if len(value) != m:
                raise DimensionMismatch(f"{name} needs {m} entries, got {len(value)}")
            object.__setattr__(self, name, value)
        M = _zero_mat(m) if self.M is None else tuple(tuple(exact.fraction(v) for v in row) for row in self.M)
        if len(M) != m or any(len(row) != m for row in M):
            raise DimensionMismatch(f"M must be {m}x{m}")
        if not _is_inner_algebra(M, inner_form(self.signature)):
            raise NotInAlgebraError("M does not preserve the inner form on e_2 ... e_{n-1}")
        object.__setattr__(self, "M", M)

    @property
    def in_q(self) -> bool:
        return self.a == 0 and self.c == 0

    def to_q(self) -> "QElement":
        if not self.in_q:
            raise NotContainedError("element has a != 0 or c != 0 and is outside q")
        return QElement(self.signature, self.b, self.M, self.x, self.y, self.s)


@dataclass(frozen=True)
class QElement:
    signature: Signature
    b: Fraction = Fraction(0)
    M: Optional[Mat] = None
    x: Optional[Vec] = None
    y: Optional[Vec] = None
    s: Fraction = Fraction(0)

    def __post_init__(self):
        checked = CTauElement(self.signature, b=self.b, s=self.s, x=self.x, y=self.y, M=self.M)
        for name in ("b", "M", "x", "y", "s"):
            object.__setattr__(self, name, getattr(checked, name))

    def as_ctau(self) -> CTauElement:
        return CTauElement(self.signature, b=self.b, s=self.s, x=self.x, y=self.y, M=self.M)

    def matrix(self) -> AlgElement:
        return assemble(self.as_ctau())


def assemble(e: CTauElement) -> AlgElement:
    sig = e.signature
    n = sig.n
    N = n + 2
    layout = SlotLayout(n)
    form = inner_form(sig)
    Jx = form.lower(e.x)
    Jy = form.lower(e.y)
    rows = [[Fraction(0)] * N for _ in range(N)]
    rows[0][0], rows[0][1], rows[0][n] = e.a, e.b, e.s
    rows[1][0], rows[1][1], rows[1][n + 1] = e.c, -e.a, -e.s
    rows[n][n], rows[n][n + 1] = e.a, -e.b
    rows[n + 1][n], rows[n + 1][n + 1] = -e.c, -e.a
    for i in range(layout.inner_dim):
        r = layout.inner(i)
        rows[0][r] = -Jx[i]
        rows[1][r] = -Jy[i]
        rows[r][layout.y_column] = e.y[i]
        rows[r][layout.x_column] = e.x[i]
        for j in range(layout.inner_dim):
            rows[r][layout.inner(j)] = e.M[i][j]
    X = AlgElement(rows, sig)
    if not X.bracket(element_T(sig)).is_zero():
        raise InternalAssertion("assembled element does not commute with T")
    return X


def disassemble(X: AlgElement) -> CTauElement:
    sig = X.signature
    if not X.bracket(element_T(sig)).is_zero():
        raise NotCommutingError("element does not commute with T")
    layout = SlotLayout(sig.n)
    E = X.entries()
    m = layout.inner_dim
    e = CTauElement(
        sig,
        a=E[0][0], b=E[0][1], c=E[1][0], s=E[0][sig.n],
        x=tuple(E[layout.inner(i)][layout.x_column] for i in range(m)),
        y=tuple(E[layout.inner(i)][layout.y_column] for i in range(m)),
        M=tuple(tuple(E[layout.inner(i)][layout.inner(j)] for j in range(m)) for i in range(m)),
    )
    if assemble(e) != X:
        raise InternalAssertion("element of c(T) is not reproduced by its parameters")
    return e


def inner_algebra_dimension(signature: Signature) -> int:
    m = signature.n - 2
    return m * (m - 1) // 2


def parametrized_family(signature: Signature) -> List[AlgElement]:
    """One element per parameter direction: a, b, c, s, then x, y, then the inner o basis."""
    m = signature.n - 2
    unit = lambda i: tuple(Fraction(1) if k == i else Fraction(0) for k in range(m))
    elements = [
        assemble(CTauElement(signature, a=1)),
        assemble(CTauElement(signature, b=1)),
        assemble(CTauElement(signature, c=1)),
        assemble(CTauElement(signature, s=1)),
    ]
    elements += [assemble(CTauElement(signature, x=unit(i))) for i in range(m)]
    elements += [assemble(CTauElement(signature, y=unit(i))) for i in range(m)]
    elements += [assemble(CTauElement(signature, M=B)) for B in inner_algebra_basis(signature)]
    return elements


@dataclass
class CTauBasisReport:
    kernel: Subalgebra
    family: Subalgebra
    expected_dimension: int

    @property
    def passed(self) -> bool:
        return (self.kernel == self.family and self.kernel.dimension == self.expected_dimension)


def ctau_basis(p: int, q: int) -> CTauBasisReport:
    """c(T) from the kernel of ad T and from the parameter family, with the two spans compared."""
    sig = Signature(p, q)
    require_null_translations(sig, "c(T) slots")
    kernel = centralizer([element_T(sig)])
    family = Subalgebra(sig, parametrized_family(sig))
    expected = 4 + 2 * (sig.n - 2) + inner_algebra_dimension(sig)
    report = CTauBasisReport(kernel, family, expected)
    logger.debug("c(T) at %s: kernel %d, family %d, expected %d",
                 sig, kernel.dimension, family.dimension, expected)
    return report


def q_subalgebra(signature: Signature) -> Subalgebra:
    family = [X for X in parametrized_family(signature)
              if disassemble(X).in_q]
    sub = Subalgebra(signature, family)
    sub.closed = True
    return sub


def q_projections(u: QElement) -> Tuple[Fraction, Mat, Tuple[Vec, Vec]]:
    return u.b, u.M, (u.x, u.y)


def q_bracket(u1: QElement, u2: QElement) -> QElement:
    """[u1, u2] through the matrix commutator, with the projection laws certified."""
    if u1.signature != u2.signature:
        raise DimensionMismatch(f"signatures differ: {u1.signature} vs {u2.signature}")
    result = disassemble(u1.matrix().bracket(u2.matrix()))
    if not result.in_q:
        raise InternalAssertion("bracket of two q elements left q")
    out = result.to_q()
    form = inner_form(u1.signature)
    b, M, (x, y) = q_projections(out)
    # M.v reads as the dual action -Mv on the x, y slots
    expected_x = _vec_comb((u1.b, u2.y), (-u2.b, u1.y), (Fraction(1), _mat_vec(u1.M, u2.x)),
                           (Fraction(-1), _mat_vec(u2.M, u1.x)))
    expected_y = _vec_comb((Fraction(1), _mat_vec(u1.M, u2.y)), (Fraction(-1), _mat_vec(u2.M, u1.y)))
    expected_s = form.inner(u2.x, u1.y) - form.inner(u1.x, u2.y)
    laws = {
        "pi1": b == 0,
        "pi2": M == _mat_sub(_mat_mul(u1.M, u2.M), _mat_mul(u2.M, u1.M)),
        "pi3": (x, y) == (expected_x, expected_y),
        "s": out.s == expected_s,
    }
    failed = [name for name, ok in laws.items() if not ok]
    if failed:
        raise InternalAssertion(f"q bracket laws failed: {', '.join(failed)}")
    return out


@dataclass
class HeisReport:
    q_dimension: int
    center_dimension: int
    center_is_s_slot: bool
    ideal_dimension: int
    derived_dimension: int
    two_step: bool
    stable_under_levi: bool

    @property
    def passed(self) -> bool:
        return (self.center_dimension == 1 and self.center_is_s_slot and self.two_step
                and self.derived_dimension == 1 and self.stable_under_levi)

    def to_json(self) -> Dict:
        return {
            "q_dimension": self.q_dimension,
            "center_dimension": self.center_dimension,
            "center_is_s_slot": self.center_is_s_slot,
            "ideal_dimension": self.ideal_dimension,
            "derived_dimension": self.derived_dimension,
            "two_step": self.two_step,
            "stable_under_levi": self.stable_under_levi,
            "passed": self.passed,
        }


def heis_structure_report(p: int, q: int) -> HeisReport:
    sig = Signature(p, q)
    require_null_translations(sig, "q")
    m = sig.n - 2
    unit = lambda i: tuple(Fraction(1) if k == i else Fraction(0) for k in range(m))
    q_alg = q_subalgebra(sig)
    center = centralizer(q_alg).intersection(q_alg)
    T = element_T(sig)
    ideal_elements = ([assemble(CTauElement(sig, x=unit(i))) for i in range(m)]
                      + [assemble(CTauElement(sig, y=unit(i))) for i in range(m)]
                      + [T])
    ideal = closure(sig, ideal_elements)
    series = lower_central_series(ideal)
    derived = series.terms[1] if len(series.terms) > 1 else []
    levi = [assemble(CTauElement(sig, b=1))] + [assemble(CTauElement(sig, M=B)) for B in inner_algebra_basis(sig)]
    stable = all(ideal.contains(L.bracket(I)) for L in levi for I in ideal.basis)
    report = HeisReport(
        q_dimension=q_alg.dimension,
        center_dimension=center.dimension,
        center_is_s_slot=center.dimension == 1 and center.contains(T),
        ideal_dimension=ideal.dimension,
        derived_dimension=len(derived),
        two_step=series.degree == 2,
        stable_under_levi=stable,
    )
    if ideal.dimension != 2 * sig.n - 3:
        raise InternalAssertion(f"Heisenberg ideal has dimension {ideal.dimension}, expected {2 * sig.n - 3}")
    return report


def heisenberg_triple(signature: Signature) -> Tuple[AlgElement, AlgElement, AlgElement]:
    """X (x-slot e), Y (y-slot J'e) and Z = T with [X, Y] = -Z."""
    m = signature.n - 2
    e = tuple(Fraction(1) if k == 0 else Fraction(0) for k in range(m))
    X = assemble(CTauElement(signature, x=e))
    Y = assemble(CTauElement(signature, y=inner_form(signature).lower(e)))
    Z = element_T(signature)
    if X.bracket(Y) != -Z:
        raise InternalAssertion("Heisenberg triple fails [X, Y] = -T")
    return X, Y, Z


@dataclass
class RelationCheck:
    commuting_M: bool
    y_relation: bool
    x_relation: bool

    @property
    def passed(self) -> bool:
        return self.commuting_M and self.y_relation and self.x_relation


def centralizer_relations(u0: QElement, u: QElement) -> RelationCheck:
    """[M0, M] = 0, M0.y = M.y0 and b0 y - M0.x = b y0 - M.x0 for commuting u0, u (dual action)."""
    neg = Fraction(-1)
    dual = lambda M, v: tuple(neg * w for w in _mat_vec(M, v))
    commutator = _mat_sub(_mat_mul(u0.M, u.M), _mat_mul(u.M, u0.M))
    lhs_x = _vec_comb((u0.b, u.y), (neg, dual(u0.M, u.x)))
    rhs_x = _vec_comb((u.b, u0.y), (neg, dual(u.M, u0.x)))
    return RelationCheck(
        commuting_M=commutator == _zero_mat(len(u.M)),
        y_relation=dual(u0.M, u.y) == dual(u.M, u0.y),
        x_relation=lhs_x == rhs_x,
    )


@dataclass
class BVanishingReport:
    centralizer_dimension: int
    b_values: List[Fraction] = field(default_factory=list)
    relations_checked: int = 0
    relations_passed: bool = True
    offending: List[AlgElement] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.offending and self.relations_passed


def centralizer_b_vanishing(hcheck: Subalgebra) -> BVanishingReport:
    """Every element of c(hcheck) has b = 0, for hcheck in q nilpotent of degree 2p+1 containing T."""
    sig = hcheck.signature
    T = element_T(sig)
    if not hcheck.contains(T):
        raise PreconditionError("subalgebra does not contain T")
    q_alg = q_subalgebra(sig)
    if not q_alg.contains_all(hcheck):
        raise PreconditionError("subalgebra is not contained in q")
    series = lower_central_series(hcheck)
    if series.degree != 2 * sig.p + 1:
        raise PreconditionError(f"subalgebra has degree {series.degree}, expected {2 * sig.p + 1}")
    cent = centralizer(hcheck)
    report = BVanishingReport(cent.dimension)
    for C in cent.basis:
        e = disassemble(C)
        report.b_values.append(e.b)
        if e.b != 0:
            report.offending.append(C)
            logger.error("centralizer element with b = %s: %s", e.b, C)
            continue
        if not e.in_q:
            continue
        u0 = e.to_q()
        for H in hcheck.basis:
            check = centralizer_relations(u0, disassemble(H).to_q())
            report.relations_checked += 1
            if not check.passed:
                report.relations_passed = False
    return report


# Random elements

def _random_inner_matrix(signature: Signature, rng: np.random.Generator) -> Mat:
    m = signature.n - 2
    M = _zero_mat(m)
    for B in inner_algebra_basis(signature):
        k = exact.random_fraction(rng, 3, 2)
        M = tuple(tuple(a + k * b for a, b in zip(ra, rb)) for ra, rb in zip(M, B))
    return M


def random_q(signature: Signature, rng: np.random.Generator) -> QElement:
    m = signature.n - 2
    return QElement(
        signature,
        b=exact.random_fraction(rng, 3, 2),
        M=_random_inner_matrix(signature, rng),
        x=exact.random_vector(rng, m, 3, 2),
        y=exact.random_vector(rng, m, 3, 2),
        s=exact.random_fraction(rng, 3, 2),
    )


def random_ctau(signature: Signature, rng: np.random.Generator) -> CTauElement:
    u = random_q(signature, rng)
    return CTauElement(signature, a=exact.random_fraction(rng, 3, 2), b=u.b,
                       c=exact.random_fraction(rng, 3, 2), s=u.s, x=u.x, y=u.y, M=u.M)
