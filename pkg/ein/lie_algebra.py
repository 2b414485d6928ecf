# lie_algebra.py
# The matrix Lie algebra o(p+1,q+1): grading, distinguished elements, adjoint action,
# exact centralizer and stabilizer solvers, nilpotent exponentials and the SL(2) embedding

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy.polys.matrices import DomainMatrix

from . import exact
from .errors import (
    DimensionMismatch, InternalAssertion, NotClosedError, NotContainedError,
    NotInAlgebraError, NotInGroupError, NotNilpotentError, NotNullError,
    PreconditionError, SignatureError,
)
from .quadratic_forms import (
    ProjectivePoint, Signature, SplitForm, Vector, basis_vector, require_null_translations, sign_of,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def ambient_gram(signature: Signature) -> DomainMatrix:
    return SplitForm.ambient(signature).gram


def _as_matrix(mat, size: int) -> DomainMatrix:
    if not isinstance(mat, DomainMatrix):
        mat = exact.matrix(mat)
    if mat.shape != (size, size):
        raise DimensionMismatch(f"expected a {size}x{size} matrix, got {mat.shape[0]}x{mat.shape[1]}")
    return mat


class AlgElement:
    """An element of o(p+1,q+1): X^T J + J X = 0, exact rational entries."""

    __slots__ = ("mat", "signature")

    def __init__(self, mat, signature: Signature, check: bool = True):
        self.mat = _as_matrix(mat, signature.ambient_dim)
        self.signature = signature
        if check:
            J = ambient_gram(signature)
            if not exact.is_zero(self.mat.transpose() * J + J * self.mat):
                raise NotInAlgebraError(f"matrix is not in o{signature}")

    @classmethod
    def zero(cls, signature: Signature) -> "AlgElement":
        N = signature.ambient_dim
        return cls(exact.zeros(N, N), signature, check=False)

    def _same(self, other: "AlgElement"):
        if other.signature != self.signature:
            raise SignatureError(f"signatures differ: {self.signature} vs {other.signature}")

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._same(other)
        return AlgElement(self.mat + other.mat, self.signature, check=False)

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        self._same(other)
        return AlgElement(self.mat - other.mat, self.signature, check=False)

    def __neg__(self) -> "AlgElement":
        return AlgElement(-self.mat, self.signature, check=False)

    def __mul__(self, k) -> "AlgElement":
        return AlgElement(exact.scale(self.mat, k), self.signature, check=False)

    __rmul__ = __mul__

    def bracket(self, other: "AlgElement") -> "AlgElement":
        self._same(other)
        return AlgElement(exact.commutator(self.mat, other.mat), self.signature, check=False)

    def flat(self) -> List:
        return exact.flatten(self.mat)

    def entries(self) -> List[List[Fraction]]:
        return exact.entries(self.mat)

    def entry(self, i: int, j: int) -> Fraction:
        return exact.to_fraction(self.mat.to_list()[i][j])

    def is_zero(self) -> bool:
        return exact.is_zero(self.mat)

    def apply(self, v: Sequence) -> Vector:
        return tuple(exact.to_fraction(x) for x in exact.mat_vec(self.mat, [exact.qq(a) for a in v]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.signature == other.signature and exact.mat_equal(self.mat, other.mat)

    def __hash__(self):
        return hash((self.signature, tuple(self.flat())))

    def __repr__(self) -> str:
        return f"AlgElement({self.signature}, {self.entries()})"


class GroupElement:
    """An element of O(p+1,q+1) acting projectively on Ein^{p,q}."""

    __slots__ = ("mat", "signature")

    def __init__(self, mat, signature: Signature, check: bool = True):
        self.mat = _as_matrix(mat, signature.ambient_dim)
        self.signature = signature
        if check:
            J = ambient_gram(signature)
            if not exact.mat_equal(self.mat.transpose() * J * self.mat, J):
                raise NotInGroupError(f"matrix does not preserve the form of signature {signature}")

    @classmethod
    def identity(cls, signature: Signature) -> "GroupElement":
        return cls(exact.identity(signature.ambient_dim), signature, check=False)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.signature != self.signature:
            raise SignatureError(f"signatures differ: {self.signature} vs {other.signature}")
        return GroupElement(self.mat * other.mat, self.signature, check=False)

    def inverse(self) -> "GroupElement":
        # g^{-1} = J g^T J inside O(J), J being an involution
        J = ambient_gram(self.signature)
        return GroupElement(J * self.mat.transpose() * J, self.signature, check=False)

    def apply(self, v: Sequence) -> Vector:
        return tuple(exact.to_fraction(x) for x in exact.mat_vec(self.mat, [exact.qq(a) for a in v]))

    def entries(self) -> List[List[Fraction]]:
        return exact.entries(self.mat)

    def commutes_with(self, other: "GroupElement") -> bool:
        return exact.mat_equal(self.mat * other.mat, other.mat * self.mat)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.signature == other.signature and exact.mat_equal(self.mat, other.mat)

    def __hash__(self):
        return hash((self.signature, tuple(exact.flatten(self.mat))))

    def __repr__(self) -> str:
        return f"GroupElement({self.signature}, {self.entries()})"


@dataclass(frozen=True)
class Grading:
    minus: AlgElement
    zero: AlgElement
    plus: AlgElement

    def total(self) -> AlgElement:
        return self.minus + self.zero + self.plus


# Block positions of the grading u- + r + u+ (rows and columns indexed 0 .. n+1)

def block_of(n: int, i: int, j: int) -> int:
    """-1, 0 or +1 for the grading component owning matrix position (i, j)."""
    last = n + 1
    if (j == 0 and 1 <= i <= n) or (i == last and 1 <= j <= n):
        return -1
    if (i == 0 and 1 <= j <= n) or (j == last and 1 <= i <= n):
        return 1
    return 0


def grade(X: AlgElement) -> Grading:
    n = X.signature.n
    rows = X.mat.to_list()
    parts = {-1: [], 0: [], 1: []}
    for degree in parts:
        parts[degree] = [[x if block_of(n, i, j) == degree else exact.ZERO for j, x in enumerate(row)]
                         for i, row in enumerate(rows)]
    N = X.signature.ambient_dim
    make = lambda rs: AlgElement(DomainMatrix(rs, (N, N), exact.QQ), X.signature, check=False)
    return Grading(make(parts[-1]), make(parts[0]), make(parts[1]))


def _tangent_vector(v: Sequence, signature: Signature) -> List:
    if len(v) != signature.n:
        raise DimensionMismatch(f"expected a vector of R^{signature} with {signature.n} entries, got {len(v)}")
    return [exact.qq(a) for a in v]


def iminus(v: Sequence, signature: Signature) -> AlgElement:
    """Column 0 carries v, row n+1 carries -v^T J_{p,q}."""
    vec = _tangent_vector(v, signature)
    n = signature.n
    form = SplitForm.tangent(signature)
    N = n + 2
    rows = [[exact.ZERO] * N for _ in range(N)]
    for i in range(n):
        rows[1 + i][0] = vec[i]
        rows[n + 1][1 + i] = -vec[form.partner(i)]
    return AlgElement(DomainMatrix(rows, (N, N), exact.QQ), signature, check=False)


def iplus(v: Sequence, signature: Signature) -> AlgElement:
    """Row 0 carries v^T J_{p,q}, column n+1 carries -v."""
    vec = _tangent_vector(v, signature)
    n = signature.n
    form = SplitForm.tangent(signature)
    N = n + 2
    rows = [[exact.ZERO] * N for _ in range(N)]
    for i in range(n):
        rows[0][1 + i] = vec[form.partner(i)]
        rows[1 + i][n + 1] = -vec[i]
    return AlgElement(DomainMatrix(rows, (N, N), exact.QQ), signature, check=False)


def _require_component(X: AlgElement, degree: int, name: str):
    n = X.signature.n
    for i, row in enumerate(X.mat.to_list()):
        for j, x in enumerate(row):
            if x != 0 and block_of(n, i, j) != degree:
                raise NotContainedError(f"element is not in {name}")


def iminus_inverse(X: AlgElement) -> Vector:
    _require_component(X, -1, "u-")
    rows = X.mat.to_list()
    return tuple(exact.to_fraction(rows[1 + i][0]) for i in range(X.signature.n))


def iplus_inverse(X: AlgElement) -> Vector:
    _require_component(X, 1, "u+")
    n = X.signature.n
    rows = X.mat.to_list()
    return tuple(-exact.to_fraction(rows[1 + i][n + 1]) for i in range(n))


def basis_U(signature: Signature, i: int) -> AlgElement:
    """U_i = i^-(u_i) for 1 <= i <= n."""
    if not 1 <= i <= signature.n:
        raise DimensionMismatch(f"U_i is defined for 1 <= i <= {signature.n}, got {i}")
    return iminus(basis_vector(signature.n, i - 1), signature)


def element_T(signature: Signature) -> AlgElement:
    """The null translation T = (i+)^{-1}(1, 0, ..., 0)."""
    require_null_translations(signature, "T")
    return iplus(basis_vector(signature.n, 0), signature)


def reductive_action(Z: AlgElement) -> DomainMatrix:
    """Action M + aI of Z = diag(a, M, -a) on R^{p,q} through i+."""
    _require_component(Z, 0, "the reductive block")
    n = Z.signature.n
    rows = Z.mat.to_list()
    a = rows[0][0]
    block = [[rows[1 + i][1 + j] + (a if i == j else exact.ZERO) for j in range(n)] for i in range(n)]
    return DomainMatrix(block, (n, n), exact.QQ)


def reductive_group_action(g: GroupElement) -> DomainMatrix:
    """The conformal map lambda*A of R^{p,q} for g = diag(lambda, A, 1/lambda)."""
    n = g.signature.n
    rows = g.mat.to_list()
    for i in range(n + 2):
        for j in range(n + 2):
            inside = 1 <= i <= n and 1 <= j <= n
            if not inside and i != j and rows[i][j] != 0:
                raise NotContainedError("group element is not block diagonal")
    lam = rows[0][0]
    return DomainMatrix([[lam * rows[1 + i][1 + j] for j in range(n)] for i in range(n)], (n, n), exact.QQ)


def translation_type(X: AlgElement) -> str:
    """Conjugacy class of a translation in u+: null, spacelike or timelike."""
    return sign_of(SplitForm.tangent(X.signature), iplus_inverse(X))


# Bases

@lru_cache(maxsize=None)
def algebra_basis(signature: Signature) -> Tuple[AlgElement, ...]:
    """J(E_ij - E_ji) for i < j, i.e. E_{s(i),j} - E_{s(j),i} with s the form's pairing."""
    form = SplitForm.ambient(signature)
    N = signature.ambient_dim
    basis = []
    for i in range(N):
        for j in range(i + 1, N):
            rows = [[exact.ZERO] * N for _ in range(N)]
            rows[form.partner(i)][j] += exact.ONE
            rows[form.partner(j)][i] -= exact.ONE
            basis.append(AlgElement(DomainMatrix(rows, (N, N), exact.QQ), signature, check=False))
    return tuple(basis)


def algebra_dimension(signature: Signature) -> int:
    N = signature.ambient_dim
    return N * (N - 1) // 2


def algebra_coordinates(X: AlgElement) -> List:
    """Coordinates of X in algebra_basis: the entries (JX)_{ij}, i < j."""
    form = SplitForm.ambient(X.signature)
    rows = X.mat.to_list()
    N = X.signature.ambient_dim
    return [rows[form.partner(i)][j] for i in range(N) for j in range(i + 1, N)]


def from_algebra_coordinates(coords: Sequence, signature: Signature) -> AlgElement:
    form = SplitForm.ambient(signature)
    N = signature.ambient_dim
    rows = [[exact.ZERO] * N for _ in range(N)]
    k = 0
    for i in range(N):
        for j in range(i + 1, N):
            c = coords[k]
            k += 1
            if c != 0:
                rows[form.partner(i)][j] += c
                rows[form.partner(j)][i] -= c
    return AlgElement(DomainMatrix(rows, (N, N), exact.QQ), signature, check=False)


def _graded_basis(signature: Signature, degree: int) -> List[AlgElement]:
    n = signature.n
    picked = []
    for B in algebra_basis(signature):
        rows = B.mat.to_list()
        blocks = {block_of(n, i, j) for i, row in enumerate(rows) for j, x in enumerate(row) if x != 0}
        if blocks == {degree}:
            picked.append(B)
    return picked


def uminus_basis(signature: Signature) -> List[AlgElement]:
    return [basis_U(signature, i) for i in range(1, signature.n + 1)]


def uplus_basis(signature: Signature) -> List[AlgElement]:
    return [iplus(basis_vector(signature.n, i), signature) for i in range(signature.n)]


def reductive_basis(signature: Signature) -> List[AlgElement]:
    return _graded_basis(signature, 0)


# Subalgebras

class Subalgebra:
    """A linearly independent basis of AlgElements; optionally certified bracket-closed."""

    def __init__(self, signature: Signature, basis: Sequence[AlgElement], closed: bool = False):
        self.signature = signature
        self.basis = list(basis)
        for X in self.basis:
            if X.signature != signature:
                raise SignatureError(f"basis element of signature {X.signature} in a {signature} subalgebra")
        self.span = exact.Span.of([X.flat() for X in self.basis], signature.ambient_dim ** 2)
        if self.span.rank != len(self.basis):
            raise PreconditionError("subalgebra basis is not linearly independent")
        self.closed = False
        if closed:
            if not self.is_closed():
                raise NotClosedError("basis does not span a bracket-closed subspace")
            self.closed = True

    @classmethod
    def spanned_by(cls, signature: Signature, elements: Iterable[AlgElement],
                   closed: bool = False) -> "Subalgebra":
        """Keep a maximal independent subset of the given elements."""
        elements = [X for X in elements if not X.is_zero()]
        keep = exact.independent_indices([X.flat() for X in elements], signature.ambient_dim ** 2)
        return cls(signature, [elements[i] for i in keep], closed=closed)

    @classmethod
    def whole(cls, signature: Signature) -> "Subalgebra":
        sub = cls(signature, algebra_basis(signature))
        sub.closed = True
        return sub

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def contains(self, X: AlgElement) -> bool:
        return self.span.contains(X.flat())

    def contains_all(self, other: Union["Subalgebra", Sequence[AlgElement]]) -> bool:
        elements = other.basis if isinstance(other, Subalgebra) else other
        return all(self.contains(X) for X in elements)

    def coordinates(self, X: AlgElement) -> Optional[List]:
        """Coefficients of X on self.basis, or None when X is outside the span."""
        if not self.contains(X):
            return None
        size = self.signature.ambient_dim ** 2
        columns = [X_.flat() for X_ in self.basis]
        A = DomainMatrix([[columns[j][i] for j in range(len(columns))] for i in range(size)],
                         (size, len(columns)), exact.QQ)
        return exact.solve(A, X.flat())

    def is_closed(self) -> bool:
        for i, X in enumerate(self.basis):
            for Y in self.basis[i + 1:]:
                if not self.contains(X.bracket(Y)):
                    return False
        return True

    def intersection(self, other: "Subalgebra") -> "Subalgebra":
        common = self.span.intersection(other.span)
        N = self.signature.ambient_dim
        return Subalgebra(self.signature, [AlgElement(exact.unflatten(row, N), self.signature, check=False)
                                           for row in common.rows])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subalgebra):
            return NotImplemented
        return self.signature == other.signature and self.span == other.span

    def __hash__(self):
        return hash((self.signature, self.span))

    def __repr__(self) -> str:
        return f"Subalgebra({self.signature}, dim={self.dimension})"


def closure(signature: Signature, generators: Iterable[AlgElement]) -> Subalgebra:
    """Smallest bracket-closed subspace containing the generators."""
    basis: List[AlgElement] = []
    span = exact.Span.zero(signature.ambient_dim ** 2)
    pending = [X for X in generators if not X.is_zero()]
    while pending:
        X = pending.pop()
        if span.contains(X.flat()):
            continue
        span = span.extend([X.flat()])
        for Y in basis:
            pending.append(X.bracket(Y))
        basis.append(X)
    sub = Subalgebra(signature, basis)
    sub.closed = True
    return sub


def bracket(X: AlgElement, Y: AlgElement) -> AlgElement:
    return X.bracket(Y)


def group_inverse(g: GroupElement) -> GroupElement:
    return g.inverse()


def adjoint(g: GroupElement, X: AlgElement) -> AlgElement:
    if g.signature != X.signature:
        raise SignatureError(f"signatures differ: {g.signature} vs {X.signature}")
    return AlgElement(g.mat * X.mat * g.inverse().mat, X.signature, check=False)


def _generator_list(S) -> List[AlgElement]:
    return list(S.basis) if isinstance(S, Subalgebra) else list(S)


def solve_in_algebra(signature: Signature, constraint_rows: List[List]) -> Subalgebra:
    """Elements whose algebra_basis coordinates satisfy the given linear constraints."""
    dim = algebra_dimension(signature)
    solutions = exact.nullspace(constraint_rows, dim) if constraint_rows else \
        exact.identity(dim).to_list()
    return Subalgebra(signature, [from_algebra_coordinates(c, signature) for c in solutions])


def centralizer(S, signature: Optional[Signature] = None) -> Subalgebra:
    """{X in o(p+1,q+1) : [X, s] = 0 for every s in S}, as an exact nullspace."""
    generators = _generator_list(S)
    if signature is None:
        if not generators:
            raise PreconditionError("an empty generator list needs an explicit signature")
        signature = generators[0].signature
    basis = algebra_basis(signature)
    constraint_rows = []
    for s in generators:
        images = [B.bracket(s).flat() for B in basis]
        for k in range(len(images[0])):
            row = [img[k] for img in images]
            if any(x != 0 for x in row):
                constraint_rows.append(row)
    result = solve_in_algebra(signature, constraint_rows)
    result.closed = True
    logger.debug("centralizer of %d generators in o%s has dimension %d",
                 len(generators), signature, result.dimension)
    return result


def parabolic(point: ProjectivePoint, signature: Signature) -> Subalgebra:
    """Stabilizer algebra {X : X x in R x} of a point of Ein^{p,q}."""
    x = [exact.qq(v) for v in point.rep]
    if len(x) != signature.ambient_dim:
        raise DimensionMismatch(f"point has {len(x)} coordinates, expected {signature.ambient_dim}")
    if SplitForm.ambient(signature).eval(point.rep) != 0:
        raise NotNullError(f"{point} is not on the null cone")
    m = next(i for i, v in enumerate(x) if v != 0)
    images = [exact.mat_vec(B.mat, x) for B in algebra_basis(signature)]
    # (Xx)_i x_m - (Xx)_m x_i = 0 for every i != m
    rows = [[w[i] * x[m] - w[m] * x[i] for w in images] for i in range(len(x)) if i != m]
    result = solve_in_algebra(signature, rows)
    result.closed = True
    return result


def codim_in(sub: Subalgebra, amb: Subalgebra) -> int:
    if not amb.contains_all(sub):
        raise NotContainedError("subalgebra is not contained in the ambient subalgebra")
    return amb.dimension - sub.dimension


def matrix_power_vanishes(mat: DomainMatrix, k: int) -> bool:
    power = mat
    for _ in range(k - 1):
        if exact.is_zero(power):
            return True
        power = power * mat
    return exact.is_zero(power)


def exp_nilpotent(X: AlgElement) -> GroupElement:
    """Terminating series sum X^k / k! for a nilpotent X."""
    N = X.signature.ambient_dim
    total = exact.identity(N)
    term = exact.identity(N)
    for k in range(1, N + 1):
        term = term * X.mat * exact.QQ(1, k)
        if exact.is_zero(term):
            return GroupElement(total, X.signature, check=False)
        total = total + term
    raise NotNilpotentError(f"X^{N} != 0; no exact exponential")


# SL(2) acting on span{e_0, e_1} and span{e_n, e_{n+1}}

_K = ((0, 1), (1, 0))


def _two_by_two(A) -> List[List]:
    rows = [[exact.qq(v) for v in row] for row in A]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise DimensionMismatch("expected a 2x2 matrix")
    return rows


def _embed_blocks(top: List[List], bottom: List[List], signature: Signature, middle) -> DomainMatrix:
    n = signature.n
    N = n + 2
    rows = [[exact.ZERO] * N for _ in range(N)]
    for i in range(2):
        for j in range(2):
            rows[i][j] = top[i][j]
            rows[n + i][n + j] = bottom[i][j]
    for i in range(2, n):
        rows[i][i] = middle
    return DomainMatrix(rows, (N, N), exact.QQ)


def sl2_bottom_block(A) -> List[List]:
    """Solve A^T K B = K for the block acting on (x_n, x_{n+1})."""
    rows = _two_by_two(A)
    K = exact.matrix(_K)
    C = exact.matrix(rows).transpose() * K
    columns = []
    for j in range(2):
        col = exact.solve(C, [exact.qq(_K[0][j]), exact.qq(_K[1][j])])
        if col is None:
            raise NotInGroupError("singular 2x2 block")
        columns.append(col)
    return [[columns[j][i] for j in range(2)] for i in range(2)]


def sl2_embed(A, signature: Signature) -> GroupElement:
    require_null_translations(signature, "the SL(2) centralizing T")
    rows = _two_by_two(A)
    det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if det != 1:
        raise NotInGroupError(f"det A = {exact.to_fraction(det)}, expected 1")
    mat = _embed_blocks(rows, sl2_bottom_block(rows), signature, exact.ONE)
    try:
        return GroupElement(mat, signature)
    except NotInGroupError:
        raise InternalAssertion("solved SL(2) block does not preserve the form")


def sl2_algebra_embed(L, signature: Signature) -> AlgElement:
    """Derivative of sl2_embed: L on (x_0, x_1) and -K L^T K on (x_n, x_{n+1})."""
    require_null_translations(signature, "the SL(2) centralizing T")
    rows = _two_by_two(L)
    if rows[0][0] + rows[1][1] != 0:
        raise PreconditionError("sl(2) elements are traceless")
    bottom = [[-rows[1 - j][1 - i] for j in range(2)] for i in range(2)]
    return AlgElement(_embed_blocks(rows, bottom, signature, exact.ZERO), signature)


def rotation_sl2(m) -> List[List[Fraction]]:
    """Rational rotation with cos = (1-m^2)/(1+m^2), sin = 2m/(1+m^2); m = 1 is rotation by pi/2."""
    m = exact.fraction(m)
    c = (1 - m * m) / (1 + m * m)
    s = 2 * m / (1 + m * m)
    return [[c, -s], [s, c]]
