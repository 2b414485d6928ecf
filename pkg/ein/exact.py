# exact.py
# Exact rational linear algebra on top of sympy's DomainMatrix over QQ.
# Public scalars are fractions.Fraction; QQ elements stay inside this module's callers.

import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import DimensionMismatch, MalformedInput

logger = logging.getLogger(__name__)

ZERO = QQ(0)
ONE = QQ(1)


def qq(value):
    """Convert an int, Fraction, rational string or QQ element to a QQ element."""
    if isinstance(value, bool):
        raise MalformedInput(f"not a rational number: {value!r}")
    if QQ.of_type(value):
        return value
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            f = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise MalformedInput(f"not a rational number: {value!r}")
        return QQ(f.numerator, f.denominator)
    if isinstance(value, float):
        f = Fraction(value)
        return QQ(f.numerator, f.denominator)
    if hasattr(value, "p") and hasattr(value, "q"):
        # sympy Rational
        return QQ(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return QQ(int(value.numerator), int(value.denominator))
    raise MalformedInput(f"not a rational number: {value!r}")


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


def fraction(value) -> Fraction:
    """Parse anything qq() accepts straight into a Fraction."""
    return to_fraction(qq(value))


# Matrices

def matrix(rows: Sequence[Sequence]) -> DomainMatrix:
    converted = [[qq(v) for v in row] for row in rows]
    m = len(converted)
    n = len(converted[0]) if m else 0
    if any(len(row) != n for row in converted):
        raise DimensionMismatch("ragged matrix rows")
    return DomainMatrix(converted, (m, n), QQ)


def identity(n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ)


def zeros(m: int, n: int) -> DomainMatrix:
    return DomainMatrix.zeros((m, n), QQ)


def rows_of(M: DomainMatrix) -> List[List]:
    return M.to_list()


def entries(M: DomainMatrix) -> List[List[Fraction]]:
    return [[to_fraction(x) for x in row] for row in M.to_list()]


def flatten(M: DomainMatrix) -> List:
    return [x for row in M.to_list() for x in row]


def unflatten(vec: Sequence, n: int) -> DomainMatrix:
    if len(vec) != n * n:
        raise DimensionMismatch(f"expected {n * n} entries, got {len(vec)}")
    return DomainMatrix([list(vec[i * n:(i + 1) * n]) for i in range(n)], (n, n), QQ)


def scale(M: DomainMatrix, k) -> DomainMatrix:
    return M * qq(k)


def is_zero(M: DomainMatrix) -> bool:
    return all(x == 0 for row in M.to_list() for x in row)


def mat_equal(A: DomainMatrix, B: DomainMatrix) -> bool:
    if A.shape != B.shape:
        return False
    return A.to_list() == B.to_list()


def commutator(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    return A * B - B * A


def mat_vec(M: DomainMatrix, v: Sequence) -> List:
    rows = M.to_list()
    if rows and len(rows[0]) != len(v):
        raise DimensionMismatch(f"matrix has {len(rows[0])} columns, vector has {len(v)} entries")
    return [sum((a * b for a, b in zip(row, v)), ZERO) for row in rows]


def to_float_array(M: DomainMatrix) -> np.ndarray:
    return np.array([[float(to_fraction(x)) for x in row] for row in M.to_list()], dtype=float)


# Row spaces

def rref_rows(vectors: Sequence[Sequence], dim: int) -> Tuple[List[List], Tuple[int, ...]]:
    """Nonzero rows of the reduced row echelon form and their pivot columns."""
    if not vectors:
        return [], ()
    if any(len(v) != dim for v in vectors):
        raise DimensionMismatch(f"expected vectors of length {dim}")
    M = DomainMatrix([list(v) for v in vectors], (len(vectors), dim), QQ)
    R, pivots = M.rref()
    rows = R.to_list()[:len(pivots)]
    normalized = []
    for row, col in zip(rows, pivots):
        lead = row[col]
        normalized.append(row if lead == 1 else [x / lead for x in row])
    return normalized, tuple(pivots)


def rank(vectors: Sequence[Sequence], dim: int) -> int:
    return len(rref_rows(vectors, dim)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List]:
    """Basis of {x : R x = 0}, read off the rref with one free variable per vector."""
    reduced, pivots = rref_rows(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row, col in zip(reduced, pivots):
            v[col] = -row[free]
        basis.append(v)
    return basis


def independent_indices(vectors: Sequence[Sequence], dim: int) -> List[int]:
    """Indices of a maximal linearly independent prefix-greedy subset."""
    if not vectors:
        return []
    columns = [[vectors[j][i] for j in range(len(vectors))] for i in range(dim)]
    _, pivots = rref_rows(columns, len(vectors))
    return list(pivots)


def solve(A: DomainMatrix, b: Sequence) -> Optional[List]:
    """One solution x of A x = b, or None when the system is inconsistent."""
    rows = A.to_list()
    m, n = A.shape
    if len(b) != m:
        raise DimensionMismatch(f"right-hand side has {len(b)} entries, expected {m}")
    augmented = [list(row) + [qq(bi)] for row, bi in zip(rows, b)]
    reduced, pivots = rref_rows(augmented, n + 1)
    if n in pivots:
        return None
    x = [ZERO] * n
    for row, col in zip(reduced, pivots):
        x[col] = row[n]
    return x


class Span:
    """A subspace of QQ^dim, stored canonically as reduced row echelon rows."""

    def __init__(self, dim: int, rows: Optional[List[List]] = None, pivots: Tuple[int, ...] = ()):
        self.dim = dim
        self.rows = rows or []
        self.pivots = tuple(pivots)

    @classmethod
    def of(cls, vectors: Iterable[Sequence], dim: int) -> "Span":
        vectors = [list(v) for v in vectors]
        rows, pivots = rref_rows(vectors, dim)
        return cls(dim, rows, pivots)

    @classmethod
    def zero(cls, dim: int) -> "Span":
        return cls(dim)

    @classmethod
    def full(cls, dim: int) -> "Span":
        return cls.of(identity(dim).to_list(), dim)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return self.rank

    def is_zero(self) -> bool:
        return not self.rows

    def reduce(self, vector: Sequence) -> List:
        v = list(vector)
        if len(v) != self.dim:
            raise DimensionMismatch(f"expected length {self.dim}, got {len(v)}")
        for row, col in zip(self.rows, self.pivots):
            c = v[col]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, vector: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(vector))

    def contains_span(self, other: "Span") -> bool:
        return all(self.contains(row) for row in other.rows)

    def coordinates(self, vector: Sequence) -> Optional[List]:
        """Coefficients on self.rows, or None when vector is outside the span."""
        if not self.contains(vector):
            return None
        return [vector[col] for col in self.pivots]

    def __add__(self, other: "Span") -> "Span":
        return Span.of(self.rows + other.rows, self.dim)

    def extend(self, vectors: Iterable[Sequence]) -> "Span":
        return Span.of(self.rows + [list(v) for v in vectors], self.dim)

    def intersection(self, other: "Span") -> "Span":
        if self.is_zero() or other.is_zero():
            return Span.zero(self.dim)
        k = self.rank
        # a·A = b·B  <=>  (a, b) in the nullspace of [A^T | -B^T]
        stacked = [
            [self.rows[r][i] for r in range(k)] + [-other.rows[r][i] for r in range(other.rank)]
            for i in range(self.dim)
        ]
        solutions = nullspace(stacked, k + other.rank)
        vectors = []
        for sol in solutions:
            vec = [ZERO] * self.dim
            for coeff, row in zip(sol[:k], self.rows):
                if coeff != 0:
                    vec = [a + coeff * b for a, b in zip(vec, row)]
            vectors.append(vec)
        return Span.of(vectors, self.dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Span):
            return NotImplemented
        return self.dim == other.dim and self.pivots == other.pivots and self.rows == other.rows

    def __hash__(self):
        return hash((self.dim, self.pivots, tuple(tuple(r) for r in self.rows)))

    def __repr__(self) -> str:
        return f"Span(dim={self.dim}, rank={self.rank})"


# Random rationals

def random_fraction(rng: np.random.Generator, bound: int = 5, max_den: int = 4,
                    nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, max_den + 1)))
        if value != 0 or not nonzero:
            return value


def random_vector(rng: np.random.Generator, length: int, bound: int = 5,
                  max_den: int = 4) -> Tuple[Fraction, ...]:
    return tuple(random_fraction(rng, bound, max_den) for _ in range(length))
