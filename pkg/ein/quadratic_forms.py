# quadratic_forms.py
# Split quadratic forms on R^{p+1,q+1}, R^{p,q} and R^{p-1,q-1}; null cone; projective and ray points

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from . import exact
from .errors import DimensionMismatch, PreconditionError, SignatureError, ZeroVectorError

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Signature:
    """Type (p, q) of the model space; n = p + q is the dimension of Ein^{p,q}."""
    p: int
    q: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise SignatureError(f"signature entries must be integers, got ({self.p!r}, {self.q!r})")
        if self.p < 0 or self.q < 0:
            raise SignatureError(f"signature ({self.p},{self.q}) has a negative entry")
        if self.p > self.q:
            raise SignatureError(f"signature ({self.p},{self.q}) needs p <= q")
        if self.p + self.q < 3:
            raise SignatureError(f"signature ({self.p},{self.q}) needs p + q >= 3")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def ambient_dim(self) -> int:
        return self.p + self.q + 2

    def __str__(self) -> str:
        return f"({self.p},{self.q})"

    def to_json(self):
        return [self.p, self.q]


def require_null_translations(signature: Signature, what: str) -> None:
    """T, tau^s, Lambda and the holonomy all live on null directions of R^{p,q}; p = 0 has none."""
    if signature.p < 1:
        raise PreconditionError(f"{what} needs p >= 1; R^{{0,{signature.q}}} has no null directions")


class FormLevel(Enum):
    AMBIENT = 0     # R^{p+1,q+1}
    TANGENT = 1     # R^{p,q}
    INNER = 2       # R^{p-1,q-1}, the middle block e_2 ... e_{n-1}


def split_gram(a: int, b: int) -> DomainMatrix:
    """Gram matrix of 2(x_0 x_{d-1} + ... + x_{a-1} x_{d-a}) + sum of middle squares, d = a + b."""
    d = a + b
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        rows[i][partner(a, d, i)] = 1
    return exact.matrix(rows)


def partner(split: int, dim: int, i: int) -> int:
    """Index paired with i by the split form (i itself in the definite middle block)."""
    if i < split:
        return dim - 1 - i
    if i >= dim - split:
        return dim - 1 - i
    return i


class SplitForm:
    """The split quadratic form of a signature at one of three levels."""

    def __init__(self, signature: Signature, level: FormLevel = FormLevel.AMBIENT):
        self.signature = signature
        self.level = level
        shift = level.value
        self.split = max(signature.p + 1 - shift, 0)
        self.dim = signature.n + 2 - 2 * shift
        self._gram: Optional[DomainMatrix] = None

    @classmethod
    def ambient(cls, signature: Signature) -> "SplitForm":
        return cls(signature, FormLevel.AMBIENT)

    @classmethod
    def tangent(cls, signature: Signature) -> "SplitForm":
        return cls(signature, FormLevel.TANGENT)

    @classmethod
    def inner_block(cls, signature: Signature) -> "SplitForm":
        return cls(signature, FormLevel.INNER)

    @property
    def gram(self) -> DomainMatrix:
        if self._gram is None:
            self._gram = split_gram(self.split, self.dim - self.split)
        return self._gram

    def partner(self, i: int) -> int:
        return partner(self.split, self.dim, i)

    def _check(self, x: Sequence):
        if len(x) != self.dim:
            raise DimensionMismatch(f"vector of length {len(x)} for a form on dimension {self.dim}")

    def eval(self, x: Sequence) -> Fraction:
        self._check(x)
        total = Fraction(0)
        for i in range(self.dim):
            total += Fraction(x[i]) * Fraction(x[self.partner(i)])
        return total

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        self._check(x)
        self._check(y)
        total = Fraction(0)
        for i in range(self.dim):
            total += Fraction(x[i]) * Fraction(y[self.partner(i)])
        return total

    def lower(self, x: Sequence) -> Vector:
        """x^T J as a vector."""
        self._check(x)
        return tuple(Fraction(x[self.partner(i)]) for i in range(self.dim))

    def __eq__(self, other) -> bool:
        return (isinstance(other, SplitForm) and self.signature == other.signature
                and self.level == other.level)

    def __hash__(self):
        return hash((self.signature, self.level))

    def __repr__(self) -> str:
        return f"SplitForm({self.signature}, {self.level.name.lower()})"


def eval_form(form: SplitForm, x: Sequence) -> Fraction:
    return form.eval(x)


def inner(form: SplitForm, x: Sequence, y: Sequence) -> Fraction:
    return form.inner(x, y)


def is_null(form: SplitForm, x: Sequence) -> bool:
    if all(Fraction(v) == 0 for v in x):
        raise ZeroVectorError("the null cone excludes the origin")
    return form.eval(x) == 0


def sign_of(form: SplitForm, x: Sequence) -> str:
    value = form.eval(x)
    if value == 0:
        return "null"
    return "spacelike" if value > 0 else "timelike"


def random_null_vector(form: SplitForm, rng: np.random.Generator, bound: int = 5,
                       max_den: int = 4) -> Vector:
    """Random nonzero null vector: draw every coordinate but x_0, then solve for x_0."""
    if form.split < 1:
        raise PreconditionError(f"{form!r} is definite; its null cone is the origin")
    last = form.dim - 1
    coords = list(exact.random_vector(rng, form.dim, bound, max_den))
    coords[last] = exact.random_fraction(rng, bound, max_den, nonzero=True)
    coords[0] = Fraction(0)
    # Q(x) = 2 x_0 x_last + Q(rest)
    coords[0] = -form.eval(coords) / (2 * coords[last])
    return tuple(coords)


# Projective and ray points

class Cover(Enum):
    PROJECTIVE = "projective"
    RAY = "ray"


def _canonical(rep: Sequence, cover: Cover) -> Vector:
    values = tuple(Fraction(v) for v in rep)
    if all(v == 0 for v in values):
        raise ZeroVectorError("a projective point needs a nonzero representative")
    biggest = max(abs(v) for v in values)
    lead = next(v for v in values if abs(v) == biggest)
    divisor = lead if cover is Cover.PROJECTIVE else biggest
    return tuple(v / divisor for v in values)


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous coordinates up to nonzero (projective) or positive (ray) scalars.

    The representative is always canonical, so dataclass equality is point equality.
    """
    rep: Vector
    cover: Cover = Cover.PROJECTIVE

    def __post_init__(self):
        object.__setattr__(self, "rep", _canonical(self.rep, self.cover))

    @property
    def dim(self) -> int:
        return len(self.rep)

    def __str__(self) -> str:
        return "[" + ":".join(str(v) for v in self.rep) + "]"


def projectivize(x: Sequence, cover: Cover = Cover.PROJECTIVE) -> ProjectivePoint:
    return ProjectivePoint(tuple(x), cover)


def cover_lifts(point: ProjectivePoint) -> Tuple[ProjectivePoint, ProjectivePoint]:
    """The two points of the double cover lying over a projective point."""
    rep = point.rep
    return (ProjectivePoint(rep, Cover.RAY), ProjectivePoint(tuple(-v for v in rep), Cover.RAY))


def cover_projection(point: ProjectivePoint) -> ProjectivePoint:
    return ProjectivePoint(point.rep, Cover.PROJECTIVE)


def basis_vector(dim: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(dim))


def basis_point(signature: Signature, i: int, cover: Cover = Cover.PROJECTIVE) -> ProjectivePoint:
    """[e_i] in homogeneous coordinates of R^{p+1,q+1}."""
    return ProjectivePoint(basis_vector(signature.ambient_dim, i), cover)
