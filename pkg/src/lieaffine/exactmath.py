"""Exact integer and rational linear algebra.

Inputs and outputs are plain Python ints and :class:`fractions.Fraction`,
so there is no overflow and no rounding.  Matrices are tuples of row tuples.
Elimination and Smith form are delegated to sympy's domain matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Sequence

from sympy import Matrix as SympyMatrix
from sympy.matrices.normalforms import smith_normal_decomp
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

Matrix = tuple[tuple[int, ...], ...]
QVector = tuple[Fraction, ...]


class SingularMatrixError(ValueError):
    pass


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(v) for v in row) for row in rows)
    if not m or not m[0]:
        raise ValueError("matrix must have at least one row and one column")
    if any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


@dataclass(frozen=True)
class InvariantFactors:
    """Finite abelian group (plus optional free part) as d1 | d2 | ... ."""

    factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        fs = tuple(int(d) for d in self.factors)
        if any(d <= 1 for d in fs):
            raise ValueError(f"invariant factors must exceed 1: {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"divisibility chain violated: {fs}")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "factors", fs)

    @property
    def torsion_order(self) -> int:
        return prod(self.factors)

    @property
    def order(self) -> int:
        if self.free_rank:
            raise ValueError("group is infinite")
        return self.torsion_order

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


def _zz(m: Sequence[Sequence[int]]) -> DomainMatrix:
    rows = [[ZZ(int(v)) for v in row] for row in m]
    return DomainMatrix(rows, (len(rows), len(rows[0]) if rows else 0), ZZ)


def _qq(m: Sequence[Sequence]) -> DomainMatrix:
    rows = [[QQ(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in m]
    return DomainMatrix(rows, (len(rows), len(rows[0]) if rows else 0), QQ)


def _fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _square(m: Sequence[Sequence]) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("expected a square matrix")
    return n


def det(m: Sequence[Sequence[int]]) -> int:
    _square(m)
    return int(_zz(m).det())


def rank(m: Sequence[Sequence]) -> int:
    return _qq(m).rank() if m else 0


def inverse_rational(m: Sequence[Sequence]) -> tuple[QVector, ...]:
    _square(m)
    try:
        inv = _qq(m).inv()
    except DMNonInvertibleMatrixError as exc:
        raise SingularMatrixError("matrix is singular") from exc
    return tuple(tuple(_fraction(v) for v in row) for row in inv.to_list())


def solve_rational(m: Sequence[Sequence], b: Sequence) -> QVector:
    """Solve ``m x = b`` exactly over the rationals."""
    if len(b) != _square(m):
        raise ValueError("solve_rational needs a square system")
    try:
        x = _qq(m).lu_solve(_qq([[v] for v in b]))
    except DMNonInvertibleMatrixError as exc:
        raise SingularMatrixError("matrix is singular") from exc
    return tuple(_fraction(row[0]) for row in x.to_list())


def smith_decomposition(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` diagonal in Smith form.

    U and V are unimodular.  Diagonal entries are nonnegative and each
    nonzero one divides the next.
    """
    a = as_matrix(m)
    d, u, v = smith_normal_decomp(SympyMatrix(a), domain=ZZ)
    u, d, v = (as_matrix(x.tolist()) for x in (u, d, v))
    flip = [i for i in range(min(len(d), len(d[0]))) if d[i][i] < 0]
    if flip:
        u = tuple(tuple(-x for x in row) if i in flip else row for i, row in enumerate(u))
        d = tuple(tuple(-x for x in row) if i in flip else row for i, row in enumerate(d))
    return u, d, v


def smith_normal_form(m: Sequence[Sequence[int]]) -> InvariantFactors:
    """Invariant factors of the cokernel of ``m : Z^cols -> Z^rows``."""
    _, d, _ = smith_decomposition(m)
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    nonzero = [x for x in diag if x]
    return InvariantFactors(tuple(x for x in nonzero if x > 1), len(d) - len(nonzero))


def lcm_of_denominators(vec: Sequence[Fraction]) -> int:
    out = 1
    for x in vec:
        den = Fraction(x).denominator
        out = out * den // gcd(out, den)
    return out


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)
