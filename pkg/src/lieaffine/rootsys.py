"""Root systems of the split simply connected almost simple types.

Vectors of the Cartan subalgebra ``t`` are written in the basis of simple
coroots.  Roots are written in the basis of simple roots and act on ``t``
through the Cartan matrix, stored with the convention

    cartan[i][j] = alpha_j(alpha_i^vee).

The coroot lattice Q^vee is Z^n in these coordinates; the coweight lattice
P^vee is spanned by the fundamental coweights.  Numbering follows Bourbaki.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial

from .exactmath import (
    InvariantFactors,
    Matrix,
    QVector,
    det,
    inverse_rational,
    smith_normal_form,
    solve_rational,
    transpose,
)

SERIES = "ABCDEFG"

# canonical spellings for the low-rank coincidences
ALIASES = {("C", 2): ("B", 2), ("D", 3): ("A", 3)}


class InvalidCartanType(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        s, n = self.series, self.rank
        if s not in SERIES or len(s) != 1:
            raise InvalidCartanType(f"unknown series {s!r}")
        if not isinstance(n, int) or n < 1:
            raise InvalidCartanType(f"rank must be a positive integer, got {n!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[s]
        if not ok:
            raise InvalidCartanType(f"no root system of type {s}{n}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        text = text.strip().upper()
        try:
            return cls(text[0], int(text[1:]))
        except (IndexError, ValueError) as exc:
            raise InvalidCartanType(f"cannot parse Cartan type {text!r}") from exc

    def canonical(self) -> "CartanType":
        s, n = ALIASES.get((self.series, self.rank), (self.series, self.rank))
        return CartanType(s, n)

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


def _gram_matrix(ct: CartanType) -> list[list[Fraction]]:
    """A W-invariant inner product on the simple roots (squared lengths on the diagonal)."""
    s, n = ct.series, ct.rank
    g = [[Fraction(0)] * n for _ in range(n)]

    def bond(i, j, value):
        g[i][j] = g[j][i] = Fraction(value)

    if s in "ABCD":
        for i in range(n):
            g[i][i] = Fraction(2)
        if s == "D":
            for i in range(n - 2):
                bond(i, i + 1, -1)
            bond(n - 3, n - 1, -1)
        else:
            for i in range(n - 1):
                bond(i, i + 1, -1)
        if s == "B":
            g[n - 1][n - 1] = Fraction(1)
        elif s == "C":
            for i in range(n - 1):
                g[i][i] = Fraction(1)
            for i in range(n - 2):
                bond(i, i + 1, Fraction(-1, 2))
            bond(n - 2, n - 1, -1)
    elif s == "E":
        for i in range(n):
            g[i][i] = Fraction(2)
        # Bourbaki: chain 1-3-4-5-..., node 2 attached to node 4
        bond(0, 2, -1)
        bond(1, 3, -1)
        for i in range(2, n - 1):
            bond(i, i + 1, -1)
    elif s == "F":
        g[0][0] = g[1][1] = Fraction(2)
        g[2][2] = g[3][3] = Fraction(1)
        bond(0, 1, -1)
        bond(1, 2, -1)
        bond(2, 3, Fraction(-1, 2))
    elif s == "G":
        g[0][0], g[1][1] = Fraction(2), Fraction(6)
        bond(0, 1, -3)
    return g


def weyl_group_order(ct: CartanType) -> int:
    """Closed-form order of the Weyl group."""
    s, n = ct.series, ct.rank
    if s == "A":
        return factorial(n + 1)
    if s in "BC":
        return 2**n * factorial(n)
    if s == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}[(s, n)]


def positive_root_count(ct: CartanType) -> int:
    s, n = ct.series, ct.rank
    if s == "A":
        return n * (n + 1) // 2
    if s in "BC":
        return n * n
    if s == "D":
        return n * (n - 1)
    return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[(s, n)]


@dataclass(frozen=True)
class Lattice:
    name: str
    basis: tuple[QVector, ...]


@dataclass(frozen=True)
class RootSystem:
    type: CartanType
    cartan: Matrix
    gram: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)
    highest_root_marks: tuple[int, ...] = ()
    fundamental_coweights: tuple[QVector, ...] = field(default=(), repr=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def highest_root(self) -> tuple[int, ...]:
        return self.highest_root_marks

    def pair(self, root, x) -> Fraction:
        """Evaluate a root (simple-root coordinates) on ``x`` (coroot coordinates)."""
        c = self.cartan
        n = self.rank
        return sum(
            (Fraction(x[i]) * sum(c[i][j] * root[j] for j in range(n)) for i in range(n)),
            Fraction(0),
        )

    def simple_values(self, x) -> QVector:
        """``(alpha_1(x), ..., alpha_n(x))`` -- the coweight coordinates of ``x``."""
        c = self.cartan
        n = self.rank
        return tuple(sum((c[i][j] * Fraction(x[i]) for i in range(n)), Fraction(0)) for j in range(n))

    def coroot(self, root) -> tuple[int, ...]:
        """Coroot of a root, in coroot coordinates."""
        g = self.gram
        n = self.rank
        norm = sum(root[i] * g[i][j] * root[j] for i in range(n) for j in range(n))
        out = tuple(Fraction(root[j]) * g[j][j] / norm for j in range(n))
        if any(v.denominator != 1 for v in out):
            raise ArithmeticError(f"coroot of {root} is not integral: {out}")
        return tuple(int(v) for v in out)

    @cached_property
    def highest_coroot(self) -> tuple[int, ...]:
        return self.coroot(self.highest_root_marks)

    @cached_property
    def rho_coroot_double(self) -> tuple[int, ...]:
        """Sum of positive coroots; a regular integral point of ``t``."""
        n = self.rank
        total = [0] * n
        for r in self.positive_roots:
            for j, v in enumerate(self.coroot(r)):
                total[j] += v
        return tuple(total)

    @cached_property
    def cartan_t_inverse(self) -> tuple[QVector, ...]:
        """Inverse of the transposed Cartan matrix (coweight -> coroot coordinates)."""
        return inverse_rational(transpose(self.cartan))

    @property
    def coroot_lattice(self) -> Lattice:
        n = self.rank
        return Lattice("coroot", tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def coweight_lattice(self) -> Lattice:
        return Lattice("coweight", self.fundamental_coweights)

    def in_coweight_lattice(self, x) -> bool:
        return all(v.denominator == 1 for v in self.simple_values(x))


def _positive_roots(cartan: Matrix) -> list[tuple[int, ...]]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                k = sum(cartan[i][j] * beta[j] for j in range(n))  # beta(alpha_i^vee)
                image = tuple(b - k * int(i == j) for j, b in enumerate(beta))
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    pos = [r for r in seen if all(v >= 0 for v in r)]
    if len(pos) * 2 != len(seen):
        raise ArithmeticError("root closure produced mixed-sign vectors")
    return sorted(pos, key=lambda r: (sum(r), r))


@lru_cache(maxsize=None)
def build(ct: CartanType) -> RootSystem:
    n = ct.rank
    g = _gram_matrix(ct)
    cartan = tuple(tuple(int(2 * g[i][j] / g[i][i]) for j in range(n)) for i in range(n))
    for i in range(n):
        for j in range(n):
            if 2 * g[i][j] / g[i][i] != cartan[i][j]:
                raise ArithmeticError("non-integral Cartan entry")
    pos = _positive_roots(cartan)
    highest = pos[-1]
    if sum(1 for r in pos if sum(r) == sum(highest)) != 1:
        raise ArithmeticError("highest root is not unique")
    # alpha_j(omega_i) = delta_ij  <=>  cartan^T omega_i = e_i
    ct_t = transpose(cartan)
    coweights = tuple(solve_rational(ct_t, [int(i == j) for j in range(n)]) for i in range(n))
    return RootSystem(
        type=ct,
        cartan=cartan,
        gram=tuple(tuple(row) for row in g),
        positive_roots=tuple(pos),
        highest_root_marks=tuple(highest),
        fundamental_coweights=coweights,
    )


def connection_index(rs: RootSystem) -> int:
    return abs(det(rs.cartan))


def fundamental_group(rs: RootSystem) -> InvariantFactors:
    """P^vee / Q^vee, i.e. the cokernel of the transposed Cartan matrix."""
    return smith_normal_form(transpose(rs.cartan))


def all_types(max_rank: int = 8) -> list[CartanType]:
    """Every type covered by the connection-index table, canonical spellings first."""
    out = [CartanType("A", n) for n in range(1, max_rank + 1)]
    out += [CartanType("B", n) for n in range(2, max_rank + 1)]
    out += [CartanType("C", n) for n in range(2, max_rank + 1)]
    out += [CartanType("D", n) for n in range(3, max_rank + 1)]
    out += [CartanType("E", n) for n in (6, 7, 8) if n <= max_rank]
    if max_rank >= 4:
        out.append(CartanType("F", 4))
    if max_rank >= 2:
        out.append(CartanType("G", 2))
    return out


def coxeter_number(rs: RootSystem) -> int:
    return sum(rs.highest_root_marks) + 1
