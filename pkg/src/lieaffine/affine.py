"""Affine and extended affine Weyl groups, the fundamental alcove and its stabilizer.

The fundamental alcove is cut out by alpha_i(x) >= 0 and theta(x) <= 1, with
theta the highest root.  Its vertices are v_0 = 0 and v_i = omega_i^vee / a_i
where a_i are the marks of theta.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactmath import (
    InvariantFactors,
    Matrix,
    QVector,
    inverse_rational,
    lcm_of_denominators,
    matmul,
    matvec,
    smith_decomposition,
    transpose,
)
from .groups import abelian_invariants
from .rootsys import RootSystem
from .weyl import simple_reflection

MAX_REFLECTIONS = 10**6


class ConventionError(AssertionError):
    """An internal consistency check failed; indicates a convention bug."""


@dataclass(frozen=True)
class AffineMap:
    """x -> linear @ x + translation, on coroot coordinates."""

    linear: Matrix
    translation: QVector
    lattice_tag: str = field(default="coweight", compare=False)

    @classmethod
    def identity(cls, n: int, lattice_tag: str = "coroot") -> "AffineMap":
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return cls(ident, (Fraction(0),) * n, lattice_tag)

    @classmethod
    def translation_by(cls, gamma, lattice_tag: str = "coweight") -> "AffineMap":
        n = len(gamma)
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return cls(ident, tuple(Fraction(g) for g in gamma), lattice_tag)

    def __call__(self, x) -> QVector:
        return tuple(Fraction(a) + b for a, b in zip(matvec(self.linear, x), self.translation))

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        """Composition: (self @ other)(x) = self(other(x))."""
        tag = "coroot" if self.lattice_tag == other.lattice_tag == "coroot" else "coweight"
        shift = matvec(self.linear, other.translation)
        return AffineMap(
            matmul(self.linear, other.linear),
            tuple(Fraction(a) + b for a, b in zip(shift, self.translation)),
            tag,
        )

    def inverse(self) -> "AffineMap":
        inv = tuple(tuple(int(v) for v in row) for row in inverse_rational(self.linear))
        return AffineMap(inv, tuple(-v for v in matvec(inv, self.translation)), self.lattice_tag)

    @property
    def is_identity(self) -> bool:
        return self == AffineMap.identity(len(self.linear))


@dataclass(frozen=True)
class Alcove:
    vertices: tuple[QVector, ...]
    barycenter: QVector


def theta_values(rs: RootSystem, x) -> Fraction:
    return rs.pair(rs.highest_root_marks, x)


def in_closed_alcove(rs: RootSystem, x) -> bool:
    return all(v >= 0 for v in rs.simple_values(x)) and theta_values(rs, x) <= 1


def in_open_alcove(rs: RootSystem, x) -> bool:
    return all(v > 0 for v in rs.simple_values(x)) and theta_values(rs, x) < 1


@lru_cache(maxsize=None)
def fundamental_alcove(rs: RootSystem) -> Alcove:
    n = rs.rank
    verts = [(Fraction(0),) * n]
    for w, a in zip(rs.fundamental_coweights, rs.highest_root_marks):
        verts.append(tuple(c / a for c in w))
    bary = tuple(sum(col, Fraction(0)) / (n + 1) for col in zip(*verts))
    if not in_open_alcove(rs, bary):
        raise ConventionError("barycenter is not interior to the alcove")
    return Alcove(tuple(verts), bary)


def affine_reflection(rs: RootSystem, i: int) -> AffineMap:
    """Reflection in the i-th wall; i = 0 is the affine wall theta = 1."""
    n = rs.rank
    if i > 0:
        return AffineMap(simple_reflection(rs, i - 1), (Fraction(0),) * n, "coroot")
    cov = rs.highest_coroot
    theta = [sum(rs.cartan[k][j] * rs.highest_root_marks[j] for j in range(n)) for k in range(n)]
    lin = tuple(tuple(int(r == k) - cov[r] * theta[k] for k in range(n)) for r in range(n))
    return AffineMap(lin, tuple(Fraction(c) for c in cov), "coroot")


def reduce_to_alcove(rs: RootSystem, x, certificate=None) -> tuple[QVector, AffineMap]:
    """Walk ``x`` into the closed fundamental alcove.

    Returns ``(x', u)`` with ``u`` in W_a and ``u(x) = x'``.  Walls are scanned
    simple-first, then the affine wall.  If ``certificate`` is given (a point
    of the open alcove containing x in its closure), wall choices are made by
    the certificate, which is carried along with x.
    """
    n = rs.rank
    c = rs.cartan
    x = [Fraction(v) for v in x]
    probe_q = x if certificate is None else [Fraction(v) for v in certificate]
    d = lcm_of_denominators(x + probe_q)
    pts = [[int(v * d) for v in x]]
    if certificate is not None:
        pts.append([int(v * d) for v in probe_q])
    probe = pts[-1]
    theta_fn = [sum(c[k][j] * rs.highest_root_marks[j] for j in range(n)) for k in range(n)]
    cov = rs.highest_coroot
    lin = [[int(i == j) for j in range(n)] for i in range(n)]
    trans = [0] * n
    for _ in range(MAX_REFLECTIONS):
        wall = None
        for j in range(n):
            if sum(probe[i] * c[i][j] for i in range(n)) < 0:
                wall = j
                break
        if wall is not None:
            col = [c[k][wall] for k in range(n)]
            for p in pts:
                p[wall] -= sum(p[k] * col[k] for k in range(n))
            lin[wall] = [lin[wall][m] - sum(col[k] * lin[k][m] for k in range(n)) for m in range(n)]
            trans[wall] -= sum(col[k] * trans[k] for k in range(n))
            continue
        if sum(probe[k] * theta_fn[k] for k in range(n)) > d:
            for p in pts:
                excess = sum(p[k] * theta_fn[k] for k in range(n)) - d
                for r in range(n):
                    p[r] -= excess * cov[r]
            row = [sum(theta_fn[k] * lin[k][m] for k in range(n)) for m in range(n)]
            excess = sum(theta_fn[k] * trans[k] for k in range(n)) - 1
            for r in range(n):
                lin[r] = [lin[r][m] - cov[r] * row[m] for m in range(n)]
                trans[r] -= cov[r] * excess
            continue
        out = tuple(Fraction(v, d) for v in pts[0])
        if not in_closed_alcove(rs, out):
            raise ConventionError("walk ended outside the closed alcove")
        u = AffineMap(tuple(map(tuple, lin)), tuple(Fraction(v) for v in trans), "coroot")
        return out, u
    raise ConventionError(f"alcove walk exceeded {MAX_REFLECTIONS} reflections")


def retract(x, s, alcove: Alcove) -> QVector:
    """Straight-line contraction of the closed alcove onto its barycenter."""
    s = Fraction(s)
    if not 0 <= s <= 1:
        raise ValueError(f"retraction parameter {s} outside [0, 1]")
    return tuple(s * b + (1 - s) * Fraction(v) for b, v in zip(alcove.barycenter, x))


def coweight_coset_representatives(rs: RootSystem) -> tuple[tuple[int, ...], list[tuple[tuple[int, ...], QVector]]]:
    """Representatives of P^vee / Q^vee from the Smith decomposition of Cartan^T.

    Returns the nontrivial invariant factors and a list of
    ``(index tuple, coroot coordinates)`` covering every coset exactly once.
    """
    ct = transpose(rs.cartan)
    u, d, _ = smith_decomposition(ct)
    uinv = inverse_rational(u)
    n = rs.rank
    gens, factors = [], []
    for i in range(n):
        if d[i][i] > 1:
            factors.append(d[i][i])
            # generator of Z/d_i in coweight coordinates: U^-1 e_i
            gens.append(tuple(uinv[r][i] for r in range(n)))
    omega = rs.fundamental_coweights
    reps = []
    for idx in itertools.product(*(range(f) for f in factors)):
        y = [sum((k * g[r] for k, g in zip(idx, gens)), Fraction(0)) for r in range(n)]
        x = tuple(sum((y[r] * omega[r][c] for r in range(n)), Fraction(0)) for c in range(n))
        reps.append((idx, x))
    return tuple(factors), reps


@dataclass(frozen=True)
class AlcoveStabilizer:
    elements: tuple[AffineMap, ...]
    indices: tuple[tuple[int, ...], ...]
    vertex_permutations: tuple[tuple[int, ...], ...]
    group_structure: InvariantFactors
    index_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, h: AffineMap) -> int:
        return self.elements.index(h)


def vertex_permutation(h: AffineMap, alcove: Alcove) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(alcove.vertices)}
    try:
        return tuple(pos[h(v)] for v in alcove.vertices)
    except KeyError as exc:
        raise ConventionError("stabilizer element does not permute the alcove vertices") from exc


@lru_cache(maxsize=None)
def alcove_stabilizer(rs: RootSystem) -> AlcoveStabilizer:
    """H_A: translate by each coset representative, then walk the barycenter home."""
    alcove = fundamental_alcove(rs)
    x0 = alcove.barycenter
    factors, reps = coweight_coset_representatives(rs)
    elements, indices = [], []
    for idx, gamma in reps:
        t = AffineMap.translation_by(gamma)
        moved = t(x0)
        _, u = reduce_to_alcove(rs, moved, certificate=moved)
        h = u @ t
        if h(x0) != x0:
            raise ConventionError(f"H_A element for coset {idx} does not fix the barycenter")
        elements.append(AffineMap(h.linear, h.translation, "coweight"))
        indices.append(idx)
    lookup = {h: i for i, h in enumerate(elements)}
    if len(lookup) != len(elements):
        raise ConventionError("distinct cosets produced the same H_A element")
    # closure, and the coset indexing is a homomorphism
    for (i, a), (j, b) in itertools.product(enumerate(elements), repeat=2):
        prod_ = a @ b
        if prod_ not in lookup:
            raise ConventionError("H_A is not closed under composition")
        target = tuple((x + y) % f for x, y, f in zip(indices[i], indices[j], factors))
        if indices[lookup[prod_]] != target:
            raise ConventionError("coset indexing of H_A is not a homomorphism")
    n = rs.rank
    structure = abelian_invariants(elements, lambda a, b: a @ b, AffineMap.identity(n, "coweight"))
    perms = tuple(vertex_permutation(h, alcove) for h in elements)
    return AlcoveStabilizer(tuple(elements), tuple(indices), perms, structure, factors)


# -- random sampling -------------------------------------------------------


def random_alcove_point(rs: RootSystem, rng: random.Random, max_den: int = 60) -> QVector:
    """A point of the closed alcove with positive random barycentric weights."""
    alcove = fundamental_alcove(rs)
    weights = [Fraction(rng.randint(0, max_den)) for _ in alcove.vertices]
    if not any(weights):
        weights[0] = Fraction(1)
    total = sum(weights)
    return tuple(
        sum((w * v[c] for w, v in zip(weights, alcove.vertices)), Fraction(0)) / total for c in range(rs.rank)
    )


def random_rational_point(rs: RootSystem, rng: random.Random, max_den: int = 60, spread: int = 3) -> QVector:
    den = rng.randint(1, max_den)
    return tuple(Fraction(rng.randint(-spread * den, spread * den), den) for _ in range(rs.rank))


def random_affine_weyl_element(rs: RootSystem, rng: random.Random, length: int = 12, spread: int = 3) -> AffineMap:
    """A random word in the affine reflections followed by a coroot translation."""
    u = AffineMap.translation_by([rng.randint(-spread, spread) for _ in range(rs.rank)], "coroot")
    for _ in range(length):
        u = affine_reflection(rs, rng.randint(0, rs.rank)) @ u
    return u
