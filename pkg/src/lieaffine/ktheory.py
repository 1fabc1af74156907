"""Counting side of the K-theory of the spherical principal series.

K_0 has one generator per character of H_A and K_1 vanishes.  Those two
statements are known theorems and are cited, not computed.  The finite data
they rest on (f, H_A and its characters, W(t_0), the special vertices) is
computed here, each quantity along its own route.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from sympy import Poly, cyclotomic_poly, symbols

from .affine import alcove_stabilizer, fundamental_alcove
from .exactmath import InvariantFactors
from .rootsys import CartanType, RootSystem, connection_index, fundamental_group
from .torus import stabilizer_alcove

K1_CITATION = "theorem: K_1 of the unramified unitary principal series vanishes and K_0 is free of rank f; cited, not computed"
R_GROUP_CITATION = "literature: the R-group at t_0 equals W(t_0); cited, not computed"

_x = symbols("x")


class NonAbelianGroupError(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    """A character of prod Z/d_i, stored as exponents: value at g is exp(2 pi i * values[g])."""

    label: tuple[int, ...]
    values: tuple[Fraction, ...]

    @property
    def modulus(self) -> int:
        return lcm(*(v.denominator for v in self.values)) if self.values else 1


def group_elements(h: InvariantFactors) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(d) for d in h.factors)))


def character_table(h: InvariantFactors) -> list[Character]:
    if h.free_rank:
        raise ValueError("character tables are only defined here for finite groups")
    elems = group_elements(h)
    out = []
    for label in elems:
        values = tuple(
            sum((Fraction(k * g, d) for k, g, d in zip(label, el, h.factors)), Fraction(0)) % 1 for el in elems
        )
        out.append(Character(label, values))
    return out


def root_of_unity_sum(exponents) -> tuple[int, bool]:
    """Exact test of sum(exp(2 pi i e)) for rational exponents e.

    Returns ``(count, vanishes)`` where count is the number of terms; the
    sum is reduced modulo the cyclotomic polynomial of the common order.
    """
    exponents = [Fraction(e) % 1 for e in exponents]
    m = lcm(*(e.denominator for e in exponents)) if exponents else 1
    coeffs = [0] * m
    for e in exponents:
        coeffs[int(e * m)] += 1
    poly = Poly(list(reversed(coeffs)), _x)
    rem = poly.rem(Poly(cyclotomic_poly(m, _x), _x))
    return len(exponents), rem.is_zero


def check_characters(h: InvariantFactors, chars: list[Character]) -> dict:
    """Distinctness, multiplicativity and exact orthogonality of a character table."""
    elems = group_elements(h)
    pos = {el: i for i, el in enumerate(elems)}
    distinct = len({c.values for c in chars}) == len(chars) == len(elems)
    multiplicative = all(
        (c.values[pos[a]] + c.values[pos[b]]) % 1
        == c.values[pos[tuple((x + y) % d for x, y, d in zip(a, b, h.factors))]]
        for c in chars
        for a in elems
        for b in elems
    )
    orthogonal = True
    for i, ci in enumerate(chars):
        for j, cj in enumerate(chars):
            count, vanishes = root_of_unity_sum(a - b for a, b in zip(ci.values, cj.values))
            if i == j:
                orthogonal &= all((a - b) % 1 == 0 for a, b in zip(ci.values, cj.values))
                orthogonal &= count == len(elems)
            else:
                orthogonal &= vanishes
    return {"distinct": distinct, "multiplicative": multiplicative, "orthogonal": orthogonal}


def stabilizer_characters(rs: RootSystem) -> list[Character]:
    """Characters of H_A, evaluated on the concrete affine maps.

    H_A elements are indexed by their coset in P^vee / Q^vee; each character is
    checked to be multiplicative under composition of the maps themselves.
    """
    ha = alcove_stabilizer(rs)
    shape = InvariantFactors(ha.index_factors)
    chars = character_table(shape)
    pos = {el: i for i, el in enumerate(group_elements(shape))}
    lookup = {h: pos[ha.indices[i]] for i, h in enumerate(ha.elements)}
    table = [(lookup[a], lookup[b], lookup[a @ b]) for a in ha.elements for b in ha.elements]
    for c in chars:
        v = c.values
        if any(v[ab] != (v[a] + v[b]) % 1 for a, b, ab in table):
            raise ArithmeticError("character is not multiplicative on H_A")
    return chars


def special_vertex_count(rs: RootSystem) -> int:
    """Vertices of the alcove with mark 1 (v_0 included): one per good maximal compact class."""
    return 1 + sum(1 for a in rs.highest_root_marks if a == 1)


def l_packet_size(rs: RootSystem) -> int:
    """Number of irreducible characters of W(t_0), via the alcove stabilizer."""
    x0 = fundamental_alcove(rs).barycenter
    rep = stabilizer_alcove(rs, x0)
    if not rep.abelian:
        raise NonAbelianGroupError(f"W(t_0) for {rs.type} is not abelian")
    return rep.class_count


@dataclass
class KReport:
    type: CartanType
    f: int
    k0_rank: int
    k1_rank: int
    l_packet_size: int
    generator_count: int
    h_a_order: int
    pi1_order: int
    notes: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        vals = {self.f, self.k0_rank, self.l_packet_size, self.generator_count, self.h_a_order, self.pi1_order}
        return len(vals) == 1 and self.k1_rank == 0

    @property
    def is_point(self) -> bool:
        return self.k0_rank == 1


def k_groups_spherical(rs: RootSystem) -> KReport:
    chars = stabilizer_characters(rs)
    notes = [K1_CITATION, R_GROUP_CITATION]
    report = KReport(
        type=rs.type,
        f=connection_index(rs),
        k0_rank=len(chars),
        k1_rank=0,
        l_packet_size=l_packet_size(rs),
        generator_count=special_vertex_count(rs),
        h_a_order=alcove_stabilizer(rs).order,
        pi1_order=fundamental_group(rs).order,
        notes=notes,
    )
    if report.is_point:
        report.notes.append("f = 1: no L-packet; the K-theory is that of a point")
    return report
