"""Points of the torus T = t / P^vee and their Weyl stabilizers.

Two independent routes to W(t) = {w in W : w t = t}:

* ``stabilizer_direct`` scans an enumerated W for w with w(x) - x in P^vee;
* ``stabilizer_alcove`` reads the stabilizer off the alcove geometry: the
  reflections in the walls through x together with the elements of H_A
  fixing x.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .affine import (
    AffineMap,
    affine_reflection,
    alcove_stabilizer,
    fundamental_alcove,
    in_closed_alcove,
    reduce_to_alcove,
    theta_values,
)
from .exactmath import InvariantFactors, Matrix, QVector, lcm_of_denominators, matmul
from .groups import abelian_invariants
from .rootsys import RootSystem, fundamental_group
from .weyl import DEFAULT_CAP, CapExceeded, WeylGroup, conjugacy_classes, generate, subgroup


@dataclass(frozen=True)
class TorusPoint:
    """exp(x) for x in coroot coordinates, stored in canonical form.

    The canonical representative has coweight coordinates (alpha_j values)
    in [0, 1).
    """

    coords: QVector

    @classmethod
    def from_coroot(cls, rs: RootSystem, x) -> "TorusPoint":
        vals = rs.simple_values(x)
        frac = [v - (v.numerator // v.denominator) for v in vals]
        omega = rs.fundamental_coweights
        n = rs.rank
        coords = tuple(sum((frac[r] * omega[r][c] for r in range(n)), Fraction(0)) for c in range(n))
        return cls(coords)

    def coweight_coords(self, rs: RootSystem) -> QVector:
        return rs.simple_values(self.coords)


def special_point(rs: RootSystem) -> TorusPoint:
    """t_0 = exp of the alcove barycenter."""
    return TorusPoint.from_coroot(rs, fundamental_alcove(rs).barycenter)


@dataclass
class StabilizerReport:
    point: TorusPoint
    order: int
    structure: InvariantFactors | None  # None when nonabelian
    class_count: int
    method: str
    group: WeylGroup = field(repr=False)

    @property
    def abelian(self) -> bool:
        return self.structure is not None

    def keys(self) -> np.ndarray:
        return np.sort(self.group.keys_of(self.group.matrices))

    def same_elements(self, other: "StabilizerReport") -> bool:
        return np.array_equal(self.keys(), other.keys())


def _matrix_tuple(m) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in m)


def _describe(rs: RootSystem, t: TorusPoint, group: WeylGroup, method: str) -> StabilizerReport:
    structure = None
    if group.is_abelian():
        elems = [group.matrix(k) for k in range(group.order)]
        n = rs.rank
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        structure = abelian_invariants(elems, matmul, ident)
        class_count = group.order
    else:
        class_count = len(conjugacy_classes(group))
    return StabilizerReport(t, group.order, structure, class_count, method, group)


def _generated_by_subset(rs: RootSystem, mats: np.ndarray, cap: int) -> WeylGroup:
    """The subgroup formed by ``mats`` (assumed closed), with a small generating set."""
    gens: list[Matrix] = []
    group = subgroup(rs, gens, cap)
    while group.order < len(mats):
        missing = np.nonzero(group.lookup_keys(group.keys_of(mats)) < 0)[0]
        gens.append(_matrix_tuple(mats[missing[0]]))
        group = subgroup(rs, gens, cap)
    if group.order != len(mats):
        raise ArithmeticError("scanned stabilizer is not closed under multiplication")
    return group


def direct_stabilizer_indices(rs: RootSystem, weyl: WeylGroup, x) -> np.ndarray:
    """Indices of w in ``weyl`` with alpha_j(w x - x) integral for all j."""
    d = lcm_of_denominators(x)
    xs = np.array([int(v * d) for v in x], dtype=np.int64)
    cartan = np.asarray(rs.cartan, dtype=np.int64)
    out = []
    step = 1 << 16
    for lo in range(0, weyl.order, step):
        mats = weyl.matrices[lo : lo + step].astype(np.int64)
        diff = mats @ xs - xs
        vals = diff @ cartan
        out.append(np.nonzero(np.all(vals % d == 0, axis=1))[0] + lo)
    return np.concatenate(out)


def stabilizer_direct(rs: RootSystem, t: TorusPoint, weyl: WeylGroup | None = None, cap: int = DEFAULT_CAP) -> StabilizerReport:
    if weyl is None:
        weyl = generate(rs, cap)
    idx = direct_stabilizer_indices(rs, weyl, t.coords)
    group = _generated_by_subset(rs, weyl.matrices[idx].astype(np.int64), cap)
    return _describe(rs, t, group, "direct-scan")


def walls_through(rs: RootSystem, x) -> list[int]:
    """Walls of the closed alcove containing x (0 is the affine wall)."""
    walls = [i + 1 for i, v in enumerate(rs.simple_values(x)) if v == 0]
    if theta_values(rs, x) == 1:
        walls.append(0)
    return walls


def alcove_stabilizer_generators(rs: RootSystem, x) -> list[AffineMap]:
    if not in_closed_alcove(rs, x):
        raise ValueError("point is not in the closed fundamental alcove")
    gens = [affine_reflection(rs, i) for i in walls_through(rs, x)]
    x = tuple(Fraction(v) for v in x)
    gens += [h for h in alcove_stabilizer(rs).elements if h(x) == x and not h.is_identity]
    return gens


def stabilizer_alcove(rs: RootSystem, x, cap: int = DEFAULT_CAP) -> StabilizerReport:
    """W(exp x) for x in the closed alcove, from wall reflections and H_A."""
    gens = alcove_stabilizer_generators(rs, x)
    group = subgroup(rs, [g.linear for g in gens], cap)
    return _describe(rs, TorusPoint.from_coroot(rs, x), group, "alcove")


def stabilizer_via_alcove(rs: RootSystem, t: TorusPoint, cap: int = DEFAULT_CAP) -> StabilizerReport:
    """W(t) for any torus point: walk into the alcove, then conjugate back.

    If u in W_a has linear part w and sends x to x', then exp(x') = w exp(x),
    so W(exp x) = w^-1 W(exp x') w.
    """
    x1, u = reduce_to_alcove(rs, t.coords)
    gens = alcove_stabilizer_generators(rs, x1)
    w = np.asarray(u.linear, dtype=np.int64)
    winv = np.asarray(u.inverse().linear, dtype=np.int64)
    conj = [_matrix_tuple(winv @ np.asarray(g.linear, dtype=np.int64) @ w) for g in gens]
    group = subgroup(rs, conj, cap)
    return _describe(rs, t, group, "alcove")


def lemma_map(rs: RootSystem, weyl: WeylGroup | None = None, cap: int = DEFAULT_CAP) -> dict:
    """Check W(t_0) ~ H_A through the explicit map w -> gamma w.

    gamma is forced to be x_0 - w(x_0); it must lie in P^vee and the affine
    map x -> w x + gamma must be an element of H_A.
    """
    x0 = fundamental_alcove(rs).barycenter
    t0 = special_point(rs)
    ha = alcove_stabilizer(rs)
    direct = stabilizer_direct(rs, t0, weyl, cap)
    images = {}
    for k in range(direct.order):
        w = direct.group.matrix(k)
        wx = AffineMap(w, (Fraction(0),) * rs.rank)(x0)
        gamma = tuple(a - b for a, b in zip(x0, wx))
        if not rs.in_coweight_lattice(gamma):
            raise ArithmeticError("w fixes t_0 but x_0 - w(x_0) is not a coweight")
        candidates = [h for h in ha.elements if h.linear == w]
        images[w] = AffineMap(w, gamma)
        if len(candidates) != 1 or candidates[0] != images[w]:
            return {"bijective": False, "homomorphism": False, "unique_gamma": len(candidates) == 1}
    bijective = len(set(images.values())) == len(images) == ha.order
    homomorphism = all(images[matmul(a, b)] == images[a] @ images[b] for a in images for b in images)
    return {
        "bijective": bijective,
        "homomorphism": homomorphism,
        "unique_gamma": True,
        "direct": direct,
    }


def verify_lemma_H(rs: RootSystem, weyl: WeylGroup | None = None, cap: int = DEFAULT_CAP) -> dict:
    """Report on W(t_0) ~ H_A ~ pi_1; never raises for a failed comparison."""
    ha = alcove_stabilizer(rs)
    pi1 = fundamental_group(rs)
    x0 = fundamental_alcove(rs).barycenter
    alcove_report = stabilizer_alcove(rs, x0, cap)
    report = {
        "type": str(rs.type),
        "h_a_order": ha.order,
        "h_a_structure": str(ha.group_structure),
        "pi1_structure": str(pi1),
        "alcove_order": alcove_report.order,
        "alcove_structure": str(alcove_report.structure),
    }
    ok = alcove_report.order == ha.order and alcove_report.structure == ha.group_structure == pi1
    try:
        lm = lemma_map(rs, weyl, cap)
    except CapExceeded:
        report["direct"] = "skipped (cap)"
    else:
        direct = lm.get("direct")
        report["direct_order"] = None if direct is None else direct.order
        report["direct_structure"] = None if direct is None else str(direct.structure)
        report["map_bijective"] = lm["bijective"]
        report["map_homomorphism"] = lm["homomorphism"]
        ok = ok and direct is not None and direct.structure == ha.group_structure
        ok = ok and lm["bijective"] and lm["homomorphism"] and lm["unique_gamma"]
        ok = ok and direct.same_elements(alcove_report)
    report["passed"] = bool(ok)
    return report


def random_torus_points(rs: RootSystem, count: int, seed: int = 0, max_den: int = 60) -> list[TorusPoint]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        den = rng.randint(1, max_den)
        x = tuple(Fraction(rng.randint(0, 3 * den), den) for _ in range(rs.rank))
        out.append(TorusPoint.from_coroot(rs, x))
    return out
