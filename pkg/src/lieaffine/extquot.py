"""The extended quotient T//W = {(w, t) : w t = t} / W.

Over the orbit of t the fiber is the set of conjugacy classes of W(t).
Globally, T//W splits by conjugacy classes [w] of W into pieces T^w / Z(w);
for each class we record dim T^w, |pi_0(T^w)| and |Z(w)|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .affine import AffineMap, alcove_stabilizer, reduce_to_alcove
from .exactmath import Matrix, lcm_of_denominators, rank, smith_normal_form
from .rootsys import RootSystem
from .torus import TorusPoint, random_torus_points, stabilizer_via_alcove
from .weyl import (
    DEFAULT_CAP,
    CapExceeded,
    WeylElement,
    WeylGroup,
    conjugacy_classes,
    generate,
    simple_reflections,
    to_coweight_basis,
)


@dataclass(frozen=True)
class ExtQuotFiber:
    orbit_representative: TorusPoint
    stabilizer_order: int
    class_count: int
    abelian: bool


@dataclass(frozen=True)
class ExtQuotComponent:
    class_rep: WeylElement
    class_size: int
    fixed_dim: int
    fixed_pi0: int
    centralizer_order: int


def fiber(rs: RootSystem, t: TorusPoint, cap: int = DEFAULT_CAP) -> ExtQuotFiber:
    rep = stabilizer_via_alcove(rs, t, cap)
    return ExtQuotFiber(t, rep.order, rep.class_count, rep.abelian)


def fixed_subtorus(rs: RootSystem, m: Matrix) -> tuple[int, int]:
    """(dim T^w, |pi_0 T^w|) for w acting on T = t / P^vee."""
    n = rs.rank
    a = to_coweight_basis(rs, m)
    one_minus = tuple(tuple(int(i == j) - a[i][j] for j in range(n)) for i in range(n))
    dim = n - rank(one_minus)
    snf = smith_normal_form(one_minus)
    if snf.free_rank != dim:
        raise ArithmeticError("kernel rank disagrees with the Smith normal form")
    return dim, snf.torsion_order


def components(rs: RootSystem, weyl: WeylGroup | None = None, cap: int = DEFAULT_CAP) -> list[ExtQuotComponent]:
    if weyl is None:
        weyl = generate(rs, cap)
    out = []
    for cls in conjugacy_classes(weyl):
        k = int(cls[0])
        m = weyl.matrix(k)
        dim, pi0 = fixed_subtorus(rs, m)
        out.append(ExtQuotComponent(weyl.element(k), len(cls), dim, pi0, weyl.order // len(cls)))
    return out


def grid_fixed_points(rs: RootSystem, m: Matrix, modulus: int) -> int:
    """Brute-force count of points of (1/N)P^vee / P^vee fixed by w."""
    n = rs.rank
    a = np.asarray(to_coweight_basis(rs, m), dtype=np.int64)
    grid = np.array(list(product(range(modulus), repeat=n)), dtype=np.int64)
    moved = (grid @ a.T - grid) % modulus
    return int(np.count_nonzero(np.all(moved == 0, axis=1)))


def orbit_points(rs: RootSystem, t: TorusPoint, cap: int = DEFAULT_CAP) -> list[TorusPoint]:
    """The W-orbit of t, by BFS under the simple reflections."""
    gens = [AffineMap(m, (Fraction(0),) * rs.rank) for m in simple_reflections(rs)]
    seen = {t: 0}
    order = [t]
    frontier = [t]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = TorusPoint.from_coroot(rs, g(p.coords))
                if q not in seen:
                    seen[q] = len(order)
                    order.append(q)
                    nxt.append(q)
                    if len(order) > cap:
                        raise CapExceeded(f"orbit exceeds cap {cap}")
        frontier = nxt
    return order


def extquot_point_count_over_orbit(rs: RootSystem, t: TorusPoint, weyl: WeylGroup | None = None, cap: int = DEFAULT_CAP) -> int:
    """Number of W-orbits on {(w, t') : t' in W t, w t' = t'}, by brute force.

    Pairs are enumerated from the full group and merged under the action
    alpha . (w, t') = (alpha w alpha^-1, alpha t') of the simple reflections.
    Points of the orbit are the integer vectors w x (x scaled to integers),
    identified when their coweight coordinates agree modulo 1.
    """
    if weyl is None:
        weyl = generate(rs, cap)
    x = [Fraction(v) for v in t.coords]
    scale = lcm_of_denominators(x)
    xs = np.array([int(v * scale) for v in x], dtype=np.int64)
    cartan = np.asarray(rs.cartan, dtype=np.int64)
    mats = weyl.matrices.astype(np.int64)

    def residue(vecs):
        return (vecs @ cartan) % scale

    images = mats @ xs
    _, first = np.unique(residue(images), axis=0, return_index=True)
    reps = images[np.sort(first)]
    where = {tuple(r): j for j, r in enumerate(residue(reps))}
    pairs = []
    for j, vec in enumerate(reps):
        fixing = np.nonzero(np.all(residue(mats @ vec - vec) == 0, axis=1))[0]
        pairs += [(int(k), j) for k in fixing]
    pair_id = {pr: i for i, pr in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    elems = np.array([k for k, _ in pairs], dtype=np.int64)
    for s in simple_reflections(rs):
        sm = np.asarray(s, dtype=np.int64)
        conj = weyl.lookup_keys(weyl.keys_of(sm @ mats[elems] @ sm))
        moved = [where[tuple(r)] for r in residue(reps @ sm.T)]
        for i, (k, j) in enumerate(pairs):
            a, b = find(i), find(pair_id[(int(conj[i]), moved[j])])
            if a != b:
                parent[a] = b
    return len({find(i) for i in range(len(pairs))})


def is_generic(rs: RootSystem, t: TorusPoint) -> bool:
    """t lies off every reflection hypertorus and off the fixed locus of H_A.

    No root is integral on t, and the alcove representative of t is moved by
    every nontrivial element of H_A.  Off the reflection hypertori these are
    the only elements that can fix t, so generic points have trivial fiber.
    """
    if any(rs.pair(root, t.coords).denominator == 1 for root in rs.positive_roots):
        return False
    x1, _ = reduce_to_alcove(rs, t.coords)
    return not any(h(x1) == x1 for h in alcove_stabilizer(rs).elements if not h.is_identity)


def generic_points(rs: RootSystem, count: int, seed: int = 0, max_den: int = 997, max_tries: int = 10000) -> list[TorusPoint]:
    """``count`` seeded random generic points, by rejection."""
    out: list[TorusPoint] = []
    for tries in range(max_tries):
        if len(out) == count:
            return out
        p = random_torus_points(rs, 1, seed * max_tries + tries, max_den)[0]
        if is_generic(rs, p):
            out.append(p)
    raise RuntimeError(f"found only {len(out)} generic points in {max_tries} draws")


def sample_fibers(rs: RootSystem, count: int, seed: int = 0, cap: int = DEFAULT_CAP) -> list[ExtQuotFiber]:
    """Fibers over ``count`` seeded generic points."""
    return [fiber(rs, p, cap) for p in generic_points(rs, count, seed)]
