"""Invariant suites run by ``lieaffine verify``.

Each check yields a :class:`Check`; failures carry the witness that broke them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import affine, extquot, ktheory, rootsys, torus, weyl
from .exactmath import InvariantFactors, det, format_rational, matmul

# the connection-index table for A_n, B_n, C_n, D_n, E6, E7, E8, F4, G2
EXPECTED_F = {"A": None, "B": 2, "C": 2, "D": 4, "E6": 3, "E7": 2, "E8": 1, "F4": 1, "G2": 1}

# orbits above this size are counted by enumeration only, not re-derived by Schreier BFS
SCHREIER_LIMIT = 20000


def expected_connection_index(ct: rootsys.CartanType) -> int:
    if ct.series == "A":
        return ct.rank + 1
    return EXPECTED_F.get(ct.series) or EXPECTED_F[str(ct)]


def expected_fundamental_group(ct: rootsys.CartanType) -> tuple[int, ...]:
    f = expected_connection_index(ct)
    if ct.series == "D":
        return (2, 2) if ct.rank % 2 == 0 else (4,)
    return () if f == 1 else (f,)


@dataclass
class Check:
    type: str
    name: str
    method: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f" -- {self.detail}" if self.detail else ""
        return f"[{tag}] {self.type} {self.name} ({self.method}){extra}"

    def as_dict(self) -> dict:
        return {"type": self.type, "name": self.name, "method": self.method, "passed": self.passed, "detail": self.detail}


def _coxeter_m(a: int, b: int) -> int:
    return {0: 2, 1: 3, 2: 4, 3: 6}[a * b]


def rootsys_checks(rs: rootsys.RootSystem) -> Iterator[Check]:
    t = str(rs.type)
    n = rs.rank
    c = rs.cartan
    ok = all(c[i][i] == 2 for i in range(n)) and all(c[i][j] <= 0 for i in range(n) for j in range(n) if i != j)
    yield Check(t, "cartan.shape", "rootsys", ok)
    pairing = all(
        rs.pair(tuple(int(k == j) for k in range(n)), tuple(int(k == i) for k in range(n))) == c[i][j]
        for i in range(n)
        for j in range(n)
    )
    yield Check(t, "cartan.convention", "rootsys", pairing, "alpha_j(alpha_i^vee) == cartan[i][j]")
    count = len(rs.positive_roots)
    yield Check(t, "roots.count", "closure", count == rootsys.positive_root_count(rs.type), f"{count} positive roots")
    dual = all(
        rs.simple_values(w) == tuple(Fraction(int(i == j)) for j in range(n)) for i, w in enumerate(rs.fundamental_coweights)
    )
    yield Check(t, "coweights.dual", "solve", dual)
    f = rootsys.connection_index(rs)
    pi1 = rootsys.fundamental_group(rs)
    yield Check(t, "f.table", "det", f == expected_connection_index(rs.type), f"f = {f}")
    yield Check(t, "pi1.table", "snf", pi1.factors == expected_fundamental_group(rs.type), str(pi1))
    yield Check(t, "pi1.order", "snf vs det", pi1.order == f == abs(det(c)))


def weyl_checks(rs: rootsys.RootSystem, group: weyl.WeylGroup | None) -> Iterator[Check]:
    t = str(rs.type)
    gens = weyl.simple_reflections(rs)
    n = rs.rank
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    bad = []
    for i in range(n):
        for j in range(n):
            m = 1 if i == j else _coxeter_m(-rs.cartan[i][j], -rs.cartan[j][i])
            p = matmul(gens[i], gens[j])
            acc = ident
            for _ in range(m):
                acc = matmul(acc, p)
            if acc != ident:
                bad.append((i + 1, j + 1))
    yield Check(t, "weyl.coxeter_relations", "matrix", not bad, f"violated at {bad}" if bad else "")
    perm = all(weyl.permutes_roots(rs, g) for g in gens)
    yield Check(t, "weyl.permutes_roots", "matrix", perm)
    if group is None:
        yield Check(t, "weyl.order", "skipped (cap)", True, f"formula order {rootsys.weyl_group_order(rs.type)}")
        return
    expected = rootsys.weyl_group_order(rs.type)
    yield Check(t, "weyl.order", "bfs", group.order == expected, f"{group.order} vs formula {expected}")


def alcove_checks(rs: rootsys.RootSystem, samples: int, seed: int) -> Iterator[Check]:
    t = str(rs.type)
    alc = affine.fundamental_alcove(rs)
    ha = affine.alcove_stabilizer(rs)
    f = rootsys.connection_index(rs)
    pi1 = rootsys.fundamental_group(rs)
    yield Check(t, "h_a.order", "alcove walk", ha.order == f, f"|H_A| = {ha.order}")
    yield Check(t, "h_a.structure", "element orders vs snf", ha.group_structure == pi1, str(ha.group_structure))
    fixes = all(h(alc.barycenter) == alc.barycenter for h in ha.elements)
    yield Check(t, "h_a.fixes_barycenter", "exact", fixes)
    yield Check(t, "h_a.faithful", "vertex permutations", len(set(ha.vertex_permutations)) == ha.order)

    rng = random.Random(seed)
    bad = None
    for _ in range(samples):
        h = rng.choice(ha.elements)
        x = affine.random_alcove_point(rs, rng)
        s = Fraction(rng.randint(0, 60), 60)
        if affine.retract(h(x), s, alc) != h(affine.retract(x, s, alc)):
            bad = (x, s)
            break
    yield Check(t, "retract.equivariant", f"{samples} samples", bad is None, "" if bad is None else f"witness {bad}")

    bad = None
    for _ in range(samples):
        x = affine.random_rational_point(rs, rng)
        u = affine.random_affine_weyl_element(rs, rng)
        a, _ = affine.reduce_to_alcove(rs, x)
        b, _ = affine.reduce_to_alcove(rs, u(x))
        if a != b:
            bad = x
            break
    yield Check(t, "reduce.invariant", f"{samples} samples", bad is None, "" if bad is None else f"witness {bad}")


def torus_checks(rs: rootsys.RootSystem, group: weyl.WeylGroup | None, samples: int, seed: int, cap: int) -> Iterator[Check]:
    t = str(rs.type)
    report = torus.verify_lemma_H(rs, group, cap)
    detail = f"W(t0) {report.get('direct_structure', report.get('direct'))}, H_A {report['h_a_structure']}"
    yield Check(t, "lemma.W_t0_iso_H_A", "direct+alcove" if group is not None else "alcove", report["passed"], detail)
    if group is None:
        return
    bad = []
    orbit_bad = []
    for p in torus.random_torus_points(rs, samples, seed):
        d = torus.stabilizer_direct(rs, p, group, cap)
        a = torus.stabilizer_via_alcove(rs, p, cap)
        if not (d.same_elements(a) and d.structure == a.structure and d.class_count == a.class_count):
            bad.append(p)
        size = weyl.orbit_size(rs, group, p.coords)
        if size * d.order != group.order or size * a.order != group.order:
            orbit_bad.append(p)
            continue
        if size <= SCHREIER_LIMIT:
            orb = weyl.orbit_stabilizer(rs, weyl.simple_reflections(rs), p.coords, cap, group_order=group.order)
            if orb.orbit_size != size or orb.stabilizer.order != d.order:
                orbit_bad.append(p)
    yield Check(t, "stabilizer.two_methods", f"{samples} samples", not bad, f"witness {bad[:1]}" if bad else "")
    yield Check(t, "orbit_stabilizer.identity", f"{samples} samples, schreier if orbit <= {SCHREIER_LIMIT}", not orbit_bad, f"witness {orbit_bad[:1]}" if orbit_bad else "")


def extquot_checks(rs: rootsys.RootSystem, group: weyl.WeylGroup | None, samples: int, seed: int, cap: int) -> Iterator[Check]:
    t = str(rs.type)
    f = rootsys.connection_index(rs)
    fib = extquot.fiber(rs, torus.special_point(rs), cap)
    yield Check(t, "extquot.fiber_t0", "alcove", fib.class_count == f, f"{fib.class_count} classes")
    generic = extquot.generic_points(rs, min(samples, 5), seed)
    bad = [p for p in generic if extquot.fiber(rs, p, cap).class_count != 1]
    if group is not None:
        bad += [p for p in generic if len(torus.direct_stabilizer_indices(rs, group, p.coords)) != 1]
    method = "alcove+direct" if group is not None else "alcove"
    yield Check(t, "extquot.generic_fibers", method, not bad, f"witness {bad[:1]}" if bad else f"{len(generic)} points")
    if group is None:
        return
    comps = extquot.components(rs, group)
    n = rs.rank
    ok = True
    for comp in comps:
        order = comp.class_rep.order
        is_id = comp.class_rep.matrix == tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        ok &= (comp.fixed_dim == n) == is_id
        ok &= comp.fixed_pi0 >= 1 and order**n % comp.fixed_pi0 == 0
    total = sum(c.class_size for c in comps)
    yield Check(t, "extquot.components", f"{len(comps)} classes", ok and total == group.order)
    if group.order <= 2000:
        bad = []
        for p in [torus.special_point(rs)] + torus.random_torus_points(rs, min(samples, 5), seed + 1):
            if extquot.extquot_point_count_over_orbit(rs, p, group) != extquot.fiber(rs, p).class_count:
                bad.append(p)
        yield Check(t, "extquot.double_count", "pairs vs classes", not bad, f"witness {bad[:1]}" if bad else "")


def ktheory_checks(rs: rootsys.RootSystem) -> Iterator[Check]:
    t = str(rs.type)
    rep = ktheory.k_groups_spherical(rs)
    detail = (
        f"f={rep.f} k0={rep.k0_rank} L={rep.l_packet_size} gens={rep.generator_count} "
        f"|H_A|={rep.h_a_order} |pi1|={rep.pi1_order} k1={rep.k1_rank}"
    )
    yield Check(t, "ktheory.equalities", "independent counts", rep.consistent, detail)
    ha = affine.alcove_stabilizer(rs)
    chars = ktheory.stabilizer_characters(rs)
    res = ktheory.check_characters(InvariantFactors(ha.index_factors), chars)
    yield Check(t, "characters.table", "cyclotomic", all(res.values()), ", ".join(k for k, v in res.items() if not v))


def run_type(ct: rootsys.CartanType, samples: int = 20, seed: int = 0, cap: int = weyl.DEFAULT_CAP) -> list[Check]:
    rs = rootsys.build(ct)
    try:
        group = weyl.generate(rs, cap)
    except weyl.CapExceeded:
        group = None
    out = list(rootsys_checks(rs))
    out += weyl_checks(rs, group)
    out += alcove_checks(rs, samples, seed)
    out += torus_checks(rs, group, samples, seed, cap)
    out += extquot_checks(rs, group, samples, seed, cap)
    out += ktheory_checks(rs)
    return out


def rational_list(vec) -> list[str]:
    return [format_rational(v) for v in vec]
