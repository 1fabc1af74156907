"""Finite Weyl groups as integer matrices on coroot coordinates.

Elements are identified by exact matrix equality.  Internally a matrix is
keyed by its image of a regular integral point (the sum of the positive
coroots); the map ``w -> w(x_reg)`` is injective on W, so one int64 per
element is enough to deduplicate and look up.  Enumeration is a
breadth-first closure, generator index ascending, so element order is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exactmath import Matrix, inverse_rational, lcm_of_denominators, matmul, transpose
from .rootsys import RootSystem, weyl_group_order

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    pass


def simple_reflection(rs: RootSystem, i: int) -> Matrix:
    """Matrix of s_i on coroot coordinates: x -> x - alpha_i(x) alpha_i^vee."""
    n = rs.rank
    c = rs.cartan
    return tuple(
        tuple((int(r == k) - c[k][i]) if r == i else int(r == k) for k in range(n)) for r in range(n)
    )


def simple_reflections(rs: RootSystem) -> list[Matrix]:
    return [simple_reflection(rs, i) for i in range(rs.rank)]


def to_coweight_basis(rs: RootSystem, m: Matrix) -> Matrix:
    """The same linear map written on coweight coordinates (alpha_j values)."""
    ct = transpose(rs.cartan)
    out = matmul(matmul(ct, m), rs.cartan_t_inverse)
    if any(Fraction(v).denominator != 1 for row in out for v in row):
        raise ArithmeticError("linear map does not preserve the coweight lattice")
    return tuple(tuple(int(v) for v in row) for row in out)


class _KeyCodec:
    """Mixed-radix int64 encoding of ``vec @ readout`` with entries in [-bound, bound]."""

    def __init__(self, readout, bound: int):
        self.readout = np.asarray(readout, dtype=np.int64)
        self.bound = int(bound)
        n = self.readout.shape[1]
        base = 2 * self.bound + 1
        if base**n >= 2**62:
            raise CapExceeded("element keys do not fit in 64 bits for this rank")
        self.radix = base ** np.arange(n, dtype=np.int64)

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        vals = vecs.astype(np.int64) @ self.readout
        if np.any(np.abs(vals) > self.bound):
            raise ArithmeticError("vector outside the key range; not a Weyl group image")
        return (vals + self.bound) @ self.radix


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    word: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        n = len(self.matrix)
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        m, k = self.matrix, 1
        while m != ident:
            m = matmul(m, self.matrix)
            k += 1
        return k


@dataclass
class WeylGroup:
    """A finite group of integer matrices, fully enumerated.

    ``matrices[k]`` is the k-th element in BFS order; ``parent``/``gen`` record
    how it was reached (``matrices[k] = generators[gen[k]] @ matrices[parent[k]]``).
    """

    rank: int
    generators: list[Matrix]
    matrices: np.ndarray = field(repr=False)
    parent: np.ndarray = field(repr=False)
    gen: np.ndarray = field(repr=False)
    key_vector: np.ndarray = field(repr=False)
    _codec: _KeyCodec = field(repr=False)
    _keys: np.ndarray = field(repr=False)
    _sorted: np.ndarray = field(repr=False)
    _sorted_keys: np.ndarray | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.matrices)

    def __len__(self) -> int:
        return self.order

    def keys_of(self, mats: np.ndarray) -> np.ndarray:
        return self._codec.encode(mats.astype(np.int64) @ self.key_vector)

    def lookup_keys(self, keys: np.ndarray) -> np.ndarray:
        """Element indices for the given keys; -1 where absent."""
        if self._sorted_keys is None:
            self._sorted_keys = self._keys[self._sorted]
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted) - 1)
        idx = self._sorted[pos]
        return np.where(self._keys[idx] == keys, idx, -1)

    def index_of(self, m) -> int:
        arr = np.asarray(m, dtype=np.int64)[None]
        idx = int(self.lookup_keys(self.keys_of(arr))[0])
        if idx >= 0 and not np.array_equal(self.matrices[idx], arr[0]):
            return -1
        return idx

    def __contains__(self, m) -> bool:
        return self.index_of(m) >= 0

    def matrix(self, k: int) -> Matrix:
        return tuple(tuple(int(v) for v in row) for row in self.matrices[k])

    def word(self, k: int) -> tuple[int, ...]:
        """Generator indices (i_1, ..., i_l) with matrix(k) = g_{i_1} ... g_{i_l}."""
        out = []
        while self.parent[k] >= 0:
            out.append(int(self.gen[k]))
            k = int(self.parent[k])
        return tuple(out)

    def element(self, k: int) -> WeylElement:
        return WeylElement(self.matrix(k), self.word(k))

    def elements(self) -> list[WeylElement]:
        return [self.element(k) for k in range(self.order)]

    def is_abelian(self) -> bool:
        gens = [np.asarray(g, dtype=np.int64) for g in self.generators]
        return all(np.array_equal(a @ b, b @ a) for i, a in enumerate(gens) for b in gens[i + 1 :])


def close_group(generators, key_vector, readout, bound: int, cap: int = DEFAULT_CAP) -> WeylGroup:
    """Enumerate the group generated by integer matrices by BFS closure.

    Elements are keyed by ``(w @ key_vector) @ readout``, which must be
    injective on the group and bounded by ``bound`` in absolute value.
    """
    gens = [tuple(tuple(int(v) for v in row) for row in g) for g in generators]
    key_vector = np.asarray(key_vector, dtype=np.int64)
    n = len(key_vector)
    codec = _KeyCodec(readout, bound)
    garr = np.asarray(gens, dtype=np.int64).reshape(len(gens), n, n)

    ident = np.eye(n, dtype=np.int64)
    mats = [ident[None].astype(np.int8)]
    vecs_all = [key_vector[None]]
    parents = [np.array([-1], dtype=np.int64)]
    gen_ids = [np.array([-1], dtype=np.int64)]
    seen = codec.encode(key_vector[None])
    total = 1

    frontier_vecs = key_vector[None]
    frontier_mats = ident[None]
    offset = 0
    while len(frontier_vecs) and len(gens):
        k = len(frontier_vecs)
        # candidates ordered by (frontier position, generator index)
        cand = np.einsum("gij,kj->kgi", garr, frontier_vecs).reshape(k * len(gens), n)
        keys = codec.encode(cand)
        uniq, first = np.unique(keys, return_index=True)
        fresh = ~np.isin(uniq, seen, assume_unique=True)
        first = np.sort(first[fresh])
        if total + len(first) > cap:
            raise CapExceeded(f"group order exceeds cap {cap}")
        if not len(first):
            break
        local_parent = first // len(gens)
        new_gen = first % len(gens)
        frontier_mats = np.einsum("kij,kjl->kil", garr[new_gen], frontier_mats[local_parent])
        if np.any(np.abs(frontier_mats) > 127):
            raise ArithmeticError("matrix entries exceed int8 storage")
        mats.append(frontier_mats.astype(np.int8))
        frontier_vecs = cand[first]
        vecs_all.append(frontier_vecs)
        parents.append(local_parent + offset)
        gen_ids.append(new_gen)
        seen = np.union1d(seen, keys[first])
        offset = total
        total += len(first)

    matrices = np.concatenate(mats)
    keys_all = codec.encode(np.concatenate(vecs_all))
    return WeylGroup(
        rank=n,
        generators=gens,
        matrices=matrices,
        parent=np.concatenate(parents),
        gen=np.concatenate(gen_ids),
        key_vector=key_vector,
        _codec=codec,
        _keys=keys_all,
        _sorted=np.argsort(keys_all, kind="stable"),
    )


def generate(rs: RootSystem, cap: int = DEFAULT_CAP) -> WeylGroup:
    """The Weyl group of ``rs`` generated by its simple reflections."""
    if cap < 1:
        raise ValueError("cap must be positive")
    expected = weyl_group_order(rs.type)
    if expected > cap:
        raise CapExceeded(f"|W({rs.type})| = {expected} exceeds cap {cap}")
    return subgroup(rs, simple_reflections(rs), cap)


def subgroup(rs: RootSystem, generators, cap: int = DEFAULT_CAP) -> WeylGroup:
    """Closure of some elements of W.

    The key is the coweight coordinates of w(2 rho^vee): twice the heights of
    the roots w^-1(alpha_j), so bounded by twice the height of the highest root.
    """
    bound = 2 * sum(rs.highest_root_marks)
    return close_group(generators, rs.rho_coroot_double, rs.cartan, bound, cap)


def _inverse_int(m: Matrix) -> Matrix:
    inv = inverse_rational(m)
    return tuple(tuple(int(v) for v in row) for row in inv)


def conjugacy_classes(group: WeylGroup) -> list[np.ndarray]:
    """Partition element indices into conjugacy classes, ordered by first element."""
    n = group.rank
    label = np.full(group.order, -1, dtype=np.int64)
    gens = [np.asarray(g, dtype=np.int64) for g in group.generators]
    # key of g w g^-1 is g (w (g^-1 x_reg))
    shifted = [_inverse_int(g) for g in group.generators]
    shifted = [np.asarray(s, dtype=np.int64) @ group.key_vector for s in shifted]
    classes = []
    for start in range(group.order):
        if label[start] >= 0:
            continue
        cid = len(classes)
        label[start] = cid
        members = [np.array([start])]
        frontier = np.array([start])
        while len(frontier):
            mats = group.matrices[frontier].astype(np.int64)
            found = []
            for g, y in zip(gens, shifted):
                vecs = (mats @ y) @ g.T
                idx = group.lookup_keys(group._codec.encode(vecs))
                if np.any(idx < 0):
                    raise ArithmeticError("conjugate fell outside the group")
                found.append(idx)
            cand = np.unique(np.concatenate(found)) if found else np.array([], dtype=np.int64)
            cand = cand[label[cand] < 0]
            label[cand] = cid
            members.append(cand)
            frontier = cand
        classes.append(np.sort(np.concatenate(members)))
    assert sum(len(c) for c in classes) == group.order and n >= 1
    return classes


def permutes_roots(rs: RootSystem, m: Matrix) -> bool:
    """Check that ``m`` maps the set of coroots onto itself."""
    coroots = {rs.coroot(r) for r in rs.positive_roots}
    coroots |= {tuple(-v for v in c) for c in coroots}
    images = {tuple(sum(m[i][k] * c[k] for k in range(len(c))) for i in range(len(c))) for c in coroots}
    return images == coroots


@dataclass
class OrbitResult:
    orbit_size: int
    stabilizer_generators: list[Matrix]
    stabilizer: WeylGroup
    denominator: int


def _scaled_coweight(rs: RootSystem, x) -> tuple[np.ndarray, int]:
    vals = rs.simple_values(x)
    d = lcm_of_denominators(vals)
    return np.array([int(v * d) % d for v in vals], dtype=np.int64), d


def orbit_stabilizer(
    rs: RootSystem,
    generators,
    x,
    cap: int = DEFAULT_CAP,
    group_order: int | None = None,
    batch: int = 4096,
) -> OrbitResult:
    """Orbit of exp(x) in T = t/P^vee and its stabilizer, by BFS with Schreier generators.

    Torus points are compared exactly: coweight coordinates are scaled by their
    common denominator and reduced modulo it.  When ``group_order`` is given the
    Schreier search stops as soon as the stabilizer reaches |W|/|orbit|.
    """
    n = rs.rank
    y0, d = _scaled_coweight(rs, x)
    gens = [tuple(tuple(int(v) for v in row) for row in g) for g in generators]
    acts = np.asarray([to_coweight_basis(rs, g) for g in gens], dtype=np.int64).reshape(len(gens), n, n)
    garr = np.asarray(gens, dtype=np.int64).reshape(len(gens), n, n)
    ginv = np.asarray([_inverse_int(g) for g in gens], dtype=np.int64).reshape(len(gens), n, n)
    if d**n >= 2**62:
        raise CapExceeded("torus point keys do not fit in 64 bits")
    radix = d ** np.arange(n, dtype=np.int64)
    stacked = acts.transpose(2, 0, 1).reshape(n, len(gens) * n)  # all generators applied in one product

    layers = [y0[None]]
    parent = [np.array([-1])]
    via = [np.array([-1])]
    seen = np.array([y0 @ radix])
    frontier = y0[None]
    offset, total = 0, 1
    while len(frontier):
        k = len(frontier)
        cand = (frontier @ stacked).reshape(k * len(gens), n) % d
        keys = cand @ radix
        uniq, first = np.unique(keys, return_index=True)
        fresh = ~np.isin(uniq, seen, assume_unique=True)
        first = np.sort(first[fresh])
        if total + len(first) > cap:
            raise CapExceeded(f"orbit size exceeds cap {cap}")
        if not len(first):
            break
        frontier = cand[first]
        layers.append(frontier)
        parent.append(first // len(gens) + offset)
        via.append(first % len(gens))
        seen = np.union1d(seen, keys[first])
        offset = total
        total += len(first)
    pts = np.concatenate(layers)
    parent = np.concatenate(parent)
    via = np.concatenate(via)
    pkeys = pts @ radix
    order = np.argsort(pkeys)

    def locate(keys):
        return order[np.searchsorted(pkeys[order], keys)]

    target = None if group_order is None else group_order // total
    stab_gens: list[Matrix] = []
    stab = subgroup(rs, [], cap)
    if target == 1:
        return OrbitResult(total, stab_gens, stab, d)
    # transversal u_p (u_p . t = p) and its inverse, built layer by layer
    u = np.zeros((total, n, n), dtype=np.int8)
    uinv = np.zeros((total, n, n), dtype=np.int8)
    u[0] = uinv[0] = np.eye(n, dtype=np.int8)
    lo = 1
    for layer in layers[1:]:
        hi = lo + len(layer)
        q, g = parent[lo:hi], via[lo:hi]
        u[lo:hi] = garr[g] @ u[q].astype(np.int64)
        uinv[lo:hi] = uinv[q].astype(np.int64) @ ginv[g]
        lo = hi

    # Schreier generators u_q^-1 g u_p over non-tree edges p --g--> q
    for g in range(len(gens)):
        edge_q = locate(((pts @ acts[g].T) % d) @ radix)
        edge_p = np.arange(total)
        tree = (parent[edge_q] == edge_p) & (via[edge_q] == g)
        edge_p, edge_q = edge_p[~tree], edge_q[~tree]
        for lo in range(0, len(edge_p), batch):
            sl = slice(lo, lo + batch)
            sch = uinv[edge_q[sl]].astype(np.int64) @ garr[g] @ u[edge_p[sl]].astype(np.int64)
            keys = stab.keys_of(sch)
            uniq, first = np.unique(keys, return_index=True)
            missing = first[stab.lookup_keys(uniq) < 0]
            for k in np.sort(missing):
                m = tuple(tuple(int(v) for v in row) for row in sch[k])
                if m in stab:
                    continue
                stab_gens.append(m)
                stab = subgroup(rs, stab_gens, cap)
            if target is not None and stab.order >= target:
                break
        if target is not None and stab.order >= target:
            break
    if target is not None and stab.order != target:
        raise ArithmeticError(f"stabilizer order {stab.order} != |W|/|orbit| = {target}")
    return OrbitResult(total, stab_gens, stab, d)


def orbit_size(rs: RootSystem, group: WeylGroup, x, step: int = 1 << 16) -> int:
    """|W . exp(x)| by applying every enumerated element and counting distinct torus points."""
    vals = [Fraction(v) for v in x]
    d = lcm_of_denominators(vals)
    xs = np.array([int(v * d) for v in vals], dtype=np.int64)
    cartan = np.asarray(rs.cartan, dtype=np.int64)
    # coweight coordinates of w x have the same denominators as those of x
    m = lcm_of_denominators(rs.simple_values(vals))
    shrink = d // m
    d = m
    packed = d ** rs.rank < 2**62
    radix = d ** np.arange(rs.rank, dtype=np.int64) if packed else None
    chunks = []
    for lo in range(0, group.order, step):
        images = (((group.matrices[lo : lo + step].astype(np.int64) @ xs) @ cartan) // shrink) % d
        chunks.append(np.unique(images @ radix) if packed else np.unique(images, axis=0))
    if packed:
        return len(np.unique(np.concatenate(chunks)))
    return len(np.unique(np.concatenate(chunks), axis=0))
