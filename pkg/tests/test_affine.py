import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import root_system
from lieaffine import affine
from lieaffine.rootsys import all_types, build, connection_index, fundamental_group

TYPES = [str(ct) for ct in all_types(8)]


def test_a1_alcove():
    alc = affine.fundamental_alcove(root_system("A1"))
    assert set(alc.vertices) == {(F(0),), (F(1, 2),)}
    assert alc.barycenter == (F(1, 4),)


def test_a2_alcove():
    alc = affine.fundamental_alcove(root_system("A2"))
    assert alc.vertices == ((F(0), F(0)), (F(2, 3), F(1, 3)), (F(1, 3), F(2, 3)))
    assert alc.barycenter == (F(1, 3), F(1, 3))


def test_g2_barycenter_is_interior():
    rs = root_system("G2")
    x0 = affine.fundamental_alcove(rs).barycenter
    assert all(0 < rs.pair(root, x0) < 1 for root in rs.positive_roots)


def test_interior_point_needs_no_walk():
    rs = root_system("A2")
    x0 = affine.fundamental_alcove(rs).barycenter
    x, u = affine.reduce_to_alcove(rs, x0)
    assert x == x0 and u.is_identity


def test_a1_walls():
    rs = root_system("A1")
    x, u = affine.reduce_to_alcove(rs, (F(7, 10),))
    assert x == (F(3, 10),)
    assert u == affine.affine_reflection(rs, 0)
    x, u = affine.reduce_to_alcove(rs, (F(-3, 10),))
    assert x == (F(3, 10),)
    assert u == affine.affine_reflection(rs, 1)


@pytest.mark.parametrize("name", ["A2", "B3", "G2", "E6", "D5"])
def test_reduce_certificate(name):
    rs = root_system(name)
    rng = random.Random(3)
    for _ in range(20):
        x = affine.random_rational_point(rs, rng)
        x1, u = affine.reduce_to_alcove(rs, x)
        assert u(x) == x1 and affine.in_closed_alcove(rs, x1)


def test_a1_stabilizer():
    rs = root_system("A1")
    ha = affine.alcove_stabilizer(rs)
    assert ha.order == 2
    flip = next(h for h in ha.elements if not h.is_identity)
    assert flip((F(0),)) == (F(1, 2),) and flip((F(1, 4),)) == (F(1, 4),)
    assert flip((F(1, 10),)) == (F(2, 5),)


def test_a2_stabilizer_rotates():
    ha = affine.alcove_stabilizer(root_system("A2"))
    assert str(ha.group_structure) == "Z/3"
    cycles = sorted(p for p in ha.vertex_permutations if p != (0, 1, 2))
    assert cycles == [(1, 2, 0), (2, 0, 1)]


def test_e8_stabilizer_trivial():
    ha = affine.alcove_stabilizer(root_system("E8"))
    assert ha.order == 1 and ha.elements[0].is_identity


@pytest.mark.parametrize("name", TYPES)
def test_stabilizer_matches_fundamental_group(name):
    rs = root_system(name)
    ha = affine.alcove_stabilizer(rs)
    alc = affine.fundamental_alcove(rs)
    assert ha.order == connection_index(rs)
    assert ha.group_structure == fundamental_group(rs)
    assert all(h(alc.barycenter) == alc.barycenter for h in ha.elements)
    assert len(set(ha.vertex_permutations)) == ha.order


def test_retract_endpoints():
    alc = affine.fundamental_alcove(root_system("A2"))
    x = (F(1, 6), F(1, 6))
    assert affine.retract(x, 0, alc) == x
    assert affine.retract(x, 1, alc) == alc.barycenter


def test_retract_a1_midpoint():
    alc = affine.fundamental_alcove(root_system("A1"))
    assert affine.retract((F(0),), F(1, 2), alc) == (F(1, 8),)


def test_retract_rejects_parameter():
    alc = affine.fundamental_alcove(root_system("A1"))
    with pytest.raises(ValueError):
        affine.retract((F(0),), F(3, 2), alc)


def test_affine_map_composition():
    rs = root_system("B2")
    a, b = affine.affine_reflection(rs, 0), affine.affine_reflection(rs, 1)
    x = (F(1, 7), F(2, 9))
    assert (a @ b)(x) == a(b(x))
    assert (a @ a).is_identity
    assert (b.inverse() @ b).is_identity


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["A3", "B2", "C3", "G2", "D4", "F4"]), st.integers(0, 10**6), st.fractions(0, 1, max_denominator=60))
def test_retract_commutes_with_stabilizer(name, seed, s):
    rs = root_system(name)
    rng = random.Random(seed)
    alc = affine.fundamental_alcove(rs)
    ha = affine.alcove_stabilizer(rs)
    h = rng.choice(ha.elements)
    x = affine.random_alcove_point(rs, rng)
    assert affine.retract(h(x), s, alc) == h(affine.retract(x, s, alc))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["A2", "B3", "C2", "G2", "D4", "E6"]), st.integers(0, 10**6))
def test_reduce_is_invariant_under_affine_weyl(name, seed):
    rs = root_system(name)
    rng = random.Random(seed)
    x = affine.random_rational_point(rs, rng)
    u = affine.random_affine_weyl_element(rs, rng)
    assert affine.reduce_to_alcove(rs, u(x))[0] == affine.reduce_to_alcove(rs, x)[0]
