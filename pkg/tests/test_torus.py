from fractions import Fraction as F

import pytest

from conftest import root_system, weyl_group
from lieaffine import torus
from lieaffine.rootsys import all_types, weyl_group_order

SMALL = [str(ct) for ct in all_types(8) if weyl_group_order(ct) <= 50000]


def test_special_points():
    assert torus.special_point(root_system("A1")).coords == (F(1, 4),)
    assert torus.special_point(root_system("A2")).coords == (F(1, 3), F(1, 3))


def test_canonical_form():
    rs = root_system("A1")
    assert torus.TorusPoint.from_coroot(rs, (F(3, 4),)) == torus.TorusPoint.from_coroot(rs, (F(1, 4),))
    assert torus.TorusPoint.from_coroot(rs, (F(-1, 4),)) == torus.TorusPoint.from_coroot(rs, (F(1, 4),))


def test_identity_point_has_full_stabilizer():
    rs = root_system("A2")
    t = torus.TorusPoint.from_coroot(rs, (F(0), F(0)))
    assert torus.stabilizer_direct(rs, t).order == 6
    assert torus.stabilizer_via_alcove(rs, t).order == 6


def test_a2_barycenter():
    rs = root_system("A2")
    rep = torus.stabilizer_direct(rs, torus.special_point(rs))
    assert rep.order == 3 and str(rep.structure) == "Z/3"


def test_a1_quarter():
    rs = root_system("A1")
    assert torus.stabilizer_direct(rs, torus.TorusPoint.from_coroot(rs, (F(1, 4),))).order == 2


def test_alcove_vertex_zero():
    rs = root_system("A1")
    rep = torus.stabilizer_alcove(rs, (F(0),))
    assert rep.order == 2
    assert rep.same_elements(torus.stabilizer_direct(rs, rep.point))


def test_alcove_generic_interior():
    rs = root_system("A2")
    rep = torus.stabilizer_alcove(rs, (F(1, 5), F(1, 7)))
    assert rep.order == 1


def test_alcove_barycenter_is_h_a():
    rs = root_system("D4")
    x0 = torus.fundamental_alcove(rs).barycenter
    rep = torus.stabilizer_alcove(rs, x0)
    assert rep.order == 4 and str(rep.structure) == "Z/2 x Z/2"


def test_alcove_method_rejects_outside_points():
    with pytest.raises(ValueError):
        torus.stabilizer_alcove(root_system("A1"), (F(3, 4),))


@pytest.mark.parametrize("name, structure", [("A3", "Z/4"), ("D4", "Z/2 x Z/2"), ("F4", "0"), ("E6", "Z/3"), ("B5", "Z/2")])
def test_lemma_examples(name, structure):
    report = torus.verify_lemma_H(root_system(name))
    assert report["passed"]
    assert report["direct_structure"] == report["h_a_structure"] == structure


def test_lemma_e8_alcove_only():
    report = torus.verify_lemma_H(root_system("E8"))
    assert report["passed"] and report["direct"] == "skipped (cap)"
    assert report["alcove_order"] == 1


@pytest.mark.parametrize("name", SMALL)
def test_two_methods_agree(name):
    rs = root_system(name)
    g = weyl_group(name)
    for p in torus.random_torus_points(rs, 8, seed=11):
        d = torus.stabilizer_direct(rs, p, g)
        a = torus.stabilizer_via_alcove(rs, p)
        assert d.same_elements(a)
        assert d.structure == a.structure and d.class_count == a.class_count
