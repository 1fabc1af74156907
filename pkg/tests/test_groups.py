import itertools

from lieaffine.groups import abelian_invariants, conjugacy_class_count, is_abelian, power


def add_mod(*mods):
    return lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, mods))


def product_group(*mods):
    return list(itertools.product(*(range(m) for m in mods)))


def test_power():
    mul = add_mod(5)
    assert power((2,), 3, mul, (0,)) == (1,)
    assert power((2,), 0, mul, (0,)) == (0,)


def test_invariants_of_products():
    assert abelian_invariants(product_group(2, 2), add_mod(2, 2), (0, 0)).factors == (2, 2)
    assert abelian_invariants(product_group(2, 3), add_mod(2, 3), (0, 0)).factors == (6,)
    assert abelian_invariants(product_group(4, 2), add_mod(4, 2), (0, 0)).factors == (2, 4)
    assert abelian_invariants(product_group(1), add_mod(1), (0,)).factors == ()


def test_class_count_s3():
    perms = list(itertools.permutations(range(3)))
    mul = lambda a, b: tuple(a[b[i]] for i in range(3))
    inv = lambda a: tuple(sorted(range(3), key=lambda i: a[i]))
    assert not is_abelian(perms, mul)
    assert conjugacy_class_count(perms, mul, inv) == 3
