import random

from hypothesis import given, settings

from superkrull import QQ, GF, SuperRing, super_mul, unit_inverse
from superkrull.errors import HomogeneityError
from superkrull.superpoly import (
    koszul_sign,
    mask_from_indices,
    superideal_module_generators,
    to_vector,
)

from conftest import fields, random_super, seeds

R = SuperRing(QQ, ["x1", "x2"], ["y1", "y2", "y3", "y4"])


def test_odd_products():
    y1, y2, y3, y4 = (R.y(i) for i in range(1, 5))
    assert super_mul(y1, y1).is_zero()
    assert super_mul(y2, y1) == -R("y1*y2")
    assert super_mul(R("y3*y4"), R("y1*y2")) == R("y1*y2*y3*y4")
    assert y3 * y1 * y2 == R("y1*y2*y3")


def test_koszul_sign():
    assert koszul_sign(mask_from_indices([2]), mask_from_indices([1])) == -1
    assert koszul_sign(mask_from_indices([3, 4]), mask_from_indices([1, 2])) == 1
    assert koszul_sign(mask_from_indices([1, 3]), mask_from_indices([2])) == -1


def test_parity():
    assert R("x1*y1*y2").parity() == "even"
    assert R("y1 + y1*y2*y3").parity() == "odd"
    assert R("x1 + y1").parity() == "mixed"
    assert not R("x1 + y1").is_homogeneous()


def test_bar():
    E = R.even_ring
    assert R("x1^2 + x1*y1*y2").bar() == E("x1^2")
    assert R("y1*y2").bar().is_zero()
    assert R("3").bar() == E("3")


def test_to_vector():
    E = R.even_ring
    v = to_vector(R("x1*y1 + y2"))
    assert v.coords == {0b1: E("x1"), 0b10: E.one()}
    assert to_vector(R.zero()).coords == {}
    assert to_vector(R("x1^2*y1*y2")).coords == {0b11: E("x1^2")}


def test_module_generators():
    S = SuperRing(QQ, 0, 2)
    gens = [v.assemble(S) for v in superideal_module_generators([S("y1")])]
    assert sorted(map(str, gens)) == sorted(["y1", "-y1*y2"])
    assert superideal_module_generators([]) == []
    gens = [v.assemble(S) for v in superideal_module_generators([S("y1*y2")])]
    assert gens == [S("y1*y2")]


def test_module_generators_reject_mixed():
    try:
        superideal_module_generators([R("x1 + y1")])
    except HomogeneityError:
        pass
    else:
        assert False


def test_unit_inverse_examples():
    assert unit_inverse(R("1 + y1*y2")) == R("1 - y1*y2")
    assert unit_inverse(R("2")) == R("1/2")
    assert unit_inverse(R("1 + y1*y2 + y3*y4")) == R("1 - y1*y2 - y3*y4 + 2*y1*y2*y3*y4")


def test_unit_inverse_rejects_non_units():
    for text in ["y1*y2", "x1 + y1*y2", "0"]:
        try:
            unit_inverse(R(text))
        except ValueError:
            continue
        assert False, text


def _ring(field):
    return SuperRing(field, 2, 4)


@settings(max_examples=150, deadline=None)
@given(seeds, fields)
def test_associativity_and_distributivity(seed, field):
    rng = random.Random(seed)
    S = _ring(field)
    f, g, h = (random_super(rng, S, terms=4) for _ in range(3))
    assert super_mul(super_mul(f, g), h) == super_mul(f, super_mul(g, h))
    assert super_mul(f, g + h) == super_mul(f, g) + super_mul(f, h)


@settings(max_examples=150, deadline=None)
@given(seeds, fields)
def test_supercommutativity(seed, field):
    rng = random.Random(seed)
    S = _ring(field)
    a, b = rng.randint(0, 1), rng.randint(0, 1)
    f = random_super(rng, S, terms=4, parity=a)
    g = random_super(rng, S, terms=4, parity=b)
    sign = -1 if a and b else 1
    assert super_mul(f, g) == super_mul(g, f).scale(sign)


@settings(max_examples=100, deadline=None)
@given(seeds, fields)
def test_odd_elements_square_to_zero(seed, field):
    rng = random.Random(seed)
    f = random_super(rng, _ring(field), terms=5, parity=1)
    assert super_mul(f, f).is_zero()


@settings(max_examples=100, deadline=None)
@given(seeds, fields)
def test_vector_round_trip(seed, field):
    rng = random.Random(seed)
    S = _ring(field)
    f = random_super(rng, S, terms=5, degree=2)
    assert to_vector(f).assemble(S) == f
    assert S(str(f)) == f


@settings(max_examples=100, deadline=None)
@given(seeds, fields)
def test_unit_inverse_property(seed, field):
    rng = random.Random(seed)
    S = SuperRing(field, 0, 4)
    u = random_super(rng, S, terms=5, parity=0) + S.constant(field.random_element(rng, 5, nonzero=True))
    if not u.bar():
        return
    assert super_mul(u, unit_inverse(u)) == S.one()
    assert super_mul(unit_inverse(u), u) == S.one()


def test_gf2_signs_collapse():
    S = SuperRing(GF(2), 0, 2)
    assert super_mul(S.y(2), S.y(1)) == super_mul(S.y(1), S.y(2))
