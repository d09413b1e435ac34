import random

from hypothesis import given, settings

from superkrull import QQ, GF, PolyRing, SuperRing
from superkrull.groebner import (
    EMPTY,
    ModuleOrder,
    buchberger,
    contraction_ideal,
    ideal_dimension,
    module_buchberger,
    module_membership,
    normal_form,
)
from superkrull.onerel import extremal_set_and_index
from superkrull.superpoly import ModuleVector, superideal_module_generators, to_vector

from conftest import fields, monomial_antichains, random_poly, seeds

R = PolyRing(QQ, ["x", "y"])
x, y = R.gens()


def test_buchberger_examples():
    assert buchberger([x]).polys == (x,)
    assert sorted(map(str, buchberger([x + y, y]))) == ["x", "y"]
    B = buchberger([x**2 - y, x**3 - x])
    assert normal_form(x * y - x, B).is_zero()


def test_normal_form_examples():
    assert normal_form(x, buchberger([x])).is_zero()
    assert normal_form(y, buchberger([x])) == y
    assert normal_form(x**2 * y - x**2, buchberger([x * y - x])).is_zero()


def test_unit_and_zero_ideals():
    assert buchberger([x, x + 1]).is_unit()
    assert buchberger([], ring=R).is_zero()
    assert ideal_dimension(buchberger([x, x + 1])) is EMPTY


def test_ideal_dimension_examples():
    assert ideal_dimension(buchberger([], ring=R)) == 2
    assert ideal_dimension(buchberger([x * y])) == 1
    S = PolyRing(QQ, ["x", "y", "z"])
    assert ideal_dimension(buchberger([S("x*y"), S("x*z")])) == 2
    assert ideal_dimension(buchberger([S("x - y^2"), S("z^3 - x")])) == 1


def _odd(n, m=1):
    return SuperRing(QQ, m, n)


def test_module_basis_examples():
    E = R
    e1 = ModuleVector.unit(E, 1, 0b1)
    B = module_buchberger([e1])
    assert list(B) == [e1]
    gens = [ModuleVector(E, 1, {0: x}), ModuleVector(E, 1, {0: y})]
    assert set(module_buchberger(gens)) == set(gens)


def test_module_membership_examples():
    S = _odd(2)
    B = module_buchberger(superideal_module_generators([S("y1")]))
    assert module_membership(to_vector(S("x1*y1*y2")), B)
    assert module_membership(ModuleVector(S.even_ring, 2, {}), B)

    T = SuperRing(QQ, 0, 2)
    C = module_buchberger(superideal_module_generators([T("y1*y2")]))
    assert not module_membership(to_vector(T("y1")), C)
    assert module_membership(to_vector(T("y1*y2")), C)


def test_contraction_examples():
    S = _odd(1)
    B = module_buchberger(superideal_module_generators([S("x1*y1")]))
    assert contraction_ideal(B, 0b1).to_strings() == ["x1"]
    Z = module_buchberger([], ring=S.even_ring, n=1)
    assert contraction_ideal(Z, 0b1).is_zero()
    U = module_buchberger(superideal_module_generators([S("y1")]))
    assert contraction_ideal(U, 0b1).is_unit()


@settings(max_examples=120, deadline=None)
@given(seeds, fields)
def test_membership_soundness(seed, field):
    rng = random.Random(seed)
    S = PolyRing(field, ["x", "y", "z"])
    gens = [g for g in (random_poly(rng, S, 3, 2) for _ in range(rng.randint(1, 3))) if g]
    if not gens:
        return
    B = buchberger(gens)
    combo = S.zero()
    for g in gens:
        combo = combo + random_poly(rng, S, 3, 2) * g
    assert B.contains(combo)
    for g in gens:
        assert normal_form(g, B).is_zero()


@settings(max_examples=120, deadline=None)
@given(seeds, fields)
def test_reduced_basis_is_idempotent(seed, field):
    rng = random.Random(seed)
    S = PolyRing(field, ["x", "y", "z"])
    gens = [g for g in (random_poly(rng, S, 3, 2) for _ in range(3)) if g]
    if not gens:
        return
    B = buchberger(gens)
    assert buchberger(list(B.polys), ring=S) == B
    shuffled = list(gens)
    rng.shuffle(shuffled)
    assert buchberger(shuffled) == B
    f = random_poly(rng, S, 4, 3)
    r = normal_form(f, B)
    assert normal_form(r, B) == r


@settings(max_examples=60, deadline=None)
@given(seeds, fields)
def test_contraction_matches_direct_membership(seed, field):
    rng = random.Random(seed)
    S = SuperRing(field, 2, 3)
    E = S.even_ring
    rels = []
    for _ in range(rng.randint(1, 2)):
        mask = rng.randrange(1, 8)
        rels.append(S.term((0, 0), mask) * S.from_polynomial(random_poly(rng, E, 2, 1) + E.one()))
    B = module_buchberger(superideal_module_generators(rels), ModuleOrder(E.order), ring=E, n=3)
    mask = rng.randrange(0, 8)
    q = contraction_ideal(B, mask)
    for a in list(q.polys) + [random_poly(rng, E, 3, 2) for _ in range(3)]:
        direct = module_membership(ModuleVector(E, 3, {mask: a}), B)
        assert direct == q.contains(a)


def test_ideal_dimension_on_all_small_monomial_ideals():
    for nvars in (1, 2, 3):
        S = PolyRing(QQ, [f"x{i}" for i in range(nvars)])
        assert ideal_dimension(buchberger([], ring=S)) == nvars
        assert ideal_dimension(buchberger([S.one()])) is EMPTY
        for gens in monomial_antichains(nvars, 3):
            supports = [sum(1 << i for i, a in enumerate(e) if a) for e in gens]
            _, cover = extremal_set_and_index(supports)
            B = buchberger([S.monomial(e) for e in gens])
            assert ideal_dimension(B) == nvars - cover, gens
