import random

from hypothesis import given, settings

from superkrull import QQ, SuperPolynomial, SuperRing
from superkrull.errors import ScopeError
from superkrull.groebner import ModuleOrder, module_buchberger, module_membership
from superkrull.ksdim import SuperPresentation, random_presentation
from superkrull.oracle import exterior_span, max_free_product, oracle_membership, oracle_odd_dim
from superkrull.superpoly import superideal_module_generators, to_vector

from conftest import make, random_super, seeds, x1_annihilates


def test_span_examples():
    S = SuperRing(QQ, 0, 2)
    assert exterior_span(make(QQ, 0, 2, ["y1*y2"])).dimension == 1
    span = exterior_span(make(QQ, 0, 2, ["y1"]))
    assert span.dimension == 2
    assert oracle_membership(span, S("y1*y2"))
    assert exterior_span(make(QQ, 0, 2)).dimension == 0


def test_membership_examples():
    S = SuperRing(QQ, 0, 2)
    span = exterior_span(make(QQ, 0, 2, ["y1*y2"]))
    assert oracle_membership(span, S.zero())
    assert not oracle_membership(span, S("y1"))
    assert span.quotient_dimension() == 3


def test_odd_dim_examples():
    assert oracle_odd_dim(make(QQ, 0, 3)) == 3
    assert oracle_odd_dim(make(QQ, 0, 3, ["y1*y2 + y2*y3"])) == 2
    assert oracle_odd_dim(x1_annihilates(1, 2, 1)) == 1


def test_units_of_kx_are_invisible():
    P = make(QQ, 1, 2, ["x1*y1"])
    span = exterior_span(P)
    assert oracle_membership(span, P.ring("y1"))
    assert max_free_product(span) == (1, 0b10)


def test_scope():
    try:
        exterior_span(make(QQ, 1, 1, ["x1"]))
    except ScopeError:
        pass
    else:
        assert False


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_membership_agrees_with_module_groebner_over_units(seed):
    # with m = 0 the K(X)-span and the K[X]-module coincide
    rng = random.Random(seed)
    S = SuperRing(QQ, 0, 4)
    rels = []
    for _ in range(2):
        g = random_super(rng, S, 3, parity=rng.randint(0, 1))
        g = SuperPolynomial(S, {t: c for t, c in g.terms.items() if t[1]})
        if g:
            rels.append(g)
    if not rels:
        return
    P = SuperPresentation(S, tuple(rels))
    span = exterior_span(P)
    B = module_buchberger(superideal_module_generators(rels), ModuleOrder(S.even_ring.order), ring=S.even_ring, n=4)
    for _ in range(5):
        v = random_super(rng, S, 4)
        assert oracle_membership(span, v) == module_membership(to_vector(v), B)
    for g in rels:
        assert oracle_membership(span, g)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_generator_order_invariance(seed):
    rng = random.Random(seed)
    P = random_presentation(rng)
    rels = list(P.relations)
    rng.shuffle(rels)
    Q = SuperPresentation(P.ring, tuple(rels))
    a, b = exterior_span(P), exterior_span(Q)
    assert a.dimension == b.dimension
    assert max_free_product(a) == max_free_product(b)
