import random

from hypothesis import given, settings

from superkrull import GF, QQ, SuperRing, ZeroAlgebraError, ksdim, odd_dim, even_dim
from superkrull.errors import HomogeneityError, ScopeError
from superkrull.ksdim import (
    SuperPresentation,
    free_presentation,
    is_odd_parameter_system,
    quotient_presentation,
    random_presentation,
    supermodule_sdim,
    verify_noether_witness,
)
from superkrull.oracle import oracle_odd_dim

from conftest import make, seeds, x1_annihilates


def test_even_dim_examples():
    assert even_dim(make(QQ, 2, 1)) == 2
    assert even_dim(x1_annihilates(2, 3, 1)) == 2
    assert even_dim(make(QQ, 1, 1, ["x1"])) == 0


def test_zero_algebra():
    try:
        ksdim(make(QQ, 1, 1, ["x1", "x1 + 1"]))
    except ZeroAlgebraError:
        pass
    else:
        assert False


def test_parameter_system_examples():
    assert is_odd_parameter_system(make(QQ, 1, 1), [1])
    assert not is_odd_parameter_system(make(QQ, 1, 1, ["x1*y1"]), [1])
    assert is_odd_parameter_system(x1_annihilates(1, 2, 1), [2])
    assert not is_odd_parameter_system(x1_annihilates(1, 2, 1), [1])
    assert is_odd_parameter_system(make(QQ, 1, 2), [])


def test_odd_dim_examples():
    assert odd_dim(make(QQ, 2, 3)) == (3, 0b111)
    assert odd_dim(x1_annihilates(2, 3, 1)) == (2, 0b110)
    C = quotient_presentation(x1_annihilates(2, 3, 1), [SuperRing(QQ, 2, 3)("x1")])
    assert odd_dim(C) == (3, 0b111)


def test_ksdim_examples():
    assert str(ksdim(make(QQ, 2, 3))) == "2|3"
    d = ksdim(x1_annihilates(2, 3, 1))
    assert (d.even, d.odd, d.witness_indices) == (2, 2, [2, 3])
    assert str(ksdim(make(QQ, 1, 2, ["y1*y2"]))) == "1|1"
    assert ksdim(make(QQ, 1, 2, ["y1*y2"])).to_dict() == {"even": 1, "odd": 1, "witness": [1]}


def test_noether_witness():
    assert verify_noether_witness(make(QQ, 2, 3), [1, 2, 3])
    assert verify_noether_witness(x1_annihilates(1, 2, 1), [2])
    assert not verify_noether_witness(x1_annihilates(1, 2, 1), [1])
    try:
        verify_noether_witness(make(QQ, 1, 1, ["x1"]), [1])
    except ScopeError:
        pass
    else:
        assert False


def test_quotient_presentation():
    P = make(QQ, 1, 2)
    Q = quotient_presentation(P, [P.ring("y1")])
    assert str(ksdim(Q)) == "1|1"
    try:
        quotient_presentation(P, [P.ring.zero()])
    except ValueError:
        pass
    else:
        assert False


def test_supermodule_sdim():
    P = x1_annihilates(2, 3, 1)
    assert supermodule_sdim(P, []) == ksdim(P)
    R = P.ring
    assert str(supermodule_sdim(P, [R.y(i) for i in range(1, 4)])) == "2|0"
    F = make(QQ, 1, 1)
    assert str(supermodule_sdim(F, [F.ring("x1")])) == "0|1"


def test_inhomogeneous_relation_rejected():
    R = SuperRing(QQ, 1, 1)
    try:
        SuperPresentation(R, (R("x1 + y1"),))
    except HomogeneityError:
        pass
    else:
        assert False


def test_quotient_can_raise_odd_dimension():
    for m, n, l in [(1, 2, 1), (2, 3, 1), (2, 3, 2), (3, 4, 2)]:
        A = x1_annihilates(m, n, l)
        C = quotient_presentation(A, [A.ring.x(1)])
        a, c = ksdim(A), ksdim(C)
        assert (a.even, a.odd) == (m, n - l)
        assert (c.even, c.odd) == (m - 1, n)
        assert c.odd > a.odd


def test_quotient_by_odd_generators():
    for t in range(5):
        P = make(QQ, 2, 4, [f"y{i}" for i in range(1, t + 1)])
        assert str(ksdim(P)) == f"2|{4 - t}"


def test_free_presentation_any_size():
    for m in range(3):
        for n in range(5):
            d = ksdim(free_presentation(SuperRing(GF(5), m, n)))
            assert (d.even, d.odd) == (m, n)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_search_agrees_with_exhaustive_definition(seed):
    rng = random.Random(seed)
    P = random_presentation(rng, max_n=3)
    s, witness = odd_dim(P)
    passing = [mk for mk in range(1 << P.n) if is_odd_parameter_system(P, mk)]
    assert s == max(bin(mk).count("1") for mk in passing)
    assert witness in passing
    for mk in passing:
        for j in range(P.n):
            assert mk & ~(1 << j) in passing


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_ksdim_matches_oracle(seed):
    P = random_presentation(random.Random(seed))
    assert ksdim(P).odd == oracle_odd_dim(P)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_relation_order_does_not_matter(seed):
    rng = random.Random(seed)
    P = random_presentation(rng)
    rels = list(P.relations)
    rng.shuffle(rels)
    Q = SuperPresentation(P.ring, tuple(rels))
    assert ksdim(P) == ksdim(Q)
