import random

import pytest
from hypothesis import strategies as st

from superkrull import QQ, GF, SuperRing, SuperPresentation, SuperPolynomial, parse_presentation
from superkrull.polyarith import PolyRing, Polynomial


def pres(text):
    return parse_presentation(text)


def make(field, even, odd, relations=()):
    """Presentation from variable counts/names and relation strings."""
    R = SuperRing(field, even, odd)
    return SuperPresentation(R, tuple(R(r) for r in relations))


def x1_annihilates(m, n, l, field=QQ):
    """J spanned by x1*y^I over all I meeting {1..l}; generated by x1*y1, ..., x1*yl."""
    return make(field, m, n, [f"x1*y{i}" for i in range(1, l + 1)])


def random_poly(rng, ring: PolyRing, terms=3, degree=2, bound=5):
    out = {}
    for _ in range(rng.randint(0, terms)):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, degree)):
            if ring.nvars:
                e[rng.randrange(ring.nvars)] += 1
        out[tuple(e)] = ring.field.random_element(rng, bound)
    return Polynomial.from_dict(ring, out)


def random_super(rng, ring: SuperRing, terms=3, degree=1, parity=None, bound=4):
    out = {}
    for _ in range(rng.randint(0, terms)):
        e = [0] * ring.m
        for _ in range(rng.randint(0, degree)):
            if ring.m:
                e[rng.randrange(ring.m)] += 1
        mask = rng.randrange(ring.full_mask + 1)
        if parity is not None and bin(mask).count("1") % 2 != parity:
            continue
        c = ring.field.random_element(rng, bound)
        if c:
            out[(tuple(e), mask)] = c
    return SuperPolynomial(ring, out)


fields = st.sampled_from([QQ, GF(2), GF(3), GF(101)])
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng():
    return random.Random(12345)


def monomial_antichains(nvars, max_degree):
    """Every nonempty antichain (under divisibility) of monomials of degree 1..max_degree."""
    from itertools import product

    monos = sorted(
        (e for e in product(range(max_degree + 1), repeat=nvars) if 1 <= sum(e) <= max_degree),
        key=lambda e: (sum(e), e),
    )

    def divides(a, b):
        return all(p <= q for p, q in zip(a, b))

    out = []

    def extend(start, chosen):
        if chosen:
            out.append(list(chosen))
        for k in range(start, len(monos)):
            e = monos[k]
            if any(divides(c, e) or divides(e, c) for c in chosen):
                continue
            chosen.append(e)
            extend(k + 1, chosen)
            chosen.pop()

    extend(0, [])
    return out


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
