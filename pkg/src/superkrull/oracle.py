"""Brute-force ground truth on the 2^n-dimensional exterior module.

Localizing at the generic point turns K[X | Y]/J into the finite-dimensional
K(X)-algebra K(X)[Y]/J'.  Everything here is linear algebra on the span of
the products y^L * g inside that algebra; no Groebner machinery is used.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ScopeError
from .linalg import Echelon
from .superpoly import SuperPolynomial, SuperRing, indices_of, popcount, super_mul


def _column_key(mask: int):
    return (popcount(mask), indices_of(mask))


def _as_row(f: SuperPolynomial) -> dict:
    """Coefficients of f in the basis {y^I}, as polynomials in X."""
    R = f.ring.even_ring
    row: dict = {}
    for (e, mask), c in f.terms.items():
        row.setdefault(mask, {})[e] = c
    return {mask: R(t) for mask, t in row.items()}


class ExteriorSpan:
    """Row-reduced K(X)-span of a left ideal of the exterior algebra over K(X)."""

    def __init__(self, ring: SuperRing, echelon: Echelon):
        self.ring = ring
        self.echelon = echelon

    @property
    def dimension(self) -> int:
        return self.echelon.rank

    def contains(self, v) -> bool:
        return oracle_membership(self, v)

    def quotient_dimension(self) -> int:
        return (1 << self.ring.n) - self.dimension

    def rows(self) -> list:
        return [self.echelon.rows[c] for c in self.echelon.pivots()]


def left_ideal_span(ring: SuperRing, gens: Sequence[SuperPolynomial]) -> ExteriorSpan:
    """Span of {y^L * g}; for homogeneous generators this is the super-ideal they generate."""
    ech = Echelon(ring.even_ring, _column_key)
    for g in gens:
        ring._check(g.ring)
        for L in range(ring.full_mask + 1):
            prod = super_mul(ring.y_mono(L), g)
            if prod:
                ech.add(_as_row(prod))
    return ExteriorSpan(ring, ech)


def _require_generic_scope(P) -> None:
    if any(g.bar() for g in P.relations):
        raise ScopeError("J-bar != 0: generic-point operations unavailable")


def exterior_span(P) -> ExteriorSpan:
    """The localized super-ideal J' inside K(X)[Y]; requires J-bar = 0."""
    _require_generic_scope(P)
    return left_ideal_span(P.ring, P.relations)


def oracle_membership(S: ExteriorSpan, v) -> bool:
    if isinstance(v, SuperPolynomial):
        S.ring._check(v.ring)
        v = _as_row(v)
    elif isinstance(v, int):
        v = {v: S.ring.even_ring.one()}
    return S.echelon.contains(v)


def max_free_product(S: ExteriorSpan) -> tuple:
    """Largest |I| with y^I outside the span, and the lexicographically first such I."""
    R = S.ring
    one = R.even_ring.one()
    by_size: dict = {}
    for mask in range(R.full_mask + 1):
        by_size.setdefault(popcount(mask), []).append(mask)
    for size in range(R.n, -1, -1):
        for mask in sorted(by_size.get(size, []), key=indices_of):
            if not S.echelon.contains({mask: one}):
                return size, mask
    return 0, 0


def oracle_odd_dim(P) -> int:
    """max{|I| : y^I not in J'}, 0 when no nonempty product survives."""
    S = exterior_span(P)
    return max_free_product(S)[0]
