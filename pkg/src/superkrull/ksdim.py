"""Krull super-dimension r|s of a presented superalgebra K[X | Y]/J.

The even part is Kdim of K[X]/J-bar.  For the odd part, y_i (i in I) form a
system of odd parameters exactly when the contraction ideal
q_I = {a in K[X] : a y^I in J} has the same dimension as J-bar: the even
products y^L are nilpotent, so K[X] -> R_0/Ann(y^I) is onto up to nilpotents
and Kdim(R_0/Ann(y^I)) = Kdim(K[X]/q_I).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import HomogeneityError, ScopeError, ZeroAlgebraError
from .groebner import (
    EMPTY,
    ModuleBasis,
    ModuleOrder,
    buchberger,
    contraction_ideal,
    ideal_dimension,
    module_buchberger,
)
from .polyarith import MonomialOrder
from .superpoly import (
    SuperPolynomial,
    SuperRing,
    indices_of,
    mask_from_indices,
    superideal_module_generators,
)


@dataclass(frozen=True)
class SuperPresentation:
    """A = K[x1..xm | y1..yn] / (relations), relations nonzero and homogeneous."""

    ring: SuperRing
    relations: tuple = ()

    def __post_init__(self):
        rels = tuple(self.relations)
        object.__setattr__(self, "relations", rels)
        for g in rels:
            self.ring._check(g.ring)
            if not g:
                raise ValueError("zero relation")
            if not g.is_homogeneous():
                raise HomogeneityError(f"relation {g} is not homogeneous (found even and odd terms)")

    @property
    def m(self) -> int:
        return self.ring.m

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def field(self):
        return self.ring.field

    def bar_generators(self) -> list:
        return [g.bar() for g in self.relations if g.bar()]

    def is_generic_scope(self) -> bool:
        """True when J-bar = 0, i.e. every relation lies in the odd-generated ideal."""
        return not self.bar_generators()

    def module_generators(self) -> list:
        return superideal_module_generators(self.relations)

    def with_order(self, order: MonomialOrder) -> "SuperPresentation":
        R = self.ring.with_order(order)
        return SuperPresentation(R, tuple(type(g)(R, g.terms) for g in self.relations))

    def to_text(self) -> str:
        R = self.ring
        lines = [
            f"field {R.field}",
            "even " + " ".join(R.even_names) if R.even_names else "even",
            "odd " + " ".join(R.odd_names) if R.odd_names else "odd",
        ]
        if self.relations:
            lines.append("relations:")
            lines.extend(f"  {g}" for g in self.relations)
        return "\n".join(lines) + "\n"

    __str__ = to_text


@dataclass(frozen=True)
class SuperDim:
    even: int
    odd: int
    witness: int = 0

    @property
    def witness_indices(self) -> list:
        return list(indices_of(self.witness))

    def __str__(self):
        return f"{self.even}|{self.odd}"

    def to_dict(self) -> dict:
        return {"even": self.even, "odd": self.odd, "witness": self.witness_indices}


class _Context:
    """Per-call cache of the module basis of J and its contraction ideals."""

    def __init__(self, P: SuperPresentation, order: MonomialOrder | None):
        self.P = P
        self.order = order or P.ring.order
        self._basis = None
        self._even = None
        self._q: dict = {}

    def even_dim(self) -> int:
        if self._even is None:
            R = self.P.ring.even_ring
            B = buchberger(self.P.bar_generators(), self.order, ring=R)
            d = ideal_dimension(B)
            if d is EMPTY:
                raise ZeroAlgebraError("the presented superalgebra is zero (1 lies in J)")
            self._even = d
        return self._even

    def basis(self) -> ModuleBasis:
        if self._basis is None:
            P = self.P
            self._basis = module_buchberger(
                P.module_generators(), ModuleOrder(self.order), ring=P.ring.even_ring, n=P.n
            )
        return self._basis

    def q(self, mask: int):
        if mask not in self._q:
            self._q[mask] = contraction_ideal(self.basis(), mask)
        return self._q[mask]

    def is_parameter_system(self, mask: int) -> bool:
        return ideal_dimension(self.q(mask)) == self.even_dim()


def _mask(I) -> int:
    return I if isinstance(I, int) else mask_from_indices(I)


def even_dim(P: SuperPresentation, order: MonomialOrder | None = None) -> int:
    return _Context(P, order).even_dim()


def is_odd_parameter_system(P: SuperPresentation, I, order: MonomialOrder | None = None) -> bool:
    mask = _mask(I)
    if mask & ~P.ring.full_mask:
        raise ValueError(f"index set {indices_of(mask)} exceeds 1..{P.n}")
    return _Context(P, order).is_parameter_system(mask)


def _search(ctx: _Context) -> tuple:
    """Level-wise search: a set is tried only if all its one-smaller subsets passed.

    Sound because Ann(y^I) grows with I, so a failing set has no passing superset.
    """
    n = ctx.P.n
    ctx.even_dim()
    level = [0]
    best = (0, 0)
    for size in range(1, n + 1):
        passed = set(level)
        candidates = set()
        for base in level:
            for i in range(n):
                cand = base | (1 << i)
                if cand == base:
                    continue
                if all(cand & ~(1 << j) in passed for j in range(n) if cand >> j & 1):
                    candidates.add(cand)
        level = [c for c in sorted(candidates, key=indices_of) if ctx.is_parameter_system(c)]
        if not level:
            break
        best = (size, level[0])
    return best


def odd_dim(P: SuperPresentation, order: MonomialOrder | None = None) -> tuple:
    """(s, witness mask): the largest odd-parameter subset of {y_i}, lexicographically first."""
    return _search(_Context(P, order))


def ksdim(P: SuperPresentation, order: MonomialOrder | None = None) -> SuperDim:
    ctx = _Context(P, order)
    r = ctx.even_dim()
    s, witness = _search(ctx)
    return SuperDim(r, s, witness)


def verify_noether_witness(P: SuperPresentation, I, order: MonomialOrder | None = None) -> bool:
    """True iff B[Y_I] -> A is injective, i.e. q_I' = 0 for every I' within I."""
    if not P.is_generic_scope():
        raise ScopeError("J-bar != 0: the even polynomial ring does not embed in A")
    mask = _mask(I)
    ctx = _Context(P, order)
    sub = mask
    while True:
        if not ctx.q(sub).is_zero():
            return False
        if sub == 0:
            return True
        sub = (sub - 1) & mask


def quotient_presentation(P: SuperPresentation, extra: Sequence[SuperPolynomial]) -> SuperPresentation:
    return SuperPresentation(P.ring, P.relations + tuple(extra))


def supermodule_sdim(
    P: SuperPresentation, ann_gens: Sequence[SuperPolynomial], order: MonomialOrder | None = None
) -> SuperDim:
    """sdim(M) = Ksdim(A/Ann(M)) for caller-supplied generators of Ann(M)."""
    return ksdim(quotient_presentation(P, ann_gens), order)


def free_presentation(ring: SuperRing) -> SuperPresentation:
    return SuperPresentation(ring, ())


def random_presentation(
    rng,
    field=None,
    max_m: int = 2,
    max_n: int = 4,
    max_relations: int = 3,
    coeff_degree: int = 2,
    max_terms: int = 3,
) -> SuperPresentation:
    """A random presentation with J-bar = 0: every term carries at least one odd variable.

    Each relation is homogeneous of a randomly chosen parity, with up to
    ``max_terms`` terms whose K[X]-coefficients have degree <= ``coeff_degree``.
    """
    from .polyarith import QQ

    field = field or QQ
    m = rng.randint(0, max_m)
    n = rng.randint(1, max_n)
    R = SuperRing(field, m, n)
    exps = [e for e in _exponents(m, coeff_degree)]
    rels = []
    for _ in range(rng.randint(1, max_relations)):
        while True:
            par = rng.randint(0, 1)
            masks = [s for s in range(1, 1 << n) if bin(s).count("1") % 2 == par] or [1]
            terms = {}
            for _ in range(rng.randint(1, max_terms)):
                key = (rng.choice(exps), rng.choice(masks))
                terms[key] = field.random_element(rng, 3, nonzero=True)
            g = SuperPolynomial(R, terms)
            if g:
                rels.append(g)
                break
    return SuperPresentation(R, tuple(rels))


def _exponents(m: int, d: int):
    if m == 0:
        yield ()
        return
    for k in range(d + 1):
        for rest in _exponents(m - 1, d - k):
            yield (k,) + rest
