"""Kaehler superdifferentials of B = K[X | Y]/J and the even derivation d0.

Omega_{B/K} is F/N with F free on dX_1..dX_m (even) and dY_1..dY_n (odd)
and N generated by the d0 g_k.  Elements of F are written with coefficients
on the left; the right action is m*b = (-1)^{|b||m|} b*m, and d0 obeys
d0(fg) = f d0(g) + d0(f) g.

At the generic point F = K(X)[Y]/J' everything is finite-dimensional over
K(X) and is decided by fraction-free elimination.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ScopeError
from .ksdim import SuperPresentation, odd_dim, quotient_presentation
from .linalg import Echelon
from .superpoly import (
    SuperPolynomial,
    SuperRing,
    indices_of,
    popcount,
    super_mul,
    superideal_module_generators,
)


class FormVector:
    """sum_j c_j dZ_j with Z = (X_1..X_m, Y_1..Y_n) and c_j in K[X | Y]."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SuperRing, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != ring.m + ring.n:
            raise ValueError("one coefficient per generator dX_i, dY_j is required")
        self.ring = ring
        self.coeffs = coeffs

    @classmethod
    def zero(cls, ring: SuperRing) -> "FormVector":
        return cls(ring, [ring.zero()] * (ring.m + ring.n))

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, FormVector) and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "FormVector") -> "FormVector":
        return FormVector(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "FormVector") -> "FormVector":
        return FormVector(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return FormVector(self.ring, [-a for a in self.coeffs])

    def is_odd_generator(self, j: int) -> bool:
        return j >= self.ring.m

    def homogeneous_parts(self) -> dict:
        """{parity: FormVector}, parity of c dZ being |c| + |dZ|."""
        parts: dict = {}
        for j, c in enumerate(self.coeffs):
            shift = 1 if self.is_odd_generator(j) else 0
            for (e, mask), v in c.terms.items():
                par = (popcount(mask) + shift) % 2
                block = parts.setdefault(par, [dict() for _ in self.coeffs])
                block[j][(e, mask)] = v
        return {
            par: FormVector(self.ring, [SuperPolynomial(self.ring, t) for t in blocks])
            for par, blocks in parts.items()
        }

    def parity(self) -> int | None:
        """0 or 1 for homogeneous nonzero forms, None otherwise."""
        parts = self.homogeneous_parts()
        return next(iter(parts)) if len(parts) == 1 else None

    def left_mul(self, f: SuperPolynomial) -> "FormVector":
        return FormVector(self.ring, [super_mul(f, c) for c in self.coeffs])

    def right_mul(self, g: SuperPolynomial) -> "FormVector":
        """self * g = sum over homogeneous parts of (-1)^{|g||self|} g * self."""
        out = FormVector.zero(self.ring)
        gparts = g.homogeneous_parts()
        for wpar, w in self.homogeneous_parts().items():
            for gpar, gp in enumerate(gparts):
                term = w.left_mul(gp)
                out = out + (-term if gpar * wpar % 2 else term)
        return out

    def generator_names(self) -> list:
        R = self.ring
        return [f"d{nm}" for nm in R.even_names] + [f"d{nm}" for nm in R.odd_names]

    def __str__(self):
        pieces = []
        for name, c in zip(self.generator_names(), self.coeffs):
            if not c:
                continue
            text = str(c)
            if len(c.terms) > 1:
                text = f"({text})"
            if text == "1":
                pieces.append(name)
            elif text == "-1":
                pieces.append(f"-{name}")
            else:
                pieces.append(f"{text}*{name}")
        if not pieces:
            return "0"
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"FormVector({self})"


def _ring_of(P) -> SuperRing:
    return P.ring if isinstance(P, SuperPresentation) else P


def d0_apply(P, f: SuperPolynomial) -> FormVector:
    """d0 of f, term by term: d0(x^a y^I) = x^a d0(y^I) + y^I d0(x^a).

    For I = i_1 < ... < i_k, d0(y^I) = sum_j (-1)^(k-j) y^(I minus i_j) dY_(i_j).
    """
    R = _ring_of(P)
    R._check(f.ring)
    m = R.m
    blocks = [dict() for _ in range(m + R.n)]
    norm = R.field.norm
    for (e, mask), c in f.terms.items():
        for i, a in enumerate(e):
            if a:
                de = e[:i] + (a - 1,) + e[i + 1 :]
                _acc(blocks[i], (de, mask), norm(c * a))
        idx = indices_of(mask)
        k = len(idx)
        for j, i in enumerate(idx, start=1):
            sign = -1 if (k - j) % 2 else 1
            _acc(blocks[m + i - 1], (e, mask & ~(1 << (i - 1))), norm(c * sign))
    return FormVector(R, [SuperPolynomial(R, {t: v for t, v in b.items() if v}) for b in blocks])


def _acc(block: dict, key, value) -> None:
    block[key] = block.get(key, 0) + value


@dataclass(frozen=True)
class OmegaPresentation:
    ring: SuperRing
    relations: tuple

    @property
    def even_gens(self) -> list:
        return [f"d{nm}" for nm in self.ring.even_names]

    @property
    def odd_gens(self) -> list:
        return [f"d{nm}" for nm in self.ring.odd_names]

    def to_dict(self) -> dict:
        return {
            "generators": [{"name": g, "parity": "even"} for g in self.even_gens]
            + [{"name": g, "parity": "odd"} for g in self.odd_gens],
            "relations": [
                {"form": str(r), "parity": {0: "even", 1: "odd", None: "zero"}[r.parity()]}
                for r in self.relations
            ],
        }


def omega_presentation(P: SuperPresentation) -> OmegaPresentation:
    return OmegaPresentation(P.ring, tuple(d0_apply(P, g) for g in P.relations))


@dataclass(frozen=True)
class GenericRank:
    p: int
    q: int
    free: bool
    omega_dim: int = 0
    algebra_dim: int = 0

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "free": self.free,
            "omega_dim": self.omega_dim,
            "algebra_dim": self.algebra_dim,
        }


def _require_scope(P: SuperPresentation) -> None:
    if not P.is_generic_scope():
        raise ScopeError("J-bar != 0: generic-point operations unavailable")


def _col_key(col):
    j, mask = col
    return (j, popcount(mask), indices_of(mask))


def _exterior_row(f: SuperPolynomial, block: int = 0) -> dict:
    R = f.ring.even_ring
    row: dict = {}
    for (e, mask), c in f.terms.items():
        row.setdefault((block, mask), {})[e] = c
    return {k: R(t) for k, t in row.items()}


def _form_row(w: FormVector) -> dict:
    row = {}
    for j, c in enumerate(w.coeffs):
        row.update(_exterior_row(c, j))
    return row


class _GenericOmega:
    """Omega (x) F over K(X) as F^(m+n) modulo J' in every block and the multiples of d0 g."""

    def __init__(self, P: SuperPresentation):
        self.P = P
        R = P.ring
        self.blocks = R.m + R.n
        ideal = Echelon(R.even_ring, _col_key)
        for v in superideal_module_generators(P.relations):
            ideal.add(_exterior_row(v.assemble(R)))
        self.ideal_rank = ideal.rank
        self.algebra_dim = (1 << R.n) - ideal.rank
        self.echelon = Echelon(R.even_ring, _col_key)
        base_rows = [ideal.rows[c] for c in ideal.pivots()]
        for j in range(self.blocks):
            for row in base_rows:
                self.echelon.add({(j, mask): c for (_, mask), c in row.items()})

    def add_relations(self, gens) -> int:
        """Add the F-span of the d0 g for g in gens; return the increase in dimension."""
        R = self.P.ring
        before = self.echelon.rank
        for g in gens:
            dg = d0_apply(R, g)
            for L in range(R.full_mask + 1):
                w = dg.left_mul(R.y_mono(L))
                if w:
                    self.echelon.add(_form_row(w))
        return self.echelon.rank - before

    @property
    def dimension(self) -> int:
        """dim over K(X) of the current quotient of F^(m+n)."""
        return self.blocks * (1 << self.P.n) - self.echelon.rank


def _residue_ranks(P: SuperPresentation) -> tuple:
    """Ranks of the even and odd parts of the relations d0 g at Y = 0."""
    R = P.ring
    m = R.m
    even = Echelon(R.even_ring)
    odd = Echelon(R.even_ring)
    for g in P.relations:
        dg = d0_apply(R, g)
        row = {j: c.coefficient(0) for j, c in enumerate(dg.coeffs)}
        even.add({j: c for j, c in row.items() if j < m and c})
        odd.add({j: c for j, c in row.items() if j >= m and c})
    return even.rank, odd.rank


def omega_generic_rank(P: SuperPresentation) -> GenericRank:
    """p|q = minimal number of generators of Omega (x) F; free iff the dimension count matches."""
    _require_scope(P)
    er, orank = _residue_ranks(P)
    p, q = P.m - er, P.n - orank
    om = _GenericOmega(P)
    om.add_relations(P.relations)
    dim = om.dimension
    return GenericRank(p, q, dim == (p + q) * om.algebra_dim, dim, om.algebra_dim)


def regularity_via_omega(P: SuperPresentation) -> bool:
    """Omega (x) F free of rank m | Ksdim_1(P)."""
    rank = omega_generic_rank(P)
    return rank.free and rank.p == P.m and rank.q == odd_dim(P)[0]


@dataclass(frozen=True)
class SecondSequenceCount:
    image_dim: int
    quotient_omega_dim: int
    restricted_omega_dim: int

    @property
    def balanced(self) -> bool:
        return self.image_dim + self.quotient_omega_dim == self.restricted_omega_dim


def second_sequence_counts(P: SuperPresentation, extra) -> SecondSequenceCount:
    """Dimensions in I/I^2 -> Omega_B (x) C -> Omega_C -> 0 at the generic point of C."""
    C = quotient_presentation(P, extra)
    _require_scope(P)
    _require_scope(C)
    restricted = _GenericOmega(C)
    restricted.add_relations(P.relations)
    restricted_dim = restricted.dimension
    image = restricted.add_relations(extra)
    own = _GenericOmega(C)
    own.add_relations(C.relations)
    return SecondSequenceCount(image, own.dimension, restricted_dim)


def second_sequence_check(P: SuperPresentation, extra) -> bool:
    return second_sequence_counts(P, extra).balanced
