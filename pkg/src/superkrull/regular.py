"""Regularity of A = K[X | Y]/J when J-bar = 0, so that A-bar = K[X].

A is regular iff (ii) I_A/I_A^2 is a projective K[X]-module and (iii) the
canonical surjection from the exterior powers of I_A/I_A^2 onto the graded
pieces I_A^d/I_A^(d+1) is injective in every degree.  Clause (i), regularity
of A-bar, holds automatically in this scope.

Graded pieces are computed as quotients of the free K[X]-module on
{y^I : |I| = d}: truncate the closure of J modulo I_A^(d+1) and eliminate the
positions of odd degree below d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import InvariantViolation, ScopeError
from .groebner import (
    ModuleBasis,
    ModuleOrder,
    buchberger,
    eliminate_positions,
    module_buchberger,
    module_membership,
)
from .ksdim import SuperPresentation
from .linalg import Echelon, determinant
from .polyarith import MonomialOrder
from .superpoly import (
    ModuleVector,
    indices_of,
    koszul_sign,
    popcount,
    superideal_module_generators,
)

REGULAR, NOT_REGULAR, UNKNOWN = "regular", "not_regular", "unknown-out-of-scope"
CLAUSE_I, CLAUSE_II, CLAUSE_III = "(i)", "(ii)", "(iii)"


def _require_scope(P: SuperPresentation) -> None:
    if not P.is_generic_scope():
        raise ScopeError("J-bar != 0: regularity is only decided when J-bar = 0")


def _masks_of_degree(n: int, d: int) -> list:
    return [sum(1 << (i - 1) for i in c) for c in combinations(range(1, n + 1), d)]


def _col_key(mask: int):
    return (popcount(mask), indices_of(mask))


@dataclass(frozen=True)
class GradedPiecePresentation:
    """K[X]-presentation of I_A^d/I_A^(d+1): free on ``generators`` modulo ``relations``."""

    degree: int
    generators: tuple
    relations: ModuleBasis

    @property
    def rank(self) -> int:
        """Rank over K(X) of the relation module."""
        ring = self.relations.ring
        return Echelon(ring, _col_key).extend(v.coords for v in self.relations).rank

    def to_dict(self) -> dict:
        R = self.relations.ring
        return {
            "degree": self.degree,
            "generators": [list(indices_of(mk)) for mk in self.generators],
            "relations": [
                {",".join(map(str, indices_of(mk))): str(c) for mk, c in sorted(v.coords.items(), key=lambda t: _col_key(t[0]))}
                for v in self.relations
            ],
            "ring": list(R.names),
        }


def graded_piece(P: SuperPresentation, d: int, order: MonomialOrder | None = None) -> GradedPiecePresentation:
    """Presentation of the degree-d piece of the I_A-adic associated graded ring."""
    _require_scope(P)
    n = P.n
    if not 0 <= d <= n:
        raise ValueError(f"degree {d} outside 0..{n}")
    ring = P.ring.even_ring
    mono = order or P.ring.order
    truncated = []
    for v in superideal_module_generators(P.relations):
        coords = {mk: c for mk, c in v.coords.items() if popcount(mk) <= d}
        if coords:
            truncated.append(ModuleVector(ring, n, coords))
    keep = set(_masks_of_degree(n, d))
    rels = eliminate_positions(truncated, keep, mono)
    basis = module_buchberger(rels, ModuleOrder(mono), ring=ring, n=n)
    return GradedPiecePresentation(d, tuple(sorted(keep, key=_col_key)), basis)


def ia_mod_ia2(P: SuperPresentation, order: MonomialOrder | None = None) -> GradedPiecePresentation:
    """I_A/I_A^2 as a K[X]-module on the classes of y_1..y_n."""
    return graded_piece(P, 1, order)


@dataclass(frozen=True)
class ProjectivityReport:
    projective: bool
    rank: int
    fitting_ideal: tuple

    def to_dict(self) -> dict:
        return {"projective": self.projective, "relation_rank": self.rank, "fitting_ideal": list(self.fitting_ideal)}


def projectivity(piece: GradedPiecePresentation) -> ProjectivityReport:
    """K[X]^k / R is projective iff the rho x rho minors of R generate the unit ideal.

    rho is the K(X)-rank of R; the minors generate the Fitting ideal
    Fitt_{k - rho}, and Fitt_{k - rho - 1} = 0 holds automatically.  Over a
    polynomial ring projective modules are free.
    """
    ring = piece.relations.ring
    cols = list(piece.generators)
    rows = [[v.coords.get(c, ring.zero()) for c in cols] for v in piece.relations]
    rho = piece.rank
    if rho == 0:
        return ProjectivityReport(True, 0, ("1",))
    minors = []
    for rsel in combinations(range(len(rows)), rho):
        for csel in combinations(range(len(cols)), rho):
            det = determinant(ring, [[rows[r][c] for c in csel] for r in rsel])
            if det.is_zero():
                continue
            if det.is_constant():
                return ProjectivityReport(True, rho, ("1",))
            minors.append(det)
    B = buchberger(minors, ring.order, ring=ring)
    return ProjectivityReport(B.is_unit(), rho, tuple(B.to_strings()))


def _wedge_relations(P: SuperPresentation, degree_one: GradedPiecePresentation, d: int) -> list:
    """{r * y^L : r a relation of I_A/I_A^2, |L| = d - 1}, the relations of the d-th exterior power."""
    ring = P.ring.even_ring
    out = []
    for r in degree_one.relations:
        for L in _masks_of_degree(P.n, d - 1):
            coords: dict = {}
            for i_mask, c in r.coords.items():
                if i_mask & L:
                    continue
                coords[i_mask | L] = c.scale(koszul_sign(i_mask, L))
            if coords:
                out.append(ModuleVector(ring, P.n, coords))
    return out


def _closure_rank_below(P: SuperPresentation, k: int) -> int:
    """K(X)-rank of J' projected onto the components y^I with |I| < k."""
    ring = P.ring.even_ring
    ech = Echelon(ring, _col_key)
    for v in superideal_module_generators(P.relations):
        row = {mk: c for mk, c in v.coords.items() if popcount(mk) < k}
        if row:
            ech.add(row)
    return ech.rank


def generic_graded_dims(P: SuperPresentation) -> list:
    """dim over K(X) of I^d/I^(d+1) of F = K(X)[Y]/J', for d = 0..n."""
    _require_scope(P)
    n = P.n
    rho = [_closure_rank_below(P, k) for k in range(n + 2)]
    return [comb(n, d) - (rho[d + 1] - rho[d]) for d in range(n + 1)]


@dataclass(frozen=True)
class LambdaResult:
    degree: int
    injective: bool
    generic_dim: int
    exterior_dim: int
    witness: str | None = None


def _lambda(P: SuperPresentation, d: int, degree_one: GradedPiecePresentation, dims: list, order) -> LambdaResult:
    n = P.n
    rank1 = dims[1] if n >= 1 else 0
    if d <= 0 or d > n:
        return LambdaResult(d, True, 1 if d == 0 else 0, 1 if d == 0 else 0)
    by_dims = dims[d] == comb(rank1, d)
    piece = degree_one if d == 1 else graded_piece(P, d, order)
    wedge = _wedge_relations(P, degree_one, d) if d > 1 else list(degree_one.relations)
    mono = order or P.ring.order
    witness = None
    if wedge:
        WB = module_buchberger(wedge, ModuleOrder(mono), ring=P.ring.even_ring, n=n)
        missing = [v for v in piece.relations if not module_membership(v, WB)]
    else:
        missing = list(piece.relations)
    if missing:
        witness = str(missing[0].assemble(P.ring))
    by_membership = not missing
    if by_dims != by_membership:
        raise InvariantViolation(
            f"lambda check disagrees in degree {d}: dimension count {by_dims}, membership {by_membership}"
        )
    return LambdaResult(d, by_dims, dims[d], comb(rank1, d), witness)


def lambda_check(P: SuperPresentation, d: int, order: MonomialOrder | None = None) -> bool:
    """Injectivity of the d-th exterior power of I_A/I_A^2 onto I_A^d/I_A^(d+1).

    Decided twice: by comparing K(X)-dimensions, which suffices because the
    source is projective hence torsion free, and by module membership of the
    relations of the graded piece in those of the exterior power.
    """
    _require_scope(P)
    degree_one = ia_mod_ia2(P, order)
    if not projectivity(degree_one).projective:
        raise ScopeError("I_A/I_A^2 is not projective; its exterior powers are not presented here")
    return _lambda(P, d, degree_one, generic_graded_dims(P), order).injective


@dataclass(frozen=True)
class RegularityVerdict:
    verdict: str
    failed_clause: str | None = None
    certificate: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.failed_clause is not None) != (self.verdict == NOT_REGULAR):
            raise InvariantViolation("failed_clause must be present exactly for not_regular")

    @property
    def is_regular(self) -> bool:
        return self.verdict == REGULAR

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "failed_clause": self.failed_clause, "certificate": self.certificate}


def is_regular_global(P: SuperPresentation, order: MonomialOrder | None = None) -> RegularityVerdict:
    if not P.is_generic_scope():
        return RegularityVerdict(
            UNKNOWN, None, {"reason": "J-bar != 0: regularity of A-bar is not decided"}
        )
    degree_one = ia_mod_ia2(P, order)
    proj = projectivity(degree_one)
    if not proj.projective:
        return RegularityVerdict(
            NOT_REGULAR, CLAUSE_II, {"ia_mod_ia2": degree_one.to_dict(), **proj.to_dict()}
        )
    dims = generic_graded_dims(P)
    for d in range(2, P.n + 1):
        res = _lambda(P, d, degree_one, dims, order)
        if not res.injective:
            return RegularityVerdict(
                NOT_REGULAR,
                CLAUSE_III,
                {
                    "degree": d,
                    "graded_dim": res.generic_dim,
                    "exterior_dim": res.exterior_dim,
                    "relation_not_in_exterior": res.witness,
                },
            )
    return RegularityVerdict(REGULAR, None, {"rank": dims[1] if P.n else 0})


def minimal_odd_generators(P: SuperPresentation) -> int:
    """Mask S such that the classes of y_i (i in S) minimally generate F_1 over F_0."""
    _require_scope(P)
    ring = P.ring.even_ring
    ech = Echelon(ring, _col_key)
    for v in superideal_module_generators(P.relations):
        row = {mk: c for mk, c in v.coords.items() if popcount(mk) == 1}
        if row:
            ech.add(row)
    pivots = set(ech.rows)
    return sum(1 << i for i in range(P.n) if (1 << i) not in pivots)


def generic_nonsingular(P: SuperPresentation) -> bool:
    """Regularity of F = K(X)[Y]/J' at the generic point.

    With z_i (i in S) a minimal generating set of F_1, Ann(z^S) always
    contains F_1^2 and equals it iff z^S != 0, because every element of F_0
    outside F_1^2 is a unit.
    """
    S = minimal_odd_generators(P)
    ring = P.ring.even_ring
    ech = Echelon(ring, _col_key)
    for v in superideal_module_generators(P.relations):
        ech.add(v.coords)
    return not ech.contains({S: ring.one()})
