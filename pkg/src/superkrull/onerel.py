"""One-relation superalgebras B = K[X | Y]/(f).

Only the odd supports of f matter for most invariants: the exponent set, its
inclusion-minimal elements (the basement), and a minimum hitting set of the
basement (the extremal set, whose size is the index).  The exact odd
dimension is max{|L| : y^L not in Af}, decided over K(X) by linear algebra.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import InvariantViolation
from .oracle import left_ideal_span, max_free_product
from .polyarith import QQ, Field
from .superpoly import (
    SuperPolynomial,
    SuperRing,
    indices_of,
    koszul_sign,
    mask_from_indices,
    popcount,
    super_mul,
    unit_inverse,
)

T_FORMULA, ORACLE, BOUNDS_ONLY = "t<=2-formula", "oracle", "bounds-only"


def _mask_key(mask: int):
    return (popcount(mask), indices_of(mask))


def _as_mask(L) -> int:
    return L if isinstance(L, int) else mask_from_indices(L)


def exponent_set(f: SuperPolynomial) -> frozenset:
    """Exp(f): the odd supports carrying a nonzero K[X]-coefficient."""
    if not f:
        raise ValueError("f must be nonzero")
    support = frozenset(mask for (_, mask) in f.terms)
    if 0 in support:
        raise ValueError("f must lie in the odd-generated ideal (no purely even terms)")
    return support


def minimal_elements(masks) -> list:
    masks = sorted(set(masks), key=_mask_key)
    out = []
    for mk in masks:
        if not any(b & mk == b for b in out):
            out.append(mk)
    return out


def basement(f: SuperPolynomial) -> list:
    """Inclusion-minimal elements of Exp(f), sorted by size then lexicographically."""
    return minimal_elements(exponent_set(f))


def _check_antichain(masks: Sequence[int], s: int | None = None) -> None:
    if not masks:
        raise ValueError("basement must be nonempty")
    for mk in masks:
        if mk <= 0:
            raise ValueError("basement elements must be nonempty index sets")
        if s is not None and mk >> s:
            raise ValueError(f"basement element {list(indices_of(mk))} exceeds 1..{s}")
    for a, b in combinations(masks, 2):
        if a & b == a or a & b == b:
            raise ValueError(
                f"not an antichain: {list(indices_of(a))} and {list(indices_of(b))} are comparable"
            )


def extremal_set_and_index(basement_sets) -> tuple:
    """Lexicographically first minimum hitting set of the basement, and its size."""
    masks = [_as_mask(L) for L in basement_sets]
    if not masks:
        raise ValueError("basement must be nonempty")
    if any(mk <= 0 for mk in masks):
        raise ValueError("basement elements must be nonempty index sets")
    universe = indices_of(0 if not masks else _union(masks))
    for k in range(1, len(universe) + 1):
        for combo in combinations(universe, k):
            K = mask_from_indices(combo)
            if all(K & L for L in masks):
                return K, k
    raise InvariantViolation("no hitting set found")


def _union(masks) -> int:
    u = 0
    for mk in masks:
        u |= mk
    return u


def _resolve_s(f: SuperPolynomial, s: int | None) -> int:
    n = f.ring.n
    if s is None:
        return n
    if s < n and any(mask >> s for (_, mask) in f.terms):
        raise ValueError(f"f involves odd variables beyond s={s}")
    return s


def odd_dim_bounds(f: SuperPolynomial, s: int | None = None) -> tuple:
    """(s - ind(f), s - 1)."""
    s = _resolve_s(f, s)
    _, k = extremal_set_and_index(basement(f))
    return s - k, s - 1


def small_t_formula(basement_sets, s: int) -> int | None:
    """The closed form for bases with one or two elements; None when t >= 3."""
    masks = [_as_mask(L) for L in basement_sets]
    if len(masks) == 1:
        return s - 1
    if len(masks) == 2:
        a, b = masks
        if not a & b and popcount(a) >= 2 and popcount(b) >= 2:
            return s - 2
        return s - 1
    return None


def odd_dim_exact_small_t(f: SuperPolynomial, s: int | None = None) -> int | None:
    return small_t_formula(basement(f), _resolve_s(f, s))


def _embed(f: SuperPolynomial, s: int) -> SuperPolynomial:
    if s == f.ring.n:
        return f
    R = f.ring
    names = list(R.odd_names[:s]) + [f"y{i}" for i in range(R.n + 1, s + 1)]
    taken = set(R.even_names)
    names = [nm if nm not in taken else f"_y{i + 1}" for i, nm in enumerate(names)]
    S = SuperRing(R.field, R.even_names, names, R.order)
    return SuperPolynomial(S, dict(f.terms))


def scalarize(f: SuperPolynomial, rng: random.Random, bound: int = 10**6, attempts: int = 64) -> SuperPolynomial:
    """Substitute a random point for X, keeping every odd coefficient nonzero."""
    R = f.ring
    S = SuperRing(R.field, 0, R.odd_names)
    coeffs = {mask: f.coefficient(mask) for mask in exponent_set(f)}
    for _ in range(attempts):
        point = [R.field.random_element(rng, bound) for _ in range(R.m)]
        values = {mask: c.evaluate(point) for mask, c in coeffs.items()}
        if all(v != 0 for v in values.values()):
            return SuperPolynomial(S, {((), mask): v for mask, v in values.items()})
    raise InvariantViolation("could not find a point keeping all coefficients nonzero")


def onerel_odd_dim(
    f: SuperPolynomial, s: int | None = None, scalarization: str = "exact", seed: int = 0
) -> int:
    """max{|L| : y^L not in Af}, by exact linear algebra on the exterior algebra.

    ``scalarization="exact"`` keeps K[X] coefficients (fraction-free over
    K(X)); ``"random"`` first evaluates X at a random point, which is faster
    but only correct with high probability.
    """
    s = _resolve_s(f, s)
    exponent_set(f)
    g = _embed(f, s)
    if scalarization == "random" and g.ring.m:
        g = scalarize(g, random.Random(seed))
    elif scalarization not in ("exact", "random"):
        raise ValueError(f"unknown scalarization {scalarization!r}")
    span = left_ideal_span(g.ring, [g])
    return max_free_product(span)[0]


def reduced_form(f: SuperPolynomial, i: int) -> SuperPolynomial:
    """A generator g = y^{L_i} + h of Af with no term of h containing L_i."""
    base = basement(f)
    if not 0 <= i < len(base):
        raise IndexError(f"basement index {i} out of range 0..{len(base) - 1}")
    Li = base[i]
    R = f.ring
    p_terms: dict = {}
    for (e, mask), c in f.terms.items():
        if mask & Li == Li:
            rest = mask & ~Li
            p_terms[(e, rest)] = R.field.norm(c * koszul_sign(rest, Li))
    p = SuperPolynomial(R, p_terms)
    try:
        pinv = unit_inverse(p)
    except ValueError as exc:
        raise ValueError(f"cannot reduce in {list(indices_of(Li))}: {exc}") from None
    return super_mul(pinv, f)


@dataclass(frozen=True)
class OneRelReport:
    exponents: tuple
    basement: tuple
    extremal_set: int
    index: int
    lower_bound: int
    upper_bound: int
    exact_odd_dim: int | None
    method: str
    s: int
    observations: list | None = field(default=None)

    def to_dict(self) -> dict:
        out = {
            "s": self.s,
            "exponents": [list(indices_of(mk)) for mk in self.exponents],
            "basement": [list(indices_of(mk)) for mk in self.basement],
            "extremal_set": list(indices_of(self.extremal_set)),
            "index": self.index,
            "bounds": [self.lower_bound, self.upper_bound],
            "exact": self.exact_odd_dim,
            "method": self.method,
        }
        if self.observations is not None:
            out["observations"] = self.observations
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def analyze(f: SuperPolynomial, s: int | None = None, exact: bool = True) -> OneRelReport:
    """Full report; with ``exact`` the oracle value is cross-checked against the bounds."""
    s = _resolve_s(f, s)
    exps = tuple(sorted(exponent_set(f), key=_mask_key))
    base = basement(f)
    K, k = extremal_set_and_index(base)
    lo, hi = s - k, s - 1
    formula = small_t_formula(base, s)
    if exact:
        value, method = onerel_odd_dim(f, s), ORACLE
        if not lo <= value <= hi:
            raise InvariantViolation(f"odd dimension {value} outside [{lo}, {hi}]")
        if formula is not None and formula != value:
            raise InvariantViolation(f"t<=2 formula gives {formula}, oracle gives {value}")
    elif formula is not None:
        value, method = formula, T_FORMULA
    else:
        value, method = None, BOUNDS_ONLY
    return OneRelReport(exps, tuple(base), K, k, lo, hi, value, method, s)


def _random_superset(rng: random.Random, L: int, s: int, parity: int | None) -> int | None:
    free = [i for i in range(s) if not L >> i & 1]
    if not free:
        return None
    sizes = [k for k in range(1, len(free) + 1) if parity is None or k % 2 == 0]
    if not sizes:
        return None
    extra = rng.sample(free, rng.choice(sizes))
    return L | sum(1 << i for i in extra)


def basement_experiment(
    basement_sets, s: int, trials: int, seed: int, field: Field = QQ, max_extra: int = 4
) -> dict:
    """Sample f with a fixed basement and record the odd dimension of A/Af for each.

    Coefficients are random nonzero scalars; extra terms are strict supersets
    of basement elements, so the basement is unchanged.  When all basement
    elements have the same parity the samples are homogeneous.  Two or more
    distinct values in ``values`` show the basement alone does not determine
    the odd dimension.
    """
    masks = sorted((_as_mask(L) for L in basement_sets), key=_mask_key)
    _check_antichain(masks, s)
    if trials < 0:
        raise ValueError("trials must be non-negative")
    parities = {popcount(mk) % 2 for mk in masks}
    parity = parities.pop() if len(parities) == 1 else None
    R = SuperRing(field, 0, s)
    rng = random.Random(seed)
    observations = []
    for trial in range(trials):
        terms = {((), mk): field.random_element(rng, 9, nonzero=True) for mk in masks}
        for _ in range(rng.randint(0, max_extra)):
            sup = _random_superset(rng, rng.choice(masks), s, parity)
            if sup is not None:
                terms[((), sup)] = field.random_element(rng, 9, nonzero=True)
        f = SuperPolynomial(R, terms)
        observations.append({"trial": trial, "f": str(f), "odd_dim": onerel_odd_dim(f, s)})
    values = sorted({o["odd_dim"] for o in observations})
    return {
        "basement": [list(indices_of(mk)) for mk in masks],
        "s": s,
        "trials": trials,
        "seed": seed,
        "field": str(field),
        "observations": observations,
        "values": values,
        "determined": len(values) <= 1,
    }


def experiment_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True)
