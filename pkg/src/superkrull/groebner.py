"""Buchberger's algorithm for ideals of K[X] and submodules of free K[X]-modules.

Module elements are handled in a flat form ``{(position, exponent): coeff}``;
an ideal is the rank-one case with position 0.  Positions are odd-monomial
bitmasks, so a free module with basis {y^I} needs no extra bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

from .polyarith import GREVLEX, Field, MonomialOrder, PolyRing, Polynomial
from .superpoly import ModuleVector, indices_of, popcount


class _Empty:
    """Dimension of the unit ideal (the empty variety)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY"

    def __str__(self):
        return "empty"


EMPTY = _Empty()


def default_position_key(mask: int):
    # larger key leads: low odd degree first, then lexicographically smaller index sets
    return (-popcount(mask), tuple(-i for i in indices_of(mask)))


@dataclass(frozen=True)
class ModuleOrder:
    """Extension of a monomial order to module terms.

    Term-over-position by default; ``pot=True`` compares positions first,
    which is what elimination of positions needs.
    """

    mono: MonomialOrder = GREVLEX
    pot: bool = False
    position_key: Callable = default_position_key

    def key_function(self):
        mk = self.mono.key_function()
        pk = self.position_key
        if self.pot:
            return lambda t: (pk(t[0]), mk(t[1]))
        return lambda t: (mk(t[1]), pk(t[0]))


def eliminating_order(keep: set, mono: MonomialOrder = GREVLEX) -> ModuleOrder:
    """POT order in which the positions in ``keep`` are the smallest."""
    return ModuleOrder(mono, True, lambda mask: (0 if mask in keep else 1, default_position_key(mask)))


# -- flat-term core ---------------------------------------------------------


class _Basis:
    """Working Groebner basis: monic elements indexed by leading position."""

    def __init__(self, key, F: Field):
        self.key = key
        self.F = F
        self.elems: list = []  # (lead term, poly dict)
        self.by_pos: dict = {}

    def add(self, f: dict):
        lt = max(f, key=self.key)
        idx = len(self.elems)
        self.elems.append((lt, f))
        self.by_pos.setdefault(lt[0], []).append(idx)
        return idx

    def find_reducer(self, t, alive=None):
        pos, exp = t
        for idx in self.by_pos.get(pos, ()):
            if alive is not None and idx not in alive:
                continue
            lexp = self.elems[idx][0][1]
            if all(a <= b for a, b in zip(lexp, exp)):
                return idx
        return None


def _normalize(f: dict, key, F: Field) -> dict:
    if not f:
        return f
    lt = max(f, key=key)
    inv = F.inv(f[lt])
    return {t: F.norm(c * inv) for t, c in f.items()}


def _reduce(f: dict, basis: _Basis, alive=None, full: bool = True) -> dict:
    """Normal form of ``f`` modulo the (monic) elements of ``basis``."""
    key, F = basis.key, basis.F
    norm = F.norm
    f = dict(f)
    rem = {}
    while f:
        t = max(f, key=key)
        c = f[t]
        idx = basis.find_reducer(t, alive)
        if idx is None:
            if not full:
                rem.update(f)
                return rem
            rem[t] = f.pop(t)
            continue
        (lpos, lexp), g = basis.elems[idx]
        shift = tuple(b - a for a, b in zip(lexp, t[1]))
        for (gp, ge), gc in g.items():
            s = (gp, tuple(a + b for a, b in zip(ge, shift)))
            v = norm(f.get(s, 0) - c * gc)
            if v:
                f[s] = v
            else:
                f.pop(s, None)
    return rem


def _spoly(b: _Basis, i: int, j: int) -> dict:
    (pos, ei), fi = b.elems[i]
    (_, ej), fj = b.elems[j]
    lcm = tuple(max(x, y) for x, y in zip(ei, ej))
    si = tuple(l - x for x, l in zip(ei, lcm))
    sj = tuple(l - x for x, l in zip(ej, lcm))
    norm = b.F.norm
    out = {}
    for (p, e), c in fi.items():
        out[(p, tuple(a + s for a, s in zip(e, si)))] = c
    for (p, e), c in fj.items():
        t = (p, tuple(a + s for a, s in zip(e, sj)))
        v = norm(out.get(t, 0) - c)
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def groebner_terms(gens: Sequence[dict], key, F: Field, ideal: bool = False) -> list:
    """Reduced Groebner basis of flat-term generators, sorted by leading term descending."""
    basis = _Basis(key, F)
    pairs: set = set()

    def lcm_key(pair):
        i, j = pair
        (pos, ei), _ = basis.elems[i]
        ej = basis.elems[j][0][1]
        return key((pos, tuple(max(a, b) for a, b in zip(ei, ej)))), pair

    def insert(f):
        f = _normalize(f, key, F)
        new = basis.add(f)
        pos = basis.elems[new][0][0]
        for old in basis.by_pos[pos]:
            if old != new:
                pairs.add((old, new))

    for g in sorted((g for g in gens if g), key=lambda g: key(max(g, key=key))):
        r = _reduce(g, basis)
        if r:
            insert(r)

    while pairs:
        pair = min(pairs, key=lcm_key)
        pairs.discard(pair)
        i, j = pair
        (pos, ei), _ = basis.elems[i]
        ej = basis.elems[j][0][1]
        if ideal and all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        if _chain_skip(basis, pairs, i, j, pos, lcm):
            continue
        r = _reduce(_spoly(basis, i, j), basis)
        if r:
            insert(r)

    return _interreduce(basis)


def _chain_skip(basis: _Basis, pairs: set, i: int, j: int, pos, lcm) -> bool:
    for k in basis.by_pos.get(pos, ()):
        if k in (i, j):
            continue
        ek = basis.elems[k][0][1]
        if not all(a <= b for a, b in zip(ek, lcm)):
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        return True
    return False


def _interreduce(basis: _Basis) -> list:
    key, F = basis.key, basis.F
    n = len(basis.elems)
    alive = set(range(n))
    # drop elements whose leading term is divisible by another surviving one
    for i in range(n):
        (pi, ei), _ = basis.elems[i]
        for j in range(n):
            if j == i or j not in alive:
                continue
            (pj, ej), _ = basis.elems[j]
            if pj == pi and all(a <= b for a, b in zip(ej, ei)) and (ej != ei or j < i):
                alive.discard(i)
                break
    out = []
    for i in sorted(alive):
        others = alive - {i}
        lt, f = basis.elems[i]
        rest = {t: c for t, c in f.items() if t != lt}
        r = _reduce(rest, basis, others)
        r[lt] = F.one
        out.append(_normalize(r, key, F))
    out.sort(key=lambda f: key(max(f, key=key)), reverse=True)
    return out


# -- ideals -------------------------------------------------------------------


class IdealBasis:
    """Reduced Groebner basis of an ideal of K[X]."""

    def __init__(self, ring: PolyRing, polys: Sequence[Polynomial], order: MonomialOrder):
        self.ring = ring
        self.polys = tuple(polys)
        self.order = order

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __eq__(self, other):
        return isinstance(other, IdealBasis) and self.polys == other.polys and self.order == other.order

    def __repr__(self):
        return f"IdealBasis([{', '.join(map(str, self.polys))}])"

    def is_zero(self) -> bool:
        return not self.polys

    def is_unit(self) -> bool:
        return any(p.is_constant() and p for p in self.polys)

    def leading_exponents(self) -> list:
        return [p.leading_term(self.order)[0] for p in self.polys]

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def to_strings(self) -> list:
        return [str(p) for p in self.polys]


def _poly_terms(p: Polynomial) -> dict:
    return {(0, e): c for e, c in p.terms.items()}


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None, ring: PolyRing | None = None) -> IdealBasis:
    if ring is None:
        if not gens:
            raise ValueError("ring is required when there are no generators")
        ring = gens[0].ring
    order = order or ring.order
    for g in gens:
        ring._check(g.ring)
    key = ModuleOrder(order).key_function()
    basis = groebner_terms([_poly_terms(g) for g in gens], key, ring.field, ideal=True)
    polys = [Polynomial(ring, {e: c for (_, e), c in f.items()}) for f in basis]
    return IdealBasis(ring, polys, order)


def _basis_from(polys_terms: Sequence[dict], key, F: Field) -> _Basis:
    b = _Basis(key, F)
    for f in polys_terms:
        b.add(f)
    return b


def normal_form(f: Polynomial, B: IdealBasis) -> Polynomial:
    B.ring._check(f.ring)
    key = ModuleOrder(B.order).key_function()
    basis = _basis_from([_poly_terms(p) for p in B.polys], key, B.ring.field)
    r = _reduce(_poly_terms(f), basis)
    return Polynomial(f.ring, {e: c for (_, e), c in r.items()})


def ideal_dimension(B: IdealBasis):
    """Krull dimension of K[X]/<B> as the largest set of variables independent
    modulo the leading-term ideal; :data:`EMPTY` for the unit ideal."""
    if B.is_unit():
        return EMPTY
    m = B.ring.nvars
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in B.leading_exponents()]
    for size in range(m, -1, -1):
        for S in combinations(range(m), size):
            S = frozenset(S)
            if not any(sup <= S for sup in supports):
                return size
    return 0  # pragma: no cover - the empty set is always independent here


# -- modules ------------------------------------------------------------------


class ModuleBasis:
    """Reduced Groebner basis of a K[X]-submodule of the free module on {y^I}."""

    def __init__(self, ring: PolyRing, n: int, vectors: Sequence[ModuleVector], order: ModuleOrder):
        self.ring = ring
        self.n = n
        self.vectors = tuple(vectors)
        self.order = order

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __repr__(self):
        return f"ModuleBasis({list(self.vectors)})"

    def leading_positions(self) -> list:
        key = self.order.key_function()
        return [max(v.to_terms(), key=key)[0] for v in self.vectors]

    def contains(self, v: ModuleVector) -> bool:
        return module_membership(v, self)


def module_buchberger(
    gens: Sequence[ModuleVector],
    order: ModuleOrder | None = None,
    ring: PolyRing | None = None,
    n: int | None = None,
) -> ModuleBasis:
    if gens:
        ring = ring or gens[0].ring
        n = gens[0].n if n is None else n
    if ring is None or n is None:
        raise ValueError("ring and n are required when there are no generators")
    for g in gens:
        ring._check(g.ring)
    order = order or ModuleOrder(ring.order)
    key = order.key_function()
    basis = groebner_terms([g.to_terms() for g in gens], key, ring.field)
    return ModuleBasis(ring, n, [ModuleVector.from_terms(ring, n, f) for f in basis], order)


def module_normal_form(v: ModuleVector, B: ModuleBasis) -> ModuleVector:
    key = B.order.key_function()
    basis = _basis_from([w.to_terms() for w in B.vectors], key, B.ring.field)
    return ModuleVector.from_terms(B.ring, B.n, _reduce(v.to_terms(), basis))


def module_membership(v: ModuleVector, B: ModuleBasis) -> bool:
    return not module_normal_form(v, B)


def eliminate_positions(B, keep: set, mono: MonomialOrder | None = None) -> list:
    """Generators of span(B) intersected with the coordinate submodule on ``keep``.

    ``B`` may be a ModuleBasis or any sequence of ModuleVectors.
    """
    vectors = list(B.vectors) if isinstance(B, ModuleBasis) else list(B)
    if not vectors:
        return []
    if mono is None:
        mono = B.order.mono if isinstance(B, ModuleBasis) else vectors[0].ring.order
    ring, n = vectors[0].ring, vectors[0].n
    order = eliminating_order(set(keep), mono)
    key = order.key_function()
    basis = groebner_terms([v.to_terms() for v in vectors], key, ring.field)
    out = []
    for f in basis:
        if max(f, key=key)[0] in keep:
            out.append(ModuleVector.from_terms(ring, n, f))
    return out


def contraction_ideal(B: ModuleBasis, I: int) -> IdealBasis:
    """q_I = {a in K[X] : a * e_I in span(B)}, by eliminating every other position."""
    vecs = eliminate_positions(B, {I})
    polys = [v.coords[I] for v in vecs]
    return IdealBasis(B.ring, polys, B.order.mono)
