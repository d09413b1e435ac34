"""The polynomial superalgebra K[X | Y].

Odd monomials y^I are int bitmasks (bit i-1 stands for y_i) and are always
kept with ascending factors; products pick up the Koszul sign counting
inversions between the two index sets.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import HomogeneityError, RingMismatchError
from .polyarith import (
    GREVLEX,
    Field,
    MonomialOrder,
    PolyRing,
    Polynomial,
    format_monomial,
    format_terms,
)

MAX_ODD = 24

EVEN, ODD, MIXED, ZERO = "even", "odd", "mixed", "zero"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_from_indices(indices: Iterable[int]) -> int:
    """1-based indices to a bitmask."""
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"odd index {i} must be positive")
        mask |= 1 << (i - 1)
    return mask


def indices_of(mask: int) -> tuple:
    """Bitmask to the ascending tuple of 1-based indices."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def koszul_sign(a: int, b: int) -> int:
    """Sign of y^a * y^b = sign * y^(a|b) for disjoint a, b."""
    count = 0
    while b:
        low = b & -b
        count += popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if count & 1 else 1


def subsets(mask: int):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class SuperRing:
    """K[x1..xm | y1..yn]; holds variable names and the even polynomial ring."""

    def __init__(
        self,
        field: Field,
        even: Sequence[str] | int,
        odd: Sequence[str] | int,
        order: MonomialOrder = GREVLEX,
    ):
        if isinstance(even, int):
            even = [f"x{i}" for i in range(1, even + 1)]
        if isinstance(odd, int):
            odd = [f"y{i}" for i in range(1, odd + 1)]
        if len(odd) > MAX_ODD:
            raise ValueError(f"at most {MAX_ODD} odd variables are supported, got {len(odd)}")
        names = list(even) + list(odd)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        self.field = field
        self.even_names = tuple(even)
        self.odd_names = tuple(odd)
        self.m = len(self.even_names)
        self.n = len(self.odd_names)
        self.order = order
        self.even_ring = PolyRing(field, self.even_names, order)

    def __eq__(self, other):
        return (
            isinstance(other, SuperRing)
            and other.field == self.field
            and other.m == self.m
            and other.n == self.n
        )

    def __hash__(self):
        return hash((self.field, self.m, self.n))

    def __repr__(self):
        return f"SuperRing({self.field}, {list(self.even_names)} | {list(self.odd_names)})"

    def with_order(self, order: MonomialOrder) -> "SuperRing":
        return SuperRing(self.field, self.even_names, self.odd_names, order)

    @property
    def zero_exp(self):
        return (0,) * self.m

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def zero(self) -> "SuperPolynomial":
        return SuperPolynomial(self, {})

    def one(self) -> "SuperPolynomial":
        return self.constant(1)

    def constant(self, c) -> "SuperPolynomial":
        c = self.field(c)
        return SuperPolynomial(self, {(self.zero_exp, 0): c} if c != 0 else {})

    def x(self, i: int) -> "SuperPolynomial":
        """The even generator x_i (1-based)."""
        exp = tuple(1 if j == i - 1 else 0 for j in range(self.m))
        return SuperPolynomial(self, {(exp, 0): self.field.one})

    def y(self, i: int) -> "SuperPolynomial":
        """The odd generator y_i (1-based)."""
        if not 1 <= i <= self.n:
            raise ValueError(f"odd index {i} out of range 1..{self.n}")
        return SuperPolynomial(self, {(self.zero_exp, 1 << (i - 1)): self.field.one})

    def y_mono(self, indices: Iterable[int] | int, c=1) -> "SuperPolynomial":
        """c * y^I with I given as 1-based indices or a bitmask."""
        mask = indices if isinstance(indices, int) else mask_from_indices(indices)
        c = self.field(c)
        return SuperPolynomial(self, {(self.zero_exp, mask): c} if c != 0 else {})

    def term(self, exp, mask: int, c=1) -> "SuperPolynomial":
        c = self.field(c)
        return SuperPolynomial(self, {(tuple(exp), mask): c} if c != 0 else {})

    def gens(self) -> tuple:
        return tuple(self.x(i) for i in range(1, self.m + 1)) + tuple(
            self.y(j) for j in range(1, self.n + 1)
        )

    def from_polynomial(self, p: Polynomial) -> "SuperPolynomial":
        self.even_ring._check(p.ring)
        return SuperPolynomial(self, {(e, 0): c for e, c in p.terms.items()})

    def __call__(self, value) -> "SuperPolynomial":
        if isinstance(value, SuperPolynomial):
            self._check(value.ring)
            return value
        if isinstance(value, Polynomial):
            return self.from_polynomial(value)
        if isinstance(value, str):
            from .parser import parse_expression

            return parse_expression(value, self)
        return self.constant(value)

    def _check(self, other: "SuperRing"):
        if other != self:
            raise RingMismatchError(f"{self!r} vs {other!r}")

    def format_odd(self, mask: int) -> str:
        return "*".join(self.odd_names[i - 1] for i in indices_of(mask))

    def term_key(self):
        """Sort key for (exp, mask) terms used by the canonical string form."""
        ekey = self.order.key_function()
        return lambda t: (sum(t[0]) + popcount(t[1]), ekey(t[0]), popcount(t[1]), -t[1])


class SuperPolynomial:
    """Element of K[X | Y]: dict from (exponent tuple, odd mask) to nonzero scalar."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: SuperRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other) -> "SuperPolynomial":
        if isinstance(other, SuperPolynomial):
            self.ring._check(other.ring)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        if isinstance(other, Polynomial):
            return self.ring.from_polynomial(other)
        raise TypeError(f"cannot combine SuperPolynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        norm = self.ring.field.norm
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = norm(out.get(t, 0) + c)
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return SuperPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return SuperPolynomial(self.ring, {t: norm(-c) for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "SuperPolynomial":
        F = self.ring.field
        c = F(c)
        if c == 0:
            return self.ring.zero()
        return SuperPolynomial(self.ring, {t: F.norm(v * c) for t, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return super_mul(self, self._coerce(other))

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    # -- structure --------------------------------------------------------
    def parity(self) -> str:
        return parity(self)

    def is_homogeneous(self) -> bool:
        return parity(self) in (EVEN, ODD, ZERO)

    def bar(self) -> Polynomial:
        return bar(self)

    def homogeneous_parts(self) -> tuple:
        """(even part, odd part)."""
        ev, od = {}, {}
        for (e, mask), c in self.terms.items():
            (od if popcount(mask) & 1 else ev)[(e, mask)] = c
        return SuperPolynomial(self.ring, ev), SuperPolynomial(self.ring, od)

    def odd_support(self) -> set:
        return {mask for (_, mask) in self.terms}

    def coefficient(self, mask: int) -> Polynomial:
        """The K[X]-coefficient of y^mask."""
        return Polynomial(self.ring.even_ring, {e: c for (e, m), c in self.terms.items() if m == mask})

    def to_vector(self) -> "ModuleVector":
        return to_vector(self)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.term_key()(t[0]), reverse=True)

    def __str__(self):
        R = self.ring
        pieces = []
        for (e, mask), c in self.sorted_terms():
            mono = "*".join(p for p in (format_monomial(e, R.even_names), R.format_odd(mask)) if p)
            pieces.append((mono, c))
        return format_terms(pieces, R.field)

    def __repr__(self):
        return f"SuperPolynomial({self})"


def super_mul(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """Product in K[X|Y] with y_i y_j = -y_j y_i and y_i^2 = 0."""
    f.ring._check(g.ring)
    norm = f.ring.field.norm
    out: dict = {}
    for (e1, m1), c1 in f.terms.items():
        for (e2, m2), c2 in g.terms.items():
            if m1 & m2:
                continue
            key = (tuple(a + b for a, b in zip(e1, e2)), m1 | m2)
            v = c1 * c2
            if koszul_sign(m1, m2) < 0:
                v = -v
            out[key] = out.get(key, 0) + v
    return SuperPolynomial(f.ring, {t: v for t, v in ((t, norm(v)) for t, v in out.items()) if v})


def parity(f: SuperPolynomial) -> str:
    if not f.terms:
        return ZERO
    kinds = {popcount(mask) & 1 for (_, mask) in f.terms}
    if len(kinds) == 2:
        return MIXED
    return ODD if kinds.pop() else EVEN


def bar(f: SuperPolynomial) -> Polynomial:
    """Image under Y -> 0."""
    return Polynomial(f.ring.even_ring, {e: c for (e, mask), c in f.terms.items() if mask == 0})


class ModuleVector:
    """Element of the free K[X]-module with basis {y^I}: coordinates mask -> Polynomial."""

    __slots__ = ("ring", "n", "coords")

    def __init__(self, ring: PolyRing, n: int, coords: dict):
        self.ring = ring
        self.n = n
        self.coords = {mask: p for mask, p in coords.items() if p}

    def __bool__(self):
        return bool(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, ModuleVector)
            and self.ring == other.ring
            and self.n == other.n
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self.coords)
        for mask, p in other.coords.items():
            out[mask] = out[mask] + p if mask in out else p
        return ModuleVector(self.ring, self.n, out)

    def scale(self, a: Polynomial) -> "ModuleVector":
        return ModuleVector(self.ring, self.n, {mask: a * p for mask, p in self.coords.items()})

    def to_terms(self) -> dict:
        """Flat ``{(mask, exp): coeff}`` form used by the Groebner engine."""
        return {(mask, e): c for mask, p in self.coords.items() for e, c in p.terms.items()}

    @classmethod
    def from_terms(cls, ring: PolyRing, n: int, terms: dict) -> "ModuleVector":
        coords: dict = {}
        for (mask, e), c in terms.items():
            coords.setdefault(mask, {})[e] = c
        return cls(ring, n, {mask: Polynomial(ring, t) for mask, t in coords.items()})

    @classmethod
    def unit(cls, ring: PolyRing, n: int, mask: int, coeff: Polynomial | None = None) -> "ModuleVector":
        return cls(ring, n, {mask: coeff if coeff is not None else ring.one()})

    def assemble(self, sring: SuperRing) -> SuperPolynomial:
        """Inverse of :func:`to_vector`."""
        sring.even_ring._check(self.ring)
        terms = {}
        for mask, p in self.coords.items():
            for e, c in p.terms.items():
                terms[(e, mask)] = c
        return SuperPolynomial(sring, terms)

    def __str__(self):
        parts = [f"[{','.join(map(str, indices_of(mask)))}]: {p}" for mask, p in sorted(self.coords.items())]
        return "{" + "; ".join(parts) + "}"

    __repr__ = __str__


def to_vector(f: SuperPolynomial) -> ModuleVector:
    coords: dict = {}
    for (e, mask), c in f.terms.items():
        coords.setdefault(mask, {})[e] = c
    R = f.ring.even_ring
    return ModuleVector(R, f.ring.n, {mask: Polynomial(R, t) for mask, t in coords.items()})


def superideal_module_generators(gens: Sequence[SuperPolynomial]) -> list:
    """K[X]-module generators {y^L g} of the super-ideal generated by ``gens``."""
    out = []
    seen = set()
    for g in gens:
        if not g.is_homogeneous():
            raise HomogeneityError(f"generator {g} is not homogeneous")
        if not g:
            continue
        R = g.ring
        for L in range(R.full_mask + 1):
            prod = super_mul(R.y_mono(L), g)
            if prod and prod not in seen:
                seen.add(prod)
                out.append(to_vector(prod))
    return out


def unit_inverse(u: SuperPolynomial) -> SuperPolynomial:
    """Inverse of u when bar(u) is a nonzero constant: c^-1 * sum_k (-(u-c)/c)^k."""
    R = u.ring
    b = bar(u)
    if not b or not b.is_constant():
        raise ValueError(f"{u} is not invertible: its even reduction is not a nonzero constant")
    if any(mask == 0 and e != R.zero_exp for (e, mask) in u.terms):
        raise ValueError(f"{u} is not invertible: its even reduction is not constant")
    F = R.field
    c = b.constant_coeff()
    cinv = F.inv(c)
    step = (u - R.constant(c)).scale(F.norm(-cinv))
    result = R.one()
    power = R.one()
    # u - c is nilpotent: every term carries an odd factor, so step^(n+1) = 0
    for _ in range(R.n + 1):
        power = power * step
        if not power:
            break
        result = result + power
    return result.scale(cinv)
