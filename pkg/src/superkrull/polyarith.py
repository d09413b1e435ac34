"""Exact scalars and commutative multivariate polynomials over Q or GF(p)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import RingMismatchError

Exponent = tuple  # tuple[int, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """The coefficient field: the rationals (``char == 0``) or GF(p).

    Rationals are stored as :class:`fractions.Fraction`, residues as ints in
    ``range(p)``.  Arithmetic is done with the native operators followed by
    :meth:`norm`.
    """

    __slots__ = ("char",)

    def __init__(self, char: int = 0):
        if char != 0 and not _is_prime(char):
            raise ValueError(f"modulus {char} is not prime")
        self.char = char

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return "Q" if self.char == 0 else f"GF({self.char})"

    __str__ = __repr__

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if self.char == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            num = value.numerator % self.char
            den = value.denominator % self.char
            if den == 0:
                raise ZeroDivisionError(f"{value} has no image in {self}")
            return num * pow(den, -1, self.char) % self.char
        return int(value) % self.char

    def norm(self, a):
        return a if self.char == 0 else a % self.char

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.char == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.char)

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.div(self(int(num)), self(int(den)))
        return self(int(text))

    def random_element(self, rng, bound: int = 5, nonzero: bool = False):
        while True:
            if self.char == 0:
                c = self(rng.randint(-bound, bound))
            else:
                c = self(rng.randrange(self.char))
            if c != 0 or not nonzero:
                return c


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lexicographic or lexicographic order.

    ``priority`` lists variable indices from most to least significant; the
    default is the natural order x1 > x2 > ... .
    """

    kind: str = "grevlex"
    priority: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, exp: Exponent):
        if self.priority is not None:
            exp = tuple(exp[i] for i in self.priority)
        if self.kind == "lex":
            return exp
        return (sum(exp), tuple(-e for e in reversed(exp)))

    def key_function(self):
        """A fast key callable equivalent to :meth:`key`."""
        prio = self.priority
        if self.kind == "lex":
            if prio is None:
                return lambda e: e
            return lambda e: tuple(e[i] for i in prio)
        if prio is None:
            return lambda e: (sum(e), tuple(-c for c in reversed(e)))
        rev = tuple(reversed(prio))
        return lambda e: (sum(e), tuple(-e[i] for i in rev))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def mono_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Exponent, a: Exponent) -> Exponent:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def format_monomial(exp: Exponent, names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(exp, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_terms(pieces: Iterable[tuple[str, object]], field: Field) -> str:
    """Join (monomial string, coefficient) pairs into ``3*x1^2*x2 - 1/2`` form."""
    out = []
    for mono, c in pieces:
        if field.char == 0:
            neg = c < 0
            mag = -c if neg else c
        else:
            neg, mag = False, c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{field.format(mag)}*{mono}"
        else:
            body = field.format(mag)
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


class PolyRing:
    """K[x1, ..., xm] with a default monomial order."""

    def __init__(self, field: Field, names: Sequence[str], order: MonomialOrder = GREVLEX):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.order = order

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.nvars == self.nvars
        )

    def __hash__(self):
        return hash((self.field, self.nvars))

    def __repr__(self):
        return f"PolyRing({self.field}, {list(self.names)})"

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    @property
    def zero_exp(self) -> Exponent:
        return (0,) * self.nvars

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self.zero_exp: c} if c != 0 else {})

    def gen(self, i: int) -> "Polynomial":
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exp: self.field.one})

    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exp: Exponent, c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {tuple(exp): c} if c != 0 else {})

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            self._check(value.ring)
            return value
        if isinstance(value, dict):
            return Polynomial.from_dict(self, value)
        if isinstance(value, str):
            from .parser import parse_polynomial

            return parse_polynomial(value, self)
        return self.constant(value)

    def _check(self, other: "PolyRing"):
        if other.field != self.field or other.nvars != self.nvars:
            raise RingMismatchError(f"{self!r} vs {other!r}")


class Polynomial:
    """Immutable sparse polynomial: a dict from exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_dict(cls, ring: PolyRing, terms: dict) -> "Polynomial":
        F = ring.field
        clean = {}
        for exp, c in terms.items():
            exp = tuple(exp)
            if len(exp) != ring.nvars:
                raise RingMismatchError(f"exponent {exp} has wrong length for {ring!r}")
            c = F(c)
            if c != 0:
                clean[exp] = F.norm(clean.get(exp, 0) + c)
                if clean[exp] == 0:
                    del clean[exp]
        return cls(ring, clean)

    # -- basic predicates -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring.zero_exp, self.ring.field.zero)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self.ring._check(other.ring)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        norm = self.ring.field.norm
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Polynomial(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: F.norm(v * c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(self.ring.field(other))
        other = self._coerce(other)
        norm = self.ring.field.norm
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.ring, {e: v for e, v in ((e, norm(v)) for e, v in out.items()) if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, exp: Exponent, c) -> "Polynomial":
        norm = self.ring.field.norm
        return Polynomial(
            self.ring, {tuple(a + b for a, b in zip(e, exp)): norm(v * c) for e, v in self.terms.items()}
        )

    def evaluate(self, point: Sequence) -> object:
        F = self.ring.field
        total = F.zero
        for e, c in self.terms.items():
            v = c
            for xi, k in zip(point, e):
                if k:
                    v = v * xi**k
            total = total + v
        return F.norm(total)

    def derivative(self, i: int) -> "Polynomial":
        F = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                v = F.norm(c * e[i])
                if v:
                    ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
                    out[ne] = v
        return Polynomial(self.ring, out)

    # -- ordering ---------------------------------------------------------
    def sorted_terms(self, order: MonomialOrder | None = None):
        key = (order or self.ring.order).key_function()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder | None = None):
        """Return ``(exponent, coefficient)`` of the largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = (order or self.ring.order).key_function()
        exp = max(self.terms, key=key)
        return exp, self.terms[exp]

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    def __str__(self):
        names = self.ring.names
        return format_terms(
            ((format_monomial(e, names), c) for e, c in self.sorted_terms()), self.ring.field
        )

    def __repr__(self):
        return f"Polynomial({self})"


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def leading_term(f: Polynomial, order: MonomialOrder | None = None):
    return f.leading_term(order)
