"""Reader for presentation files and single super-polynomial expressions.

File grammar (line oriented, ``#`` starts a comment)::

    field Q | field GF(p)
    even <names...>
    odd <names...>
    relations:
    <expression>
    ...

Expressions use ``+ - * ^ /``, integers, ``a/b`` rationals and parentheses.
"""

from __future__ import annotations

import re

from .errors import HomogeneityError, ParseError
from .polyarith import QQ, Field, PolyRing, Polynomial
from .superpoly import SuperPolynomial, SuperRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


class _Tokens:
    def __init__(self, text: str, line: int | None, col0: int):
        self.items = []
        for mt in _TOKEN.finditer(text):
            if mt.group(0).strip() == "":
                continue
            kind = "num" if mt.group(1) else "id" if mt.group(2) else "op"
            self.items.append((kind, mt.group(mt.lastindex), mt.start(mt.lastindex) + col0))
        self.pos = 0
        self.line = line
        self.end = len(text) + col0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else ("end", "", self.end)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.line, tok[2])


class _Parser:
    def __init__(self, ring: SuperRing, tokens: _Tokens):
        self.R = ring
        self.t = tokens
        self.vars = {name: ring.x(i + 1) for i, name in enumerate(ring.even_names)}
        self.vars.update({name: ring.y(j + 1) for j, name in enumerate(ring.odd_names)})

    def parse(self) -> SuperPolynomial:
        if self.t.peek()[0] == "end":
            raise self.t.error("empty expression")
        value = self.expr()
        if self.t.peek()[0] != "end":
            raise self.t.error(f"unexpected {self.t.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.t.peek()[1] in ("+", "-") and self.t.peek()[0] == "op":
            op = self.t.next()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.t.peek()[0] == "op" and self.t.peek()[1] in ("*", "/"):
            op_tok = self.t.next()
            rhs = self.unary()
            if op_tok[1] == "*":
                value = value * rhs
            else:
                value = self._divide(value, rhs, op_tok)
        return value

    def _divide(self, value, rhs, tok):
        if len(rhs.terms) > 1 or any(k != (self.R.zero_exp, 0) for k in rhs.terms):
            raise self.t.error("division only by nonzero constants", tok)
        if not rhs:
            raise self.t.error("division by zero", tok)
        c = next(iter(rhs.terms.values()))
        return value.scale(self.R.field.inv(c))

    def unary(self):
        tok = self.t.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.t.next()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.t.peek()[0] == "op" and self.t.peek()[1] == "^":
            self.t.next()
            tok = self.t.next()
            if tok[0] != "num":
                raise self.t.error("exponent must be a non-negative integer", tok)
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.t.next()
        kind, text, _ = tok
        if kind == "num":
            return self.R.constant(int(text))
        if kind == "id":
            if text not in self.vars:
                raise self.t.error(f"unknown identifier {text!r}", tok)
            return self.vars[text]
        if text == "(":
            value = self.expr()
            close = self.t.next()
            if close[1] != ")":
                raise self.t.error("expected ')'", close)
            return value
        if kind == "end":
            raise self.t.error("unexpected end of expression", tok)
        raise self.t.error(f"unexpected {text!r}", tok)


def parse_expression(text: str, ring: SuperRing, line: int | None = None, col0: int = 1) -> SuperPolynomial:
    """Parse one expression; odd squares vanish and odd factors are sorted with sign."""
    return _Parser(ring, _Tokens(text, line, col0)).parse()


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse an element of a commutative PolyRing."""
    f = parse_expression(text, SuperRing(ring.field, ring.names, 0, ring.order))
    return Polynomial(ring, dict(f.bar().terms))


def parse_field(spec: str, line: int | None = None) -> Field:
    spec = spec.strip()
    if spec in ("Q", "QQ"):
        return QQ
    mt = re.fullmatch(r"(?:GF|F)\(\s*(\d+)\s*\)", spec)
    if not mt:
        raise ParseError(f"unknown field {spec!r}; expected Q or GF(p)", line, 7)
    p = int(mt.group(1))
    try:
        return Field(p)
    except ValueError:
        raise ParseError(f"modulus {p} is not prime", line, 7) from None


def _names(rest: str, lineno: int, offset: int) -> list:
    names = rest.split()
    for name in names:
        if not _IDENT.match(name):
            raise ParseError(f"invalid variable name {name!r}", lineno, offset + rest.index(name))
    return names


def parse_presentation(text: str):
    """Parse a presentation file into a SuperPresentation."""
    from .ksdim import SuperPresentation

    field = even = odd = None
    relations: list = []
    in_relations = False
    ring = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        if in_relations:
            rel = parse_expression(stripped, ring, lineno, indent + 1)
            if not rel:
                raise ParseError("relation is zero", lineno, indent + 1)
            if not rel.is_homogeneous():
                raise ParseError("inhomogeneous relation: found both even and odd terms", lineno, indent + 1)
            relations.append(rel)
            continue
        head, _, rest = stripped.partition(" ")
        offset = indent + len(head) + 2
        if head == "field":
            if field is not None:
                raise ParseError("duplicate 'field' line", lineno, indent + 1)
            field = parse_field(rest, lineno)
        elif head == "even":
            if even is not None:
                raise ParseError("duplicate 'even' line", lineno, indent + 1)
            even = _names(rest, lineno, offset)
        elif head == "odd":
            if odd is not None:
                raise ParseError("duplicate 'odd' line", lineno, indent + 1)
            odd = _names(rest, lineno, offset)
        elif stripped == "relations:":
            ring = _ring(field, even, odd, lineno)
            in_relations = True
        else:
            raise ParseError(f"unexpected line starting with {head!r}", lineno, indent + 1)
    if ring is None:
        ring = _ring(field, even, odd, None)
    try:
        return SuperPresentation(ring, tuple(relations))
    except HomogeneityError as exc:
        raise ParseError(str(exc)) from None


def _ring(field, even, odd, lineno) -> SuperRing:
    if field is None:
        raise ParseError("missing 'field' line", lineno)
    try:
        return SuperRing(field, even or [], odd or [])
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None
