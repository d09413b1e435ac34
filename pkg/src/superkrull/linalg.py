"""Exact row reduction over K and, fraction-free, over K[X] (i.e. over K(X)).

Rows are sparse dicts ``{column: Polynomial}``.  In fraction-free mode every
stored pivot row has the same pivot value ``scale`` and zeros in all other
pivot columns, so the updates are Bareiss steps and every division is exact.
"""

from __future__ import annotations

from .errors import InvariantViolation
from .polyarith import PolyRing, Polynomial


def try_divide(f: Polynomial, g: Polynomial) -> Polynomial | None:
    """f / g when g divides f, else None."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    F = ring.field
    if g.is_constant():
        return f.scale(F.inv(g.constant_coeff()))
    if f.is_zero():
        return f
    key = ring.order.key_function()
    gexp = max(g.terms, key=key)
    ginv = F.inv(g.terms[gexp])
    gterms = list(g.terms.items())
    rem = dict(f.terms)
    quot = {}
    norm = F.norm
    while rem:
        t = max(rem, key=key)
        shift = tuple(a - b for a, b in zip(t, gexp))
        if any(s < 0 for s in shift):
            return None
        c = norm(rem[t] * ginv)
        quot[shift] = c
        for e, gc in gterms:
            s = tuple(a + b for a, b in zip(e, shift))
            v = norm(rem.get(s, 0) - c * gc)
            if v:
                rem[s] = v
            else:
                rem.pop(s, None)
    return Polynomial(ring, quot)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, raising if g does not divide f."""
    q = try_divide(f, g)
    if q is None:
        raise InvariantViolation("inexact polynomial division")
    return q


def _cost(p: Polynomial):
    return (p.degree(), len(p.terms))


class Echelon:
    """Incrementally maintained reduced row echelon form of a K(X)-span.

    In fraction-free mode the stored rows equal ``scale`` times the reduced
    echelon form over K(X), with ``scale`` a polynomial.  Updates are Bareiss
    steps when the division is exact; afterwards common factors of the scale
    and all entries are cancelled, which keeps entries small when pivots are
    units of K(X) that Bareiss would otherwise carry along.

    With no even variables the entries are plain scalars and ordinary
    Gauss-Jordan elimination is used.
    """

    def __init__(self, ring: PolyRing, col_key=None):
        self.ring = ring
        self.field = ring.field
        self.fraction_free = ring.nvars > 0
        self.col_key = col_key or (lambda c: c)
        self.rows: dict = {}  # pivot column -> row dict
        self.scale = ring.one() if self.fraction_free else self.field.one
        self._factors: list = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list:
        return sorted(self.rows, key=self.col_key)

    def _convert(self, v: dict) -> dict:
        if self.fraction_free:
            return {c: p for c, p in v.items() if p}
        out = {}
        for c, p in v.items():
            if isinstance(p, Polynomial):
                if not p.is_constant():
                    raise ValueError("non-constant entry in a scalar echelon")
                p = p.constant_coeff()
            if p != 0:
                out[c] = p
        return out

    def reduce(self, v: dict) -> dict:
        """Remainder of ``v`` (scaled by a nonzero factor) with zeros on all pivots."""
        v = self._convert(v)
        if self.fraction_free:
            hits = [(c, v[c]) for c in v if c in self.rows]
            d = self.scale
            w = dict(v) if d.is_constant() and d.constant_coeff() == 1 else {c: d * p for c, p in v.items()}
            for c, a in hits:
                for col, e in self.rows[c].items():
                    val = w.get(col)
                    val = -(a * e) if val is None else val - a * e
                    if val:
                        w[col] = val
                    else:
                        w.pop(col, None)
            return w
        norm = self.field.norm
        w = dict(v)
        for c in [c for c in v if c in self.rows]:
            a = w.get(c)
            if not a:
                continue
            for col, e in self.rows[c].items():
                val = norm(w.get(col, 0) - a * e)
                if val:
                    w[col] = val
                else:
                    w.pop(col, None)
        return w

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    @staticmethod
    def _divide_all(entries: dict, q: Polynomial) -> dict | None:
        out = {}
        for c, e in entries.items():
            r = try_divide(e, q)
            if r is None:
                return None
            out[c] = r
        return out

    def _primitive(self, w: dict) -> dict:
        """Divide w by its smallest entry or known factors when they divide every entry."""
        small = min(w.values(), key=_cost)
        if small.is_constant():
            return self._divide_all(w, small)
        divided = self._divide_all(w, small)
        if divided is not None:
            return divided
        for q in self._factors:
            while True:
                divided = self._divide_all(w, q)
                if divided is None:
                    break
                w = divided
        return w

    def _cancel(self) -> None:
        """Cancel factors common to the scale and every stored entry."""
        d = self.scale
        if d.is_constant():
            if d.constant_coeff() != 1:
                inv = self.field.inv(d.constant_coeff())
                self.rows = {pc: {c: e.scale(inv) for c, e in row.items()} for pc, row in self.rows.items()}
                self.scale = self.ring.one()
            return
        for q in self._factors:
            while not self.scale.is_constant():
                qs = try_divide(self.scale, q)
                if qs is None:
                    break
                new_rows = {}
                for pc, row in self.rows.items():
                    nr = self._divide_all(row, q)
                    if nr is None:
                        break
                    new_rows[pc] = nr
                else:
                    self.rows = new_rows
                    self.scale = qs
                    continue
                break
        if self.scale.is_constant():
            self._cancel()

    def add(self, v: dict) -> bool:
        """Insert a row; return True if it increased the rank."""
        w = self.reduce(v)
        if not w:
            return False
        if self.fraction_free:
            w = self._primitive(w)
            col = min(w, key=lambda c: (_cost(w[c]), self.col_key(c)))
            p = w[col]
            d = self.scale
            updated = {}
            for pc, row in self.rows.items():
                a = row.get(col)
                new = {}
                for c2, e in row.items():
                    val = p * e
                    if a is not None:
                        other = w.get(c2)
                        if other is not None:
                            val = val - a * other
                    if val:
                        new[c2] = val
                if a is not None:
                    for c2, other in w.items():
                        if c2 not in row:
                            new[c2] = -(a * other)
                new.pop(col, None)
                updated[pc] = new
            divided = {}
            for pc, new in updated.items():
                nr = self._divide_all(new, d)
                if nr is None:
                    divided = None
                    break
                divided[pc] = nr
            if divided is not None:
                self.rows = divided
                self.rows[col] = w
                self.scale = p
            else:
                self.rows = updated
                self.rows[col] = {c: d * e for c, e in w.items()}
                self.scale = d * p
            if not p.is_constant() and p not in self._factors:
                self._factors.append(p)
            self._cancel()
        else:
            F = self.field
            col = min(w, key=self.col_key)
            inv = F.inv(w[col])
            w = {c: F.norm(e * inv) for c, e in w.items()}
            for pc, row in self.rows.items():
                a = row.get(col)
                if not a:
                    continue
                for c2, e in w.items():
                    val = F.norm(row.get(c2, 0) - a * e)
                    if val:
                        row[c2] = val
                    else:
                        row.pop(c2, None)
            self.rows[col] = w
        return True

    def extend(self, rows) -> "Echelon":
        for r in rows:
            self.add(r)
        return self


def rank_of(ring: PolyRing, rows) -> int:
    return Echelon(ring).extend(rows).rank


def determinant(ring: PolyRing, matrix) -> Polynomial:
    """Fraction-free (Bareiss) determinant of a square matrix of polynomials."""
    a = [[ring(e) if not isinstance(e, Polynomial) else e for e in row] for row in matrix]
    k = len(a)
    if k == 0:
        return ring.one()
    if any(len(row) != k for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = ring.one()
    for i in range(k - 1):
        if a[i][i].is_zero():
            swap = next((r for r in range(i + 1, k) if not a[r][i].is_zero()), None)
            if swap is None:
                return ring.zero()
            a[i], a[swap] = a[swap], a[i]
            sign = -sign
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                a[r][c] = exact_divide(a[i][i] * a[r][c] - a[r][i] * a[i][c], prev)
        prev = a[i][i]
    det = a[k - 1][k - 1]
    return det if sign == 1 else -det
