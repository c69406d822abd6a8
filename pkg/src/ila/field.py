"""Exact fields: the rationals and small prime fields.

Rationals are ``fractions.Fraction`` values. Elements of GF(p) are plain ints
in ``range(p)``. Each field carries its own row-reduction routine so the hot
loop never dispatches per element.
"""
import os
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd


_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")
_DEC = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)$")


def parse_rational(tok):
    """Parse ``"p/q"``, an integer, or an exact decimal such as ``"0.25"``."""
    tok = tok.strip()
    if _RAT.match(tok) or _DEC.match(tok):
        q = Fraction(tok)
        return q
    raise ValueError(f"not a rational: {tok!r}")


class Field:
    p = 0
    name = "?"

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("field", self.p))


class Rationals(Field):
    p = 0
    name = "q"
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return parse_rational(x)
        if isinstance(x, float):
            raise TypeError("floats are not exact field elements")
        return Fraction(x)

    def fmt(self, x):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def inv(self, x):
        return 1 / x

    def rref(self, rows, ncols):
        """Reduced row echelon form. Returns (rows, pivot columns).

        Elimination runs on integer rows (denominators cleared, each row kept
        primitive); only the final pivot normalization makes fractions.
        """
        irows = []
        for r in rows:
            den = 1
            for x in r:
                if x:
                    d = x.denominator if isinstance(x, Fraction) else 1
                    if d != 1:
                        den = den * d // gcd(den, d)
            if den == 1:
                ir = [int(x) for x in r]
            else:
                ir = [x.numerator * (den // x.denominator) if x else 0 for x in r]
            if any(ir):
                irows.append(_primitive(ir))
        pivots = []
        r = 0
        nrows = len(irows)
        for c in range(ncols):
            if r == nrows:
                break
            piv = None
            for i in range(r, nrows):
                if irows[i][c]:
                    piv = i
                    break
            if piv is None:
                continue
            irows[r], irows[piv] = irows[piv], irows[r]
            pr = irows[r]
            a = pr[c]
            nz = [j for j in range(c, ncols) if pr[j]]
            for i in range(nrows):
                if i != r:
                    ri = irows[i]
                    b = ri[c]
                    if b:
                        g = gcd(a, b)
                        ka, kb = a // g, b // g
                        if ka != 1:
                            ri = [x * ka for x in ri]
                        for j in nz:
                            ri[j] -= kb * pr[j]
                        irows[i] = _primitive(ri)
            pivots.append(c)
            r += 1
        out = []
        for pr, c in zip(irows[:r], pivots):
            a = pr[c]
            out.append(tuple(Fraction(x, a) if x else _ZERO for x in pr))
        return out, pivots


_ZERO = Fraction(0)


def _primitive(row):
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


class PrimeField(Field):
    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"gf{p}"
        self.zero = 0
        self.one = 1

    def __call__(self, x):
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def fmt(self, x):
        return str(x)

    def inv(self, x):
        return pow(x, -1, self.p)

    def rref(self, rows, ncols):
        p = self.p
        rows = [[x % p for x in r] for r in rows]
        rows = [r for r in rows if any(r)]
        pivots = []
        r = 0
        nrows = len(rows)
        for c in range(ncols):
            if r == nrows:
                break
            piv = None
            for i in range(r, nrows):
                if rows[i][c]:
                    piv = i
                    break
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            pr = rows[r]
            if pr[c] != 1:
                inv = pow(pr[c], -1, p)
                pr = [x * inv % p for x in pr]
                rows[r] = pr
            for i in range(nrows):
                if i != r:
                    ri = rows[i]
                    f = ri[c]
                    if f:
                        rows[i] = [(a - f * b) % p for a, b in zip(ri, pr)]
            pivots.append(c)
            r += 1
        return [tuple(x) for x in rows[:r]], pivots


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def field_from_name(name=None):
    """``"q"`` or ``"gf<p>"``; ``None`` falls back to ``$ILA_FIELD`` then ``q``."""
    if name is None:
        name = os.environ.get("ILA_FIELD", "q")
    name = name.strip().lower()
    if name in ("q", "qq", "rational", "rationals"):
        return QQ
    m = re.fullmatch(r"gf\(?(\d+)\)?", name)
    if m:
        return GF(int(m.group(1)))
    raise ValueError(f"unknown field {name!r}")
