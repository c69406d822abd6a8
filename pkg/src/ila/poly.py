"""Dense univariate polynomials over an exact field, lowest degree first."""
from __future__ import annotations

from .field import QQ


class Poly:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=(), field=QQ):
        c = [field(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)
        self.field = field

    @classmethod
    def s(cls, field=QQ):
        return cls((0, 1), field)

    @classmethod
    def const(cls, a, field=QQ):
        return cls((a,), field)

    @classmethod
    def from_roots(cls, roots, field=QQ):
        p = cls((1,), field)
        for r in roots:
            p = p * cls((-field(r), 1), field)
        return p

    @classmethod
    def parse(cls, text, field=QQ):
        """Comma or space separated coefficients, lowest degree first."""
        toks = [t for t in text.replace(",", " ").split() if t]
        return cls([field(t) for t in toks], field)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash(self.coeffs)

    def _norm(self, c):
        return Poly(c, self.field)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return self._norm([self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return self._norm([self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return self._norm([-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self._norm([a * self.field(other) for a in self.coeffs])
        if self.is_zero() or other.is_zero():
            return self._norm(())
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return self._norm(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly((1,), self.field)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.field
        rem = list(self.coeffs)
        q = [f.zero] * max(0, len(rem) - len(other.coeffs) + 1)
        lead = f.inv(other.coeffs[-1])
        d = other.degree
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] * lead
            if f.p:
                c %= f.p
            if c:
                q[i - d] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - d + j] -= c * b
        return self._norm(q), self._norm(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def divides(self, other):
        """self | other."""
        return (other % self).is_zero()

    def monic(self):
        if self.is_zero():
            return self
        inv = self.field.inv(self.coeffs[-1])
        return self._norm([a * inv for a in self.coeffs])

    def __call__(self, x):
        acc = self.field.zero
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __str__(self):
        if self.is_zero():
            return "0"
        f = self.field
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if f.p:
                a = a % f.p
            if not a:
                continue
            neg = (not f.p) and a < 0
            mag = -a if neg else a
            mono = "" if i == 0 else ("s" if i == 1 else f"s^{i}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{f.fmt(mag)} {mono}"
            else:
                body = f.fmt(mag)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def to_list(self):
        return [self.field.fmt(a) for a in self.coeffs]


def matrix_min_poly(M, field=QQ):
    """Minimal polynomial of a square matrix (list of rows) by a Krylov sweep
    over its powers."""
    m = len(M)
    if m == 0:
        return Poly((1,), field)
    ident = [[field.one if i == j else field.zero for j in range(m)] for i in range(m)]
    flat = [sum((list(r) for r in ident), [])]
    cur = ident
    for k in range(1, m + 1):
        cur = matmul(cur, M, field)
        v = sum((list(r) for r in cur), [])
        coef = solve_combination(flat, v, field)
        if coef is not None:
            return Poly([-c for c in coef] + [1], field)
        flat.append(v)
    raise AssertionError("Cayley-Hamilton violated")


def matmul(A, B, field=QQ):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            s = field.zero
            for t in range(k):
                a = Ai[t]
                if a:
                    s += a * B[t][j]
            if field.p:
                s %= field.p
            row.append(s)
        out.append(row)
    return out


def solve_combination(vectors, target, field=QQ):
    """Coefficients c with sum c_i vectors[i] == target, or None."""
    k = len(vectors)
    n = len(target)
    # columns are the vectors; augmented with target
    mat = [[vectors[i][r] for i in range(k)] + [target[r]] for r in range(n)]
    red, piv = field.rref(mat, k + 1)
    if piv and piv[-1] == k:
        return None
    sol = [field.zero] * k
    for row, c in zip(red, piv):
        sol[c] = row[k]
    return sol
