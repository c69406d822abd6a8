"""Vector spaces on labelled index sets.

A ``Space`` is stored as the reduced row echelon form of a generator matrix
whose columns follow the canonical order of its labels, so two spaces are equal
exactly when their stored matrices are equal.

Everything else in the package is built from the handful of operations here:
orthogonal complement, restriction, contraction, sum, intersection, matched and
skewed composition, renaming and sign flips.
"""
from __future__ import annotations

import random as _random
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .errors import BadRename, IndexMismatch, NullSubexpression
from .field import QQ


class Label(NamedTuple):
    """A coordinate name: base string, number of primes, dot mark."""

    base: str
    primes: int = 0
    dotted: bool = False

    def __str__(self):
        return self.base + "'" * self.primes + (".dot" if self.dotted else "")

    def __repr__(self):
        return f"Label({str(self)!r})"

    def prime(self, k=1):
        return Label(self.base, self.primes + k, self.dotted)

    def dot(self):
        return Label(self.base, self.primes, True)

    def undot(self):
        return Label(self.base, self.primes, False)

    @staticmethod
    def parse(text):
        text = text.strip()
        dotted = text.endswith(".dot")
        if dotted:
            text = text[:-4]
        base = text.rstrip("'")
        if not base:
            raise ValueError(f"empty label base in {text!r}")
        return Label(base, len(text) - len(base), dotted)


def L(x):
    """Coerce a string or Label to a Label."""
    if isinstance(x, Label):
        return x
    return Label.parse(x)


def labels(xs):
    """Canonically ordered tuple of distinct labels."""
    out = tuple(sorted({L(x) for x in xs}))
    return out


def max_primes(*label_sets):
    m = 0
    for s in label_sets:
        for lab in s:
            if lab.primes > m:
                m = lab.primes
    return m


class Space:
    """A subspace of F^X for a finite label set X."""

    __slots__ = ("index", "rows", "field", "pivots", "_pos")

    def __init__(self, index, rows, field, pivots):
        # trusted constructor: index sorted, rows already in RREF
        self.index = index
        self.rows = rows
        self.field = field
        self.pivots = pivots
        self._pos = None

    # -- construction -------------------------------------------------
    @classmethod
    def from_rows(cls, index, rows, field=QQ):
        """Span of ``rows``; each row is a sequence aligned with ``index`` or a
        mapping label -> value."""
        idx = tuple(L(x) for x in index)
        order = sorted(range(len(idx)), key=lambda i: idx[i])
        sidx = tuple(idx[i] for i in order)
        if len(set(sidx)) != len(sidx):
            raise IndexMismatch("duplicate labels in index")
        pos = {lab: i for i, lab in enumerate(idx)}
        mat = []
        for r in rows:
            if isinstance(r, Mapping):
                vec = [field.zero] * len(idx)
                for k, v in r.items():
                    k = L(k)
                    if k not in pos:
                        raise IndexMismatch(f"{k} not in index")
                    vec[pos[k]] = field(v)
            else:
                if len(r) != len(idx):
                    raise IndexMismatch("row length does not match index")
                vec = [field(v) for v in r]
            mat.append([vec[i] for i in order])
        red, piv = field.rref(mat, len(sidx))
        return cls(sidx, tuple(red), field, tuple(piv))

    @classmethod
    def _make(cls, sidx, mat, field):
        red, piv = field.rref(mat, len(sidx))
        return cls(sidx, tuple(red), field, tuple(piv))

    # -- queries ------------------------------------------------------
    @property
    def rank(self):
        return len(self.rows)

    @property
    def dim(self):
        return len(self.index)

    def position(self):
        if self._pos is None:
            self._pos = {lab: i for i, lab in enumerate(self.index)}
        return self._pos

    def _vec(self, w):
        if isinstance(w, Mapping):
            pos = self.position()
            vec = [self.field.zero] * self.dim
            for k, v in w.items():
                k = L(k)
                if k not in pos:
                    raise IndexMismatch(f"{k} not in index")
                vec[pos[k]] = self.field(v)
            return vec
        if len(w) != self.dim:
            raise IndexMismatch("vector length does not match index")
        return [self.field(v) for v in w]

    def residual(self, vec):
        """Reduce a coordinate list against the basis."""
        vec = list(vec)
        p = self.field.p
        for row, c in zip(self.rows, self.pivots):
            f = vec[c]
            if f:
                if p:
                    vec = [(a - f * b) % p for a, b in zip(vec, row)]
                else:
                    vec = [a - f * b if b else a for a, b in zip(vec, row)]
        return vec

    def contains(self, w):
        return not any(self.residual(self._vec(w)))

    def _check_same(self, other):
        if self.index != other.index:
            raise IndexMismatch(f"index sets differ: {fmt_index(self.index)} vs {fmt_index(other.index)}")
        if self.field != other.field:
            raise IndexMismatch("fields differ")

    def issubspace(self, other):
        """``self`` ⊆ ``other``."""
        self._check_same(other)
        if self.rank > other.rank:
            return False
        return all(not any(other.residual(r)) for r in self.rows)

    def __le__(self, other):
        return self.issubspace(other)

    def __ge__(self, other):
        return other.issubspace(self)

    def __eq__(self, other):
        if not isinstance(other, Space):
            return NotImplemented
        return self.index == other.index and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.index, self.rows))

    def __repr__(self):
        return f"<Space rank {self.rank} on {fmt_index(self.index)}>"

    def is_full(self):
        return self.rank == self.dim

    def is_zero(self):
        return self.rank == 0

    def vectors(self):
        """Basis rows as dicts label -> value."""
        return [dict(zip(self.index, r)) for r in self.rows]

    def column(self, lab):
        return self.position()[L(lab)]

    # -- method forms of the operations -------------------------------
    def perp(self):
        return perp(self)

    def restrict(self, T):
        return restrict(self, T)

    def contract(self, T):
        return contract(self, T)

    def rename(self, mapping):
        return rename(self, mapping)

    def sign_flip(self, T):
        return sign_flip(self, T)


def fmt_index(idx):
    return "{" + ",".join(str(x) for x in idx) + "}"


# -- constructors -------------------------------------------------------

def make_space(index, rows=(), form="generator", field=QQ):
    """Space from generator rows, or the solution set of constraint rows."""
    if form == "generator":
        return Space.from_rows(index, rows, field)
    if form == "constraint":
        return perp(Space.from_rows(index, rows, field))
    raise ValueError(f"unknown form {form!r}")


def full(index, field=QQ):
    idx = labels(index)
    n = len(idx)
    rows = tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))
    return Space(idx, rows, field, tuple(range(n)))


def zero(index, field=QQ):
    return Space(labels(index), (), field, ())


def identity_copy(pairs, field=QQ):
    """{(f, f)} coupling each label ``a`` with its partner ``b``."""
    pairs = [(L(a), L(b)) for a, b in pairs]
    idx = [a for a, _ in pairs] + [b for _, b in pairs]
    n = len(pairs)
    rows = []
    for i in range(n):
        r = [field.zero] * (2 * n)
        r[i] = field.one
        r[n + i] = field.one
        rows.append(r)
    return Space.from_rows(idx, rows, field)


def random_space(index, rank=None, field=QQ, rng=None, entries=(-2, -1, 0, 0, 1, 2, 3)):
    rng = rng or _random.Random()
    idx = labels(index)
    n = len(idx)
    if rank is None:
        rank = rng.randint(0, n)
    rows = [[field(rng.choice(entries)) for _ in range(n)] for _ in range(rank)]
    return Space._make(idx, rows, field)


# -- primitive operations ----------------------------------------------

def perp(V):
    """Orthogonal complement under the standard dot product."""
    n = V.dim
    f = V.field
    piv = set(V.pivots)
    free = [c for c in range(n) if c not in piv]
    rows = []
    for c in free:
        vec = [f.zero] * n
        vec[c] = f.one
        for row, pc in zip(V.rows, V.pivots):
            vec[pc] = f(-row[c]) if f.p else -row[c]
        rows.append(vec)
    return Space._make(V.index, rows, f)


def _subset(V, T):
    T = labels(T)
    pos = V.position()
    for t in T:
        if t not in pos:
            raise IndexMismatch(f"{t} not in {fmt_index(V.index)}")
    return T


def restrict(V, T):
    """V∘T: the T-parts of the vectors of V."""
    T = _subset(V, T)
    if T == V.index:
        return V
    pos = V.position()
    cols = [pos[t] for t in T]
    mat = [[r[c] for c in cols] for r in V.rows]
    return Space._make(T, mat, V.field)


def contract(V, T):
    """V×T: the T-parts of vectors of V that vanish outside T."""
    T = _subset(V, T)
    if T == V.index:
        return V
    pos = V.position()
    tset = set(T)
    other = [pos[x] for x in V.index if x not in tset]
    cols = [pos[t] for t in T]
    k = len(other)
    mat = [[r[c] for c in other] + [r[c] for c in cols] for r in V.rows]
    red, piv = V.field.rref(mat, k + len(T))
    keep = [r[k:] for r, c in zip(red, piv) if c >= k]
    return Space._make(T, keep, V.field)


def _pad(V, union_pos, n):
    pos = [union_pos[x] for x in V.index]
    z = V.field.zero
    out = []
    for r in V.rows:
        vec = [z] * n
        for c, v in zip(pos, r):
            vec[c] = v
        out.append(vec)
    return out


def vsum(*spaces):
    """Sum on the union of the index sets, padding each space with zeros."""
    if not spaces:
        raise ValueError("vsum needs at least one space")
    f = spaces[0].field
    for V in spaces:
        if V.field != f:
            raise IndexMismatch("fields differ")
    union = labels(x for V in spaces for x in V.index)
    upos = {lab: i for i, lab in enumerate(union)}
    mat = []
    for V in spaces:
        mat.extend(_pad(V, upos, len(union)))
    return Space._make(union, mat, f)


def intersect(*spaces):
    """Intersection on the union of the index sets, padding each space with
    the full space."""
    if len(spaces) == 1:
        return spaces[0]
    return perp(vsum(*[perp(V) for V in spaces]))


def direct_sum(*spaces):
    seen = set()
    for V in spaces:
        if seen & set(V.index):
            raise IndexMismatch("direct sum needs disjoint index sets")
        seen |= set(V.index)
    return vsum(*spaces)


def compose(VX, VY, skewed=False, allow_empty=False):
    """Matched (default) or skewed composition.

    Matched: pairs of vectors agreeing on the shared labels, with the shared
    part dropped. Skewed: the shared parts are negatives of each other.
    """
    X, Y = set(VX.index), set(VY.index)
    common = X & Y
    keep = (X | Y) - common
    if not keep and not allow_empty:
        raise NullSubexpression("composition leaves an empty index set")
    W = VY if skewed else sign_flip(VY, common)
    return contract(vsum(VX, W), keep)


def skew_compose(VX, VY, allow_empty=False):
    return compose(VX, VY, skewed=True, allow_empty=allow_empty)


def compose_chain(*spaces):
    """Left-to-right matched composition."""
    out = spaces[0]
    for V in spaces[1:]:
        out = compose(out, V)
    return out


def rename(V, mapping):
    """Relabel coordinates. ``mapping`` need only mention the moved labels."""
    mp = {L(a): L(b) for a, b in dict(mapping).items()}
    pos = V.position()
    for a in mp:
        if a not in pos:
            raise BadRename(f"{a} not in index")
    new = [mp.get(x, x) for x in V.index]
    if len(set(new)) != len(new):
        raise BadRename("renaming is not injective on the index")
    if all(a == b for a, b in zip(new, V.index)):
        return V
    order = sorted(range(len(new)), key=lambda i: new[i])
    sidx = tuple(new[i] for i in order)
    mat = [[r[i] for i in order] for r in V.rows]
    return Space._make(sidx, mat, V.field)


def sign_flip(V, T):
    """Negate the coordinates in T (labels of T outside the index are ignored)."""
    pos = V.position()
    cols = {pos[L(t)] for t in T if L(t) in pos}
    if not cols:
        return V
    f = V.field
    if f.p:
        mat = [[(f.p - x) % f.p if i in cols else x for i, x in enumerate(r)] for r in V.rows]
    else:
        mat = [[-x if i in cols else x for i, x in enumerate(r)] for r in V.rows]
    return Space._make(V.index, mat, f)


def copy_labels(xs, k):
    """Map each label to the copy carrying ``k`` more primes."""
    return {x: x.prime(k) for x in xs}


def fresh_offset(*label_sets):
    """A prime count guaranteed not to collide with any label given."""
    return max_primes(*label_sets) + 1


# -- fixture text format -----------------------------------------------

def parse_matrix(text, field=QQ):
    """Header line of labels, then one row of rationals per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty matrix text")
    header = [Label.parse(t) for t in lines[0].split()]
    rows = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != len(header):
            raise IndexMismatch("row length does not match header")
        rows.append([field(t) for t in toks])
    return Space.from_rows(header, rows, field)


def format_matrix(V):
    out = [" ".join(str(x) for x in V.index)]
    for r in V.rows:
        out.append(" ".join(V.field.fmt(x) for x in r))
    return "\n".join(out) + "\n"


def space_queries(V, w=None, U=None):
    """Rank plus optional membership / equality / containment answers."""
    out = {"rank": V.rank}
    if w is not None:
        out["member"] = V.contains(w)
    if U is not None:
        out["equal"] = (U._check_same(V) is None) and U == V
        out["subspace"] = U.issubspace(V)
    return out


def extend(V, T, x):
    """A vector of V whose T-part equals ``x`` (dict or list aligned with the
    canonical order of T), as a dict over V's index; ``None`` if there is none.

    Free coordinates outside T are set to zero, so the answer is deterministic.
    """
    T = _subset(V, T)
    f = V.field
    if isinstance(x, Mapping):
        x = {L(k): v for k, v in x.items()}
        x = [f(x.get(t, 0)) for t in T]
    else:
        x = [f(v) for v in x]
    pos = V.position()
    tset = set(T)
    rest = [pos[y] for y in V.index if y not in tset]
    tcols = [pos[t] for t in T]
    k = len(T)
    # T columns first so pivots on T come first in the echelon form
    mat = [[r[c] for c in tcols] + [r[c] for c in rest] for r in V.rows]
    red, piv = f.rref(mat, k + len(rest))
    vec = list(x) + [f.zero] * len(rest)
    out = [f.zero] * (k + len(rest))
    for row, c in zip(red, piv):
        if c >= k:
            break
        coef = vec[c]
        if coef:
            if f.p:
                vec = [(a - coef * b) % f.p for a, b in zip(vec, row)]
                out = [(a + coef * b) % f.p for a, b in zip(out, row)]
            else:
                vec = [a - coef * b for a, b in zip(vec, row)]
                out = [a + coef * b for a, b in zip(out, row)]
    if any(vec[:k]):
        return None
    res = {}
    for i, t in enumerate(T):
        res[t] = out[i]
    for j, c in enumerate(rest):
        res[V.index[c]] = out[k + j]
    return res


def idt_holds(VXY, VYZ):
    """(V_XY ↔ V_YZ)^⊥ == V_XY^⊥ ⇌ V_YZ^⊥."""
    lhs = perp(compose(VXY, VYZ, allow_empty=True))
    rhs = compose(perp(VXY), perp(VYZ), skewed=True, allow_empty=True)
    return lhs == rhs
