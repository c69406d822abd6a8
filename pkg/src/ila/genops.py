"""Generalized autonomous systems, dynamical systems and their spectral calculus.

A genaut is a space on W ⊎ Ẇ, where Ẇ holds the dotted copies of the labels
of W. A GDS adds manifest labels M, optionally split into inputs Mu and
outputs My. Polynomials act on genauts through star products (relational
composition) combined with the Ẇ-intersection-sum.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import spaces as sp
from .errors import BadPartition, IndexMismatch, NotGenop
from .field import QQ
from .linkage import Linkage, intersection_sum, is_decoupled, scalar_mul
from .poly import Poly, matrix_min_poly, solve_combination
from .spaces import Label, Space, labels


def dotted(ws):
    return tuple(w.dot() for w in ws)


class Genaut:
    """A space on W ⊎ Ẇ."""

    __slots__ = ("space", "w")

    def __init__(self, space, w=None):
        if w is None:
            w = [x for x in space.index if not x.dotted]
        w = labels(w)
        if any(x.dotted for x in w):
            raise BadPartition("W labels must be undotted")
        if space.index != labels(w + dotted(w)):
            raise IndexMismatch("genaut space must live on W and its dotted copy")
        self.space = space
        self.w = w

    @property
    def wdot(self):
        return dotted(self.w)

    @property
    def field(self):
        return self.space.field

    def __eq__(self, other):
        return isinstance(other, Genaut) and self.space == other.space and self.w == other.w

    def __hash__(self):
        return hash((self.space, self.w))

    def __repr__(self):
        return f"<Genaut |W|={len(self.w)} rank {self.space.rank}>"

    def linkage(self):
        return Linkage(self.space, (self.w, self.wdot))

    def dot_w(self):
        """V∘W."""
        return sp.restrict(self.space, self.w)

    def cross_w(self):
        """V×W."""
        return sp.contract(self.space, self.w)

    def dot_wdot(self):
        """V∘Ẇ."""
        return sp.restrict(self.space, self.wdot)

    def cross_wdot(self):
        """V×Ẇ."""
        return sp.contract(self.space, self.wdot)


class GDS:
    """A space on W ⊎ Ẇ ⊎ M, with an optional input/output split of M."""

    __slots__ = ("space", "w", "mu", "my")

    def __init__(self, space, w, mu=(), my=()):
        w = labels(w)
        mu, my = labels(mu), labels(my)
        if set(mu) & set(my):
            raise BadPartition("Mu and My overlap")
        if space.index != labels(w + dotted(w) + mu + my):
            raise IndexMismatch("GDS space must live on W, Ẇ and M")
        self.space = space
        self.w = w
        self.mu = mu
        self.my = my

    @property
    def wdot(self):
        return dotted(self.w)

    @property
    def m(self):
        return labels(self.mu + self.my)

    @property
    def field(self):
        return self.space.field

    def __eq__(self, other):
        return (isinstance(other, GDS) and self.space == other.space and self.w == other.w
                and self.mu == other.mu and self.my == other.my)

    def __hash__(self):
        return hash((self.space, self.w, self.mu, self.my))

    def __repr__(self):
        return f"<GDS |W|={len(self.w)} |Mu|={len(self.mu)} |My|={len(self.my)}>"

    def dynamics(self):
        return self.w + self.wdot

    def restricted(self):
        """V∘WẆ as a genaut (manifest variables left free)."""
        return Genaut(sp.restrict(self.space, self.dynamics()), self.w)

    def contracted(self):
        """V×WẆ as a genaut (manifest variables forced to zero)."""
        return Genaut(sp.contract(self.space, self.dynamics()), self.w)

    def zero_input(self):
        """V ↔ (0_Mu ⊕ 𝔽_My): inputs off, outputs unobserved."""
        return Genaut(sp.restrict(sp.intersect(self.space, sp.zero(self.mu, self.field)), self.dynamics()), self.w)


@dataclass(frozen=True)
class GenautClass:
    usg: bool
    lsg: bool
    genop: bool
    decoupled: bool


# -- constructors --------------------------------------------------------

def wlabels(n, base="w"):
    return tuple(Label(f"{base}{i + 1}") for i in range(n))


def map_genaut(A, w=None, field=QQ):
    """Genaut of ẇ = A w (A square, acting on column vectors)."""
    n = len(A)
    w = tuple(sp.L(x) for x in w) if w is not None else wlabels(n)
    wd = dotted(w)
    rows = []
    for j in range(n):
        r = {w[j]: 1}
        for i in range(n):
            r[wd[i]] = A[i][j]
        rows.append(r)
    return Genaut(Space.from_rows(w + wd, rows, field), w)


def gds_from_matrices(A, B, C=None, D=None, w=None, mu=None, my=None, field=QQ):
    """GDS of ẇ = A w + B u, y = C w + D u."""
    n = len(A)
    k = len(B[0]) if B and B[0] is not None else 0
    C = C or []
    q = len(C)
    w = tuple(sp.L(x) for x in w) if w is not None else wlabels(n)
    mu = tuple(sp.L(x) for x in mu) if mu is not None else tuple(Label(f"u{i + 1}") for i in range(k))
    my = tuple(sp.L(x) for x in my) if my is not None else tuple(Label(f"y{i + 1}") for i in range(q))
    D = D or [[0] * k for _ in range(q)]
    wd = dotted(w)
    rows = []
    for j in range(n):
        r = {w[j]: 1}
        for i in range(n):
            r[wd[i]] = A[i][j]
        for i in range(q):
            r[my[i]] = C[i][j]
        rows.append(r)
    for j in range(k):
        r = {mu[j]: 1}
        for i in range(n):
            r[wd[i]] = B[i][j]
        for i in range(q):
            r[my[i]] = D[i][j]
        rows.append(r)
    return GDS(Space.from_rows(w + wd + mu + my, rows, field), w, mu, my)


def identity_genaut(w, field=QQ):
    w = labels(w)
    return Genaut(sp.identity_copy(zip(w, dotted(w)), field), w)


# -- classification ------------------------------------------------------

def _undot(V, ws):
    return sp.rename(V, {x: x.undot() for x in ws})


def _redot(V, ws):
    return sp.rename(V, {x: x.dot() for x in ws})


def classify(V):
    usg = _undot(V.dot_wdot(), V.wdot) <= V.dot_w()
    lsg = _undot(V.cross_wdot(), V.wdot) <= V.cross_w()
    return GenautClass(usg, lsg, usg and lsg, is_decoupled(V.space, (V.w, V.wdot)))


def is_genop(V):
    return classify(V).genop


def classify_gds(G):
    dw, dwd = sp.restrict(G.space, G.w), sp.restrict(G.space, G.wdot)
    cw, cwd = sp.contract(G.space, G.w), sp.contract(G.space, G.wdot)
    a = _undot(dwd, G.wdot) <= dw
    b = _undot(cwd, G.wdot) <= cw
    return {"regular": a and b, "restriction_condition": a, "contraction_condition": b}


# -- products and powers -------------------------------------------------

def star(V1, V2):
    """(V1)_{W W1} ↔ (V2)_{W1 Ẇ} with W1 a fresh copy of W."""
    if V1.w != V2.w:
        raise IndexMismatch("star needs the same W")
    k = sp.fresh_offset(V1.space.index, V2.space.index)
    mid = {x: x.undot().prime(k) for x in V1.wdot}
    a = sp.rename(V1.space, mid)
    b = sp.rename(V2.space, {x: x.prime(k) for x in V2.w})
    return Genaut(sp.compose(a, b), V1.w)


def zero_of(V):
    """V∘W ⊕ V×Ẇ."""
    return Genaut(sp.direct_sum(V.dot_w(), V.cross_wdot()), V.w)


def power(V, k):
    if k < 0:
        raise ValueError("negative power")
    if k == 0:
        ident = identity_genaut(V.w, V.field)
        out = intersection_sum(ident.linkage(), zero_of(V).linkage(), V.wdot)
        return Genaut(out.space, V.w)
    out = V
    for _ in range(k - 1):
        out = star(out, V)
    return out


def powers(V, k):
    """[V^(0), ..., V^(k)]."""
    out = [power(V, 0)]
    if k >= 1:
        out.append(V)
    for _ in range(2, k + 1):
        out.append(star(out[-1], V))
    return out


def scale_wdot(lam, V):
    return Genaut(scalar_mul(lam, V.linkage(), V.wdot).space, V.w)


def isum_wdot(V1, V2):
    return Genaut(intersection_sum(V1.linkage(), V2.linkage(), V1.wdot).space, V1.w)


def poly_eval(p, V):
    """p(V) = α_0^ẇ V^(0) +_ẇ ... +_ẇ α_n^ẇ V^(n), every term included."""
    p = p if isinstance(p, Poly) else Poly(p, V.field)
    coeffs = list(p.coeffs) or [V.field.zero]
    pw = powers(V, len(coeffs) - 1)
    out = scale_wdot(coeffs[0], pw[0])
    for a, P in zip(coeffs[1:], pw[1:]):
        out = isum_wdot(out, scale_wdot(a, P))
    return out


def annihilates(p, V):
    return is_decoupled(poly_eval(p, V).space, (V.w, V.wdot))


# -- spectral computations -----------------------------------------------

def quotient_operator(V):
    """Matrix of the map induced by a genop on (V∘W)/(V×Ẇ)_W.

    Returns (representatives, matrix) where ``matrix[i][j]`` is the i-th
    coordinate of the image of representative j.
    """
    if not is_genop(V):
        raise NotGenop("the quotient map is only defined for genops")
    f = V.field
    U = V.dot_w()
    K = _undot(V.cross_wdot(), V.wdot)
    # representatives: rows of U completing K, chosen from the echelon basis
    basis_rows = [list(r) for r in K.rows]
    reps = []
    for r in U.rows:
        trial = Space._make(U.index, basis_rows + [list(r)], f)
        if trial.rank > len(basis_rows):
            basis_rows.append(list(r))
            reps.append(list(r))
    m = len(reps)
    kvecs = [list(r) for r in K.rows]
    cols = []
    for r in reps:
        x = dict(zip(U.index, r))
        full = sp.extend(V.space, V.w, x)
        y = [full[w.dot()] for w in U.index]
        coef = solve_combination(reps + kvecs, y, f)
        if coef is None:
            raise AssertionError("image left V∘W; input is not a genop")
        cols.append(coef[:m])
    M = [[cols[j][i] for j in range(m)] for i in range(m)]
    return reps, M


def minimal_annihilating_poly(V, certify=True, allow_constant=False):
    """Monic annihilating polynomial of least degree (≥1 unless
    ``allow_constant``) of a genop."""
    if not is_genop(V):
        raise NotGenop("minimal annihilating polynomials are defined for genops only")
    _, M = quotient_operator(V)
    p = matrix_min_poly(M, V.field)
    if p.degree == 0 and not allow_constant:
        p = Poly.s(V.field)
    if certify and not annihilates(p, V):
        raise AssertionError("computed polynomial fails to annihilate")
    return p


def annihilator_by_sweep(V, max_degree=None):
    """Least-degree monic annihilator found from star powers alone.

    For each degree d the coefficients solve a linear system built from one
    representative of x ↔ V^(i) per basis vector x of V∘W, reduced modulo
    V×Ẇ. The answer is then checked by evaluating p(V).
    """
    f = V.field
    U = V.dot_w()
    K = _undot(V.cross_wdot(), V.wdot)
    n = len(V.w)
    top = max_degree if max_degree is not None else n + 1
    pw = [power(V, 0), V]
    for d in range(1, top + 1):
        while len(pw) <= d:
            pw.append(star(pw[-1], V))
        cols = []
        for P in pw[: d + 1]:
            col = []
            for r in U.rows:
                full = sp.extend(P.space, P.w, dict(zip(U.index, r)))
                y = [full[w.dot()] for w in U.index]
                col.extend(K.residual(y))
            cols.append(col)
        target = [-c for c in cols[d]]
        coef = solve_combination(cols[:d], target, f)
        if coef is not None:
            p = Poly(list(coef) + [1], f)
            if not annihilates(p, V):
                raise AssertionError("sweep candidate fails direct evaluation")
            return p
    return None


# -- adjoint -------------------------------------------------------------

def adjoint(V):
    """(V^⊥) with the W columns negated and W, Ẇ exchanged.

    For a GDS the input columns are negated as well and the roles of the input
    and output labels are swapped, which makes the operation an involution on
    the same label set.
    """
    if not isinstance(V, (Genaut, GDS)):
        raise BadPartition("adjoint needs a Genaut or a GDS")
    P = sp.perp(V.space)
    swap = {}
    for x in V.w:
        swap[x] = x.dot()
        swap[x.dot()] = x
    if isinstance(V, GDS):
        P = sp.sign_flip(P, V.w + V.mu)
        return GDS(sp.rename(P, swap), V.w, V.my, V.mu)
    P = sp.sign_flip(P, V.w)
    return Genaut(sp.rename(P, swap), V.w)
