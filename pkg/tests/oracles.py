"""Brute-force and sympy oracles shared by the test modules.

Nothing here calls into the package's own space algebra except to build a
Space from an explicit vector set, so every oracle answer is independent of
the implementation under test.
"""
import itertools
import random

import sympy

from ila.field import GF, QQ
from ila.spaces import Label, Space, labels


def labs(*names):
    return labels(names)


def vec_set(V):
    """Every vector of a space over GF(p), as tuples aligned with V.index."""
    p = V.field.p
    assert p, "brute force needs a finite field"
    out = set()
    for coef in itertools.product(range(p), repeat=V.rank):
        v = [0] * V.dim
        for c, r in zip(coef, V.rows):
            for i, x in enumerate(r):
                v[i] = (v[i] + c * x) % p
        out.add(tuple(v))
    return out


def from_set(index, vecs, field):
    return Space.from_rows(index, [list(v) for v in vecs], field)


def _by_label(V, vecs):
    return [dict(zip(V.index, v)) for v in vecs]


def brute_restrict(V, T):
    T = labels(T)
    return from_set(T, {tuple(d[t] for t in T) for d in _by_label(V, vec_set(V))}, V.field)


def brute_contract(V, T):
    T = labels(T)
    rest = [x for x in V.index if x not in T]
    good = [d for d in _by_label(V, vec_set(V)) if all(d[x] == 0 for x in rest)]
    return from_set(T, {tuple(d[t] for t in T) for d in good}, V.field)


def brute_perp(V):
    p = V.field.p
    S = vec_set(V)
    out = []
    for g in itertools.product(range(p), repeat=V.dim):
        if all(sum(a * b for a, b in zip(f, g)) % p == 0 for f in S):
            out.append(g)
    return from_set(V.index, out, V.field)


def brute_compose(VX, VY, skewed=False):
    p = VX.field.p
    common = set(VX.index) & set(VY.index)
    keep = labels((set(VX.index) | set(VY.index)) - common)
    out = set()
    ys = _by_label(VY, vec_set(VY))
    for g in _by_label(VX, vec_set(VX)):
        for h in ys:
            if all((g[c] + h[c]) % p == 0 if skewed else g[c] == h[c] for c in common):
                merged = {**g, **h}
                out.add(tuple(merged[k] for k in keep))
    return from_set(keep, out, VX.field)


def _pad_set(V, union):
    return [tuple(d.get(u, 0) for u in union) for d in _by_label(V, vec_set(V))]


def brute_sum(V1, V2):
    p = V1.field.p
    union = labels(set(V1.index) | set(V2.index))
    a, b = _pad_set(V1, union), _pad_set(V2, union)
    return from_set(union, {tuple((x + y) % p for x, y in zip(u, v)) for u in a for v in b}, V1.field)


def brute_intersect(V1, V2):
    union = labels(set(V1.index) | set(V2.index))
    p = V1.field.p
    s1, s2 = vec_set(V1), vec_set(V2)
    out = []
    for v in itertools.product(range(p), repeat=len(union)):
        d = dict(zip(union, v))
        if tuple(d[x] for x in V1.index) in s1 and tuple(d[x] for x in V2.index) in s2:
            out.append(v)
    return from_set(union, out, V1.field)


def all_subspaces(index, field):
    """Every subspace of field^index (small index sets only)."""
    index = labels(index)
    p = field.p
    vectors = [list(v) for v in itertools.product(range(p), repeat=len(index)) if any(v)]
    seen = {Space.from_rows(index, [], field)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for S in frontier:
            for v in vectors:
                T = Space.from_rows(index, [list(r) for r in S.rows] + [v], field)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(seen, key=lambda S: (S.rank, S.rows))


def random_q_space(rng, index, rank=None):
    index = labels(index)
    if rank is None:
        rank = rng.randint(0, len(index))
    rows = [[rng.choice((-2, -1, 0, 0, 1, 1, 2, 3)) for _ in index] for _ in range(rank)]
    return Space.from_rows(index, rows, QQ)


def sympy_matrix(V):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in V.rows]) \
        if V.rows else sympy.zeros(0, V.dim)


def sympy_perp(V):
    M = sympy_matrix(V)
    if M.rows == 0:
        basis = [sympy.eye(V.dim)[:, i] for i in range(V.dim)]
    else:
        basis = M.nullspace()
    rows = [[sympy_to_q(x) for x in b] for b in basis]
    return Space.from_rows(V.index, rows, QQ)


def sympy_to_q(x):
    from fractions import Fraction
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def random_matrix(rng, n, m, entries=(-2, -1, 0, 0, 1, 2)):
    return [[rng.choice(entries) for _ in range(m)] for _ in range(n)]


def sympy_minpoly(A):
    """Monic minimal polynomial coefficients, lowest degree first."""
    M = sympy.Matrix(A)
    n = M.rows
    s = sympy.Symbol("s")
    if n == 0:
        return [0, 1]
    powers = [sympy.eye(n)]
    for d in range(1, n + 1):
        powers.append(powers[-1] * M)
        cols = sympy.Matrix.hstack(*[P.reshape(n * n, 1) for P in powers[:d]])
        target = -powers[d].reshape(n * n, 1)
        try:
            sol, params = cols.gauss_jordan_solve(target)
        except ValueError:
            continue
        sol = sol.subs({t: 0 for t in params})
        return [sympy_to_q(x) for x in sol] + [1]
    raise AssertionError("unreachable")


def krylov(A, B):
    """Column span of [B, AB, ..., A^{n-1}B] as row vectors (sympy)."""
    M = sympy.Matrix(A)
    Bm = sympy.Matrix(B)
    n = M.rows
    blocks = [Bm]
    for _ in range(n - 1):
        blocks.append(M * blocks[-1])
    K = sympy.Matrix.hstack(*blocks)
    return [[sympy_to_q(x) for x in K[:, j]] for j in range(K.cols)]


def unobservable(A, C):
    """Null space of [C; CA; ...; CA^{n-1}] (sympy)."""
    M = sympy.Matrix(A)
    Cm = sympy.Matrix(C)
    n = M.rows
    blocks = [Cm]
    for _ in range(n - 1):
        blocks.append(blocks[-1] * M)
    O = sympy.Matrix.vstack(*blocks)
    return [[sympy_to_q(x) for x in v] for v in O.nullspace()]


GF2, GF3, GF5 = GF(2), GF(3), GF(5)
__all__ = [n for n in dir() if not n.startswith("_")] + ["Label", "random"]


def _matvec(M, v):
    return [sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M))]


def random_invertible(rng, n, entries=(-1, 0, 0, 1, 2)):
    while True:
        T = [[rng.choice(entries) for _ in range(n)] for _ in range(n)]
        if n == 0 or sympy.Matrix(T).det() != 0:
            return T


def random_genop(rng, n, field=QQ, r=None, k=None, w=None):
    """A genop with known structure, plus the matrix of its quotient map.

    In coordinates y = T⁻¹w: V∘W = span(e_1..e_r), V×Ẇ = V×W = span(e_1..e_k),
    and the dynamics act on V∘W by a block upper triangular M with M(K) ⊆ K.
    The induced map on (V∘W)/(V×Ẇ) is the lower-right block M22.
    """
    from ila.genops import Genaut, wlabels
    w = w or wlabels(n)
    r = rng.randint(0, n) if r is None else r
    k = rng.randint(0, r) if k is None else k
    T = random_invertible(rng, n)
    M = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            if not (i >= k and j < k):
                M[i][j] = rng.choice((-2, -1, 0, 0, 1, 2))
    cols = [[T[i][j] for i in range(n)] for j in range(n)]   # T e_j
    rows = []
    for j in range(r):
        x = cols[j]
        img = [0] * n
        for i in range(r):
            if M[i][j]:
                img = [a + M[i][j] * b for a, b in zip(img, cols[i])]
        rows.append(dict(zip(w, x)) | {t.dot(): v for t, v in zip(w, img)})
    for j in range(k):
        rows.append({t.dot(): v for t, v in zip(w, cols[j])})
        rows.append(dict(zip(w, cols[j])))
    from ila.genops import dotted
    V = Genaut(Space.from_rows(w + dotted(w), rows, field), w)
    M22 = [row[k:] for row in M[k:]]
    return V, M22


def ackermann(A, b, coeffs):
    """Single-input gain row F with char(A + bF) = coeffs (lowest degree first)."""
    M = sympy.Matrix(A)
    bv = sympy.Matrix(b)
    n = M.rows
    ctrb = sympy.Matrix.hstack(*[M ** i * bv for i in range(n)])
    pA = sympy.zeros(n, n)
    for i, c in enumerate(coeffs):
        pA += sympy.Rational(c) * M ** i
    last = sympy.zeros(1, n)
    last[n - 1] = 1
    F = -last * ctrb.inv() * pA
    return [sympy_to_q(x) for x in F]


def is_controllable(A, B):
    return sympy.Matrix.hstack(*[sympy.Matrix(A) ** i * sympy.Matrix(B) for i in range(len(A))]).rank() == len(A)


def random_graph(rng, n_vertices=6, n_edges=12, prefix="e"):
    """Random directed multigraph; edge labels e1..en, vertices 0..n-1."""
    edges = []
    for i in range(1, n_edges + 1):
        t = rng.randrange(n_vertices)
        h = rng.randrange(n_vertices)
        edges.append((f"{prefix}{i}", str(t), str(h)))
    return edges


def incidence_voltage(edges, index):
    """Row space of the full (unreduced) incidence matrix."""
    verts = sorted({v for _, t, h in edges for v in (t, h)})
    col = {str(lab): j for j, lab in enumerate(index)}
    rows = {v: [0] * len(index) for v in verts}
    for lab, t, h in edges:
        if t != h:
            rows[t][col[str(lab)]] += 1
            rows[h][col[str(lab)]] -= 1
    return Space.from_rows(index, list(rows.values()), QQ)


def sympy_compose(VX, VY):
    """Matched composition from generator matrices: pick coefficient vectors
    (a, b) with a·G_X = b·G_Y on the shared labels and keep the rest."""
    shared = [x for x in VX.index if x in VY.index]
    ox = [i for i, x in enumerate(VX.index) if x not in shared]
    oy = [i for i, x in enumerate(VY.index) if x not in shared]
    sx = [VX.index.index(x) for x in shared]
    sy = [VY.index.index(x) for x in shared]
    Gx, Gy = sympy_matrix(VX), sympy_matrix(VY)
    ra, rb = Gx.rows, Gy.rows
    M = sympy.Matrix.vstack(Gx.extract(list(range(ra)), sx), -Gy.extract(list(range(rb)), sy))
    index = tuple(VX.index[i] for i in ox) + tuple(VY.index[i] for i in oy)
    rows = []
    for c in (M.T.nullspace() if ra + rb else []):
        a, b = c[:ra, :].T, c[ra:, :].T
        left = a * Gx.extract(list(range(ra)), ox) if ox else []
        right = b * Gy.extract(list(range(rb)), oy) if oy else []
        rows.append([sympy_to_q(x) for x in list(left) + list(right)])
    return Space.from_rows(index, rows, QQ)


def incidence_rank(edges, subset):
    """Rank of the incidence columns of the given edge labels (sympy)."""
    verts = list(dict.fromkeys(v for _, t, h in edges for v in (t, h)))
    row = {v: i for i, v in enumerate(verts)}
    keep = [e for e in edges if str(e[0]) in {str(x) for x in subset}]
    if not keep or not verts:
        return 0
    M = sympy.zeros(len(verts), len(keep))
    for j, (_, t, h) in enumerate(keep):
        if t != h:
            M[row[t], j] += 1
            M[row[h], j] -= 1
    return M.rank()
