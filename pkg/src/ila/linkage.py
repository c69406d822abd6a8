"""Two-block linkage algebra.

A linkage is a space together with a partition of its labels into blocks.
Here live the operator-like operations on linkages (transpose,
intersection-sum, scalar multiplication), the constructive inversion solver,
pseudoidentities and the decoupling test.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import spaces as sp
from .errors import BadPartition, IndexMismatch
from .spaces import Space, labels


@dataclass(frozen=True)
class Linkage:
    space: Space
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(labels(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        flat = [x for b in blocks for x in b]
        if len(flat) != len(set(flat)) or set(flat) != set(self.space.index):
            raise BadPartition("blocks must partition the index set")

    def block_of(self, lab):
        lab = sp.L(lab)
        for i, b in enumerate(self.blocks):
            if lab in b:
                return i
        raise IndexMismatch(f"{lab} not in any block")

    def __eq__(self, other):
        return isinstance(other, Linkage) and self.space == other.space and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.space, self.blocks))


def _two(V):
    if isinstance(V, Linkage):
        if len(V.blocks) != 2:
            raise BadPartition("expected exactly two blocks")
        return V
    raise BadPartition("expected a Linkage")


def transpose(V):
    """(V^⊥) with the sign of the second block flipped."""
    V = _two(V)
    A, B = V.blocks
    return Linkage(sp.sign_flip(sp.perp(V.space), B), (A, B))


def _along(V, along):
    along = labels(along)
    if along not in V.blocks:
        raise BadPartition("'along' must be one of the blocks")
    other = V.blocks[0] if V.blocks[1] == along else V.blocks[1]
    return other, along


def intersection_sum(V1, V2, along):
    """{(f_A, g1 + g2) : (f_A, g1) ∈ V1, (f_A, g2) ∈ V2} where B = ``along``.

    Built by coupling copies of the two spaces through a sum-and-equate space
    and composing.
    """
    V1, V2 = _two(V1), _two(V2)
    if set(V1.blocks) != set(V2.blocks):
        raise BadPartition("linkages must share their blocks")
    A, B = _along(V1, along)
    f = V1.space.field
    k = sp.fresh_offset(V1.space.index)
    c1 = sp.copy_labels(V1.space.index, k)
    c2 = sp.copy_labels(V1.space.index, k + 1)
    S1 = sp.rename(V1.space, c1)
    S2 = sp.rename(V2.space, c2)
    rows = []
    idx = list(A) + [c1[a] for a in A] + [c2[a] for a in A] + list(B) + [c1[b] for b in B] + [c2[b] for b in B]
    n, m = len(A), len(B)
    width = 3 * n + 3 * m
    for i in range(n):
        r = [f.zero] * width
        r[i] = r[n + i] = r[2 * n + i] = f.one
        rows.append(r)
    for i in range(m):
        r = [f.zero] * width
        r[3 * n + i] = r[3 * n + m + i] = f.one
        rows.append(r)
        r = [f.zero] * width
        r[3 * n + i] = r[3 * n + 2 * m + i] = f.one
        rows.append(r)
    coupler = Space.from_rows(idx, rows, f)
    out = sp.compose(sp.direct_sum(S1, S2), coupler, allow_empty=True)
    return Linkage(out, V1.blocks)


def scalar_mul(lam, V, along):
    """λ^B V = {(f_A, λ g_B)} + V×B."""
    V = _two(V)
    A, B = _along(V, along)
    f = V.space.field
    lam = f(lam)
    pos = V.space.position()
    bcols = {pos[b] for b in B}
    mat = [[x * lam if i in bcols else x for i, x in enumerate(r)] for r in V.space.rows]
    scaled = Space._make(V.space.index, mat, f)
    return Linkage(sp.vsum(scaled, sp.contract(V.space, B)), V.blocks)


@dataclass
class IITReport:
    solvable: bool
    restriction_ok: bool
    contraction_ok: bool
    solution: Linkage | None
    uniqueness_certified: bool


def iit_solve(V_SP, V_SQ):
    """Solve V_SP ↔ V_PQ = V_SQ for V_PQ.

    Both arguments are two-block linkages sharing one block S. The answer is
    re-composed and compared before being returned.
    """
    V_SP, V_SQ = _two(V_SP), _two(V_SQ)
    shared = set(V_SP.blocks) & set(V_SQ.blocks)
    if len(shared) != 1:
        raise BadPartition("linkages must share exactly one block")
    S = shared.pop()
    P = V_SP.blocks[0] if V_SP.blocks[1] == S else V_SP.blocks[1]
    Q = V_SQ.blocks[0] if V_SQ.blocks[1] == S else V_SQ.blocks[1]
    if set(P) & set(Q) or set(P) & set(S) or set(Q) & set(S):
        raise BadPartition("S, P, Q must be pairwise disjoint")
    a, b = V_SP.space, V_SQ.space
    r_ok = sp.restrict(b, S) <= sp.restrict(a, S)
    c_ok = sp.contract(a, S) <= sp.contract(b, S)
    if not (r_ok and c_ok):
        return IITReport(False, r_ok, c_ok, None, False)
    sol = sp.compose(a, b)
    back = sp.compose(a, sol)
    if back != b:
        raise AssertionError("inversion solution failed to re-compose")
    if not (sp.restrict(sol, P) <= sp.restrict(a, P) and sp.contract(a, P) <= sp.contract(sol, P)):
        raise AssertionError("canonical solution violates its own minor conditions")
    # every solution meets those conditions, hence equals sol, exactly when
    # V_SP∘P is everything and V_SP×P is nothing
    uniq = sp.restrict(a, P).is_full() and sp.contract(a, P).is_zero()
    return IITReport(True, r_ok, c_ok, Linkage(sol, (P, Q)), uniq)


def pseudoidentity(V, block=0):
    """V_AB ↔ (V_AB)_{A'B}, a space on A ⊎ A' (A is ``V.blocks[block]``)."""
    V = _two(V)
    A = V.blocks[block]
    k = sp.fresh_offset(V.space.index)
    cp = sp.copy_labels(A, k)
    out = sp.compose(V.space, sp.rename(V.space, cp))
    return Linkage(out, (A, labels(cp.values())))


def is_pseudoidentity(V_AA, V_AB, block=0):
    """Test for a symmetric V_AA' against V_AB (A = ``V_AB.blocks[block]``)."""
    V_AB = _two(V_AB)
    A = V_AB.blocks[block]
    S = V_AA.space if isinstance(V_AA, Linkage) else V_AA
    return sp.restrict(V_AB.space, A) <= sp.restrict(S, A) and sp.contract(S, A) <= sp.contract(V_AB.space, A)


def acts_as_identity(V_AA, V_AB, block=0):
    """Definition check: V_AA' ↔ V_AB equals the copy (V_AB)_{A'B}."""
    V_AB = _two(V_AB)
    A = V_AB.blocks[block]
    S = V_AA.space if isinstance(V_AA, Linkage) else V_AA
    Ap = [x for x in S.index if x not in A]
    k = None
    for x in Ap:
        for a in A:
            if a.base == x.base and a.dotted == x.dotted:
                k = x.primes - a.primes
                break
        if k is not None:
            break
    target = sp.rename(V_AB.space, sp.copy_labels(A, k))
    return sp.compose(S, V_AB.space) == target


def is_decoupled(V, blocks=None):
    """True iff V is the direct sum of its restrictions to the blocks."""
    if isinstance(V, Linkage):
        blocks = V.blocks
        V = V.space
    return all(sp.restrict(V, b) == sp.contract(V, b) for b in blocks)


def distribute_check(V_BC, V1_AB, V2_AB=None, side="cross"):
    """Whether distributivity of ↔ over the intersection-sum is licensed.

    ``side="cross"``: V_BC×B ⊆ V1×B (then V_BC ↔ (V1 +_A V2) splits).
    ``side="dot"``: V_BC∘B ⊇ V1∘B (then V_BC ↔ (V1 +_B V2) = ... +_C ...).
    B is the block of ``V1_AB`` shared with ``V_BC``.
    """
    V_BC, V1_AB = _two(V_BC), _two(V1_AB)
    shared = set(V_BC.blocks) & set(V1_AB.blocks)
    if len(shared) != 1:
        raise BadPartition("linkages must share exactly one block")
    B = shared.pop()
    if side == "cross":
        return sp.contract(V_BC.space, B) <= sp.contract(V1_AB.space, B)
    if side == "dot":
        return sp.restrict(V1_AB.space, B) <= sp.restrict(V_BC.space, B)
    raise ValueError(side)
