import random
import time

import pytest

from ila import spaces as sp
from ila.control import (basic_sequence, feedback, feedback_apply, feedback_exists, feedback_law_dual,
                         feedback_recover, grow_to_full, injection, injection_apply, injection_exists,
                         injection_recover, place_poles, place_poles_injection, retarget,
                         retarget_lambdas)
from ila.errors import (BadPartition, DegreeMismatch, NothingToPlace, NotReachableByFeedback,
                        NotReachableByInjection, UnplaceableFactor)
from ila.field import QQ
from ila.genops import (GDS, Genaut, adjoint, annihilates, dotted, gds_from_matrices, map_genaut,
                        minimal_annihilating_poly, wlabels)
from ila.poly import Poly

from oracles import ackermann, is_controllable, random_matrix, random_q_space


def mat_add(A, B):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_mul(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def gain_law(src, F):
    """{(w, u) : u = F w} on W ⊎ Mu."""
    rows = []
    for j, w in enumerate(src.w):
        rows.append({w: 1} | {u: F[i][j] for i, u in enumerate(src.mu)})
    return sp.make_space(src.w + src.mu, rows)


def injection_gain_law(src, K):
    """{(ẇ, y) : ẇ = K y} on Ẇ ⊎ My."""
    rows = []
    for j, y in enumerate(src.my):
        rows.append({y: 1} | {w.dot(): K[i][j] for i, w in enumerate(src.w)})
    return sp.make_space(src.wdot + src.my, rows)


# -- feedback and injection -----------------------------------------------

def test_state_feedback_gives_a_plus_bf():
    A, B, C = [[0, 1], [-2, 3]], [[0], [1]], [[1, 0]]
    F = [[4, -5]]
    src = gds_from_matrices(A, B, C)
    out = feedback(src, mode="apply", law=gain_law(src, F))
    assert out == map_genaut(mat_add(A, mat_mul(B, F)))
    law = feedback(src, out, mode="recover")
    assert law.linkage == gain_law(src, F) and law.unique


def test_zero_feedback_law():
    A, B = [[1, 2], [0, 1]], [[1], [1]]
    src = gds_from_matrices(A, B)
    law = feedback_recover(src, map_genaut(A))
    assert law.linkage == sp.make_space(src.w + src.mu, [{"w1": 1}, {"w2": 1}])


def test_feedback_unreachable():
    src = gds_from_matrices([[1, 0], [0, 1]], [[1], [0]])
    target = map_genaut([[1, 0], [0, 2]])
    assert not feedback(src, target)
    with pytest.raises(NotReachableByFeedback):
        feedback(src, target, mode="recover")
    with pytest.raises(NotReachableByFeedback):
        feedback(src, target, mode="apply", law=gain_law(src, [[0, 0]]))
    with pytest.raises(BadPartition):
        feedback_apply(src, sp.full(["w1"]))


def test_output_injection_gives_a_minus_kc():
    A, B, C = [[0, 1], [-2, 3]], [[0], [1]], [[1, 0]]
    K = [[3], [7]]
    src = gds_from_matrices(A, B, C)
    out = injection(src, mode="apply", law=injection_gain_law(src, K))
    assert out == map_genaut(mat_add(A, [[-x for x in r] for r in mat_mul(K, C)]))
    law = injection(src, out, mode="recover")
    assert injection_apply(src, law.linkage) == out and law.unique


def test_zero_injection_and_unreachable():
    A, C = [[1, 2], [0, 1]], [[1, 0]]
    src = gds_from_matrices(A, [[0], [0]], C)
    law = injection_recover(src, map_genaut(A))
    assert law.linkage == sp.make_space(src.wdot + src.my, [{"y1": 1}])
    with pytest.raises(NotReachableByInjection):
        injection_recover(src, map_genaut([[5, 0], [0, 5]]))


def _random_gds(rng, n, m, q):
    w = wlabels(n)
    mu = tuple(sp.L(f"u{i + 1}") for i in range(m))
    my = tuple(sp.L(f"y{i + 1}") for i in range(q))
    idx = w + dotted(w) + mu + my
    return GDS(random_q_space(rng, idx, rng.randint(len(idx) // 2, len(idx))), w, mu, my)


def test_feedback_injection_duality_random():
    rng = random.Random(1)
    reachable = 0
    for _ in range(100):
        src = _random_gds(rng, rng.randint(1, 3), rng.randint(0, 2), rng.randint(0, 2))
        if rng.random() < 0.6 and src.mu:
            law = random_q_space(rng, src.w + src.mu)
            target = feedback_apply(src, law)
        else:
            target = Genaut(random_q_space(rng, src.w + src.wdot), src.w)
        adj, tadj = adjoint(src), adjoint(target)
        ok = feedback_exists(src, target)
        assert ok == injection_exists(adj, tadj)
        if ok:
            reachable += 1
            fl = feedback_recover(src, target)
            il = injection_recover(adj, tadj)
            assert feedback_law_dual(fl.linkage, src) == il.linkage
            assert feedback_law_dual(il.linkage, adj) == fl.linkage
            assert fl.unique == il.unique
    assert reachable > 30


# -- basic sequence and retargeting --------------------------------------------

CHAIN = ([[0, 1, 0], [0, 0, 1], [0, 0, 0]], [[0], [0], [1]])


def test_basic_sequence_chain_of_integrators():
    V1 = gds_from_matrices(*CHAIN).restricted()
    seq = basic_sequence(V1)
    assert seq.k == 3 and seq.poly == Poly([0, 0, 0, 1])
    assert annihilates(Poly([0, 0, 0, 1]), seq.genop)
    # claim: x^k + Σ b_j x^j lies in V^com
    acc = list(seq.vectors[-1])
    for j in range(seq.k):
        acc = [a + seq.poly[j] * x for a, x in zip(acc, seq.vectors[j])]
    assert seq.vcom.contains(acc)


def test_basic_sequence_rejects_genop():
    with pytest.raises(NothingToPlace):
        basic_sequence(map_genaut([[1, 0], [0, 1]]))


def test_retarget_lambdas():
    b = Poly([2, 5, 1])
    assert retarget_lambdas(b, b) == [1, 0, 0]
    b, c = Poly([QQ(3), 1]), Poly([QQ(-4), 1])
    assert retarget_lambdas(b, c) == [1, 7]


def test_retarget_chain():
    V1 = gds_from_matrices(*CHAIN).restricted()
    seq = basic_sequence(V1)
    c = Poly.from_roots([-1, -2, -3])
    end = retarget(seq, c)
    assert annihilates(c, end.genop)
    with pytest.raises(DegreeMismatch):
        retarget(seq, Poly.from_roots([-1]))


def test_grow_to_full_identity_case():
    V1 = gds_from_matrices(*CHAIN).restricted()
    seq = basic_sequence(V1)
    assert grow_to_full(seq.genop, V1) == seq.genop


# -- pole placement -----------------------------------------------------------

def _controllable_single(rng, n):
    while True:
        A, b = random_matrix(rng, n, n), random_matrix(rng, n, 1)
        if is_controllable(A, b):
            return A, b


def test_place_poles_matches_ackermann():
    rng = random.Random(2)
    for _ in range(15):
        n = rng.randint(1, 5)
        A, b = _controllable_single(rng, n)
        target = Poly.from_roots([rng.randint(-4, 3) for _ in range(n)])
        src = gds_from_matrices(A, b)
        law = place_poles(src, target)
        assert minimal_annihilating_poly(law.achieved) == target
        F = ackermann(A, b, target.coeffs)
        assert law.linkage == gain_law(src, [F])


def test_place_poles_uncontrollable_factor():
    src = gds_from_matrices([[1, 0], [0, 2]], [[1], [0]])
    with pytest.raises(UnplaceableFactor) as e:
        place_poles(src, Poly.from_roots([-1, -1]))
    assert e.value.factor == Poly.from_roots([2])
    law = place_poles(src, Poly.from_roots([2, -5]))
    assert minimal_annihilating_poly(law.achieved) == Poly.from_roots([2, -5])


def test_place_poles_current_polynomial_is_zero_law():
    # no actuation: V¹ is the genop of A, and its own polynomial is the target
    src = gds_from_matrices([[1, 1], [0, 1]], [[0], [0]])
    law = place_poles(src, Poly.from_roots([1, 1]))
    assert law.achieved == map_genaut([[1, 1], [0, 1]])
    assert law.linkage == sp.make_space(src.w + src.mu, [{"w1": 1}, {"w2": 1}, {"u1": 1}])


def test_place_poles_fully_actuated():
    src = gds_from_matrices([[1, 2], [3, 4]], [[1, 0], [0, 1]])
    target = Poly.from_roots([-1, -2])
    law = place_poles(src, target)
    assert minimal_annihilating_poly(law.achieved) == target
    with pytest.raises(DegreeMismatch):
        place_poles(src, Poly.from_roots([-1]))


def test_place_poles_nothing_to_place():
    # genop V¹ with no actuation at all
    src = gds_from_matrices([[1, 0], [0, 2]], [[0], [0]])
    with pytest.raises(NothingToPlace):
        place_poles(src, Poly.from_roots([-1, -2]))


def test_place_poles_injection_observer():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(1, 4)
        A, b = _controllable_single(rng, n)
        c = [[x[0] for x in b]]
        At = [[A[j][i] for j in range(n)] for i in range(n)]
        src = gds_from_matrices(At, [[0]] * n, c)
        target = Poly.from_roots([rng.randint(-3, 3) for _ in range(n)])
        law = place_poles_injection(src, target)
        assert law.kind == "injection"
        assert minimal_annihilating_poly(law.achieved) == target


def test_place_poles_deterministic():
    rng = random.Random(4)
    A, b = _controllable_single(rng, 4)
    src = gds_from_matrices(A, b)
    t = Poly.from_roots([-1, -2, -3, -4])
    assert place_poles(src, t).linkage == place_poles(src, t).linkage
