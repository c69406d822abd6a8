import random

import pytest
from hypothesis import given, strategies as st

from ila import spaces as sp
from ila.errors import BadPartition, NotGenop
from ila.field import QQ
from ila.genops import (GDS, Genaut, adjoint, annihilates, annihilator_by_sweep, classify, classify_gds,
                        gds_from_matrices, identity_genaut, isum_wdot, map_genaut,
                        minimal_annihilating_poly, poly_eval, power, scale_wdot, star, wlabels, zero_of)
from ila.linkage import is_decoupled
from ila.poly import Poly

from oracles import random_genop, random_matrix, random_q_space, sympy_minpoly

W2 = wlabels(2)


def usg_not_lsg():
    # ẇ = A w + B u with u free: ∘W = 𝔽, ×Ẇ = range B, ×W = A⁻¹ range B
    g = gds_from_matrices([[0, 0], [1, 0]], [[1], [0]])
    return g.restricted()


def matmul(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def random_genaut(rng, n):
    from ila.genops import dotted
    w = wlabels(n)
    return Genaut(random_q_space(rng, w + dotted(w)), w)


# -- classification -------------------------------------------------------

def test_map_genaut_is_genop():
    c = classify(map_genaut([[1, 2], [3, 4]]))
    assert c.usg and c.lsg and c.genop and not c.decoupled


def test_usg_not_lsg_fixture_and_adjoint():
    V = usg_not_lsg()
    c = classify(V)
    assert c.usg and not c.lsg
    ca = classify(adjoint(V))
    assert ca.lsg and not ca.usg


def test_zero_genaut():
    V = Genaut(sp.zero(W2 + tuple(w.dot() for w in W2)), W2)
    c = classify(V)
    assert c.genop and c.decoupled


def test_classify_gds_regular():
    g = gds_from_matrices([[1, 0], [0, 2]], [[1], [1]], [[1, 0]])
    assert classify_gds(g)["regular"]


def test_genaut_index_checks():
    from ila.errors import IndexMismatch
    with pytest.raises(IndexMismatch):
        Genaut(sp.full(["a", "b"]), ["a"])
    with pytest.raises(BadPartition):
        adjoint(sp.full(["a"]))


# -- star and powers --------------------------------------------------------

def test_star_of_maps_multiplies():
    rng = random.Random(1)
    for _ in range(30):
        A, B = random_matrix(rng, 3, 3), random_matrix(rng, 3, 3)
        assert star(map_genaut(A), map_genaut(B)) == map_genaut(matmul(B, A))


def test_star_with_zero_for_genops():
    rng = random.Random(2)
    for _ in range(40):
        V, _ = random_genop(rng, rng.randint(1, 4))
        Z = zero_of(V)
        assert star(V, Z) == Z == star(Z, V)


def test_nilpotent_square():
    V = map_genaut([[0, 1], [0, 0]])
    sq = star(V, V)
    assert sq.space == sp.direct_sum(sp.full(W2), sp.zero(tuple(w.dot() for w in W2)))
    assert is_decoupled(sq.space, (sq.w, sq.wdot))


def test_power_examples():
    rng = random.Random(3)
    V = map_genaut([[1, 2], [0, 3]])
    assert power(V, 1) == V
    assert power(V, 0) == identity_genaut(W2)
    for _ in range(30):
        G, _ = random_genop(rng, rng.randint(1, 4))
        for k in range(1, 5):
            P = power(G, k)
            assert P.dot_w() == G.dot_w() and P.cross_wdot() == G.cross_wdot()
        P0 = power(G, 0)
        assert classify(P0).genop
        assert P0.dot_w() == G.dot_w() and P0.cross_wdot() == G.cross_wdot()


# -- polynomials ------------------------------------------------------------

def test_poly_eval_identity_and_rc_scalar():
    rng = random.Random(4)
    G, _ = random_genop(rng, 3)
    assert poly_eval(Poly.s(), G) == G
    V = map_genaut([[QQ("-2/3")]])
    assert annihilates(Poly([QQ("2/3"), 1]), V)
    assert minimal_annihilating_poly(V) == Poly([QQ("2/3"), 1])


def test_min_poly_examples():
    assert minimal_annihilating_poly(map_genaut([[0, 1], [0, 0]])) == Poly([0, 0, 1])
    Z = Genaut(sp.zero(W2 + tuple(w.dot() for w in W2)), W2)
    assert minimal_annihilating_poly(Z) == Poly.s()
    with pytest.raises(NotGenop):
        minimal_annihilating_poly(usg_not_lsg())


def test_min_poly_matches_structure_oracle_and_sweep():
    rng = random.Random(5)
    for _ in range(60):
        V, M22 = random_genop(rng, rng.randint(0, 5))
        expect = sympy_minpoly(M22) if M22 else [0, 1]
        if expect == [1]:
            expect = [0, 1]
        p = minimal_annihilating_poly(V)
        assert list(p.coeffs) == expect
        assert annihilator_by_sweep(V) == p


def test_min_poly_of_matrices_matches_sympy():
    rng = random.Random(6)
    for _ in range(40):
        n = rng.randint(1, 5)
        A = random_matrix(rng, n, n)
        assert list(minimal_annihilating_poly(map_genaut(A)).coeffs) == sympy_minpoly(A)


def test_poly_eval_commutes_with_adjoint():
    rng = random.Random(7)
    for _ in range(60):
        V = random_genaut(rng, rng.randint(1, 3))
        p = Poly([rng.randint(-2, 2) for _ in range(rng.randint(1, 4))] + [1])
        assert adjoint(poly_eval(p, V)) == poly_eval(p, adjoint(V))


def _rand_poly(rng, deg):
    return Poly([rng.randint(-2, 2) for _ in range(deg)] + [rng.choice([1, 2, -1])])


def test_factorization_identities():
    rng = random.Random(8)
    for _ in range(40):
        V, _ = random_genop(rng, rng.randint(1, 4))
        p1, q = _rand_poly(rng, rng.randint(1, 2)), _rand_poly(rng, rng.randint(1, 2))
        assert poly_eval(p1 * q, V) == star(poly_eval(p1, V), poly_eval(q, V))
        assert star(poly_eval(p1, V), poly_eval(q, V)) == star(poly_eval(q, V), poly_eval(p1, V))
        a = _rand_poly(rng, rng.randint(0, 1))
        lhs = poly_eval(p1 * q + a, V)
        rhs = isum_wdot(star(poly_eval(p1, V), poly_eval(q, V)), poly_eval(a, V))
        assert lhs == rhs


def test_annihilated_genop_equals_zero():
    rng = random.Random(9)
    for _ in range(40):
        V, _ = random_genop(rng, rng.randint(1, 4))
        p = minimal_annihilating_poly(V)
        assert poly_eval(p, V) == zero_of(V)
        P = poly_eval(_rand_poly(rng, 2), V)
        assert classify(P).genop
        assert P.dot_w() == V.dot_w() and P.cross_wdot() == V.cross_wdot()


def test_scale_wdot_zero_gives_zero():
    rng = random.Random(10)
    for _ in range(20):
        V = random_genaut(rng, 2)
        assert scale_wdot(0, V) == zero_of(V)


# -- adjoint -------------------------------------------------------------------

def test_adjoint_involution_and_classes():
    rng = random.Random(11)
    for _ in range(100):
        V = random_genaut(rng, rng.randint(1, 3))
        A = adjoint(V)
        assert adjoint(A) == V
        c, ca = classify(V), classify(A)
        assert c.usg == ca.lsg and c.lsg == ca.usg and c.genop == ca.genop and c.decoupled == ca.decoupled


def test_adjoint_of_map_is_transpose_like():
    A = [[1, 2], [3, 4]]
    V = adjoint(map_genaut(A))
    At = [[A[j][i] for j in range(2)] for i in range(2)]
    assert V == map_genaut(At)


def test_adjoint_gds_involution():
    rng = random.Random(12)
    for _ in range(30):
        g = gds_from_matrices(random_matrix(rng, 2, 2), random_matrix(rng, 2, 1),
                              random_matrix(rng, 1, 2), random_matrix(rng, 1, 1))
        a = adjoint(g)
        assert a.mu == g.my and a.my == g.mu
        assert adjoint(a) == g


def test_min_poly_adjoint_invariant():
    rng = random.Random(13)
    for _ in range(40):
        V, _ = random_genop(rng, rng.randint(1, 4))
        assert minimal_annihilating_poly(V) == minimal_annihilating_poly(adjoint(V))


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_two_by_two_map_min_poly(entries):
    A = [entries[:2], entries[2:]]
    assert list(minimal_annihilating_poly(map_genaut(A)).coeffs) == sympy_minpoly(A)
