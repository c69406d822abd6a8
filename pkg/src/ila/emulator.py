"""E-linkages between dynamical systems and the topological RLC emulator.

An E-linkage pair (V¹ on W ⊎ P, V² on Ẇ ⊎ Ṗ) relates a system on W to one on
P by matched composition with V¹ ⊕ V². The RLC builder produces such a pair
from two minimal multiport decompositions: capacitors against the rest, then
inductors against the static remainder.
"""
from __future__ import annotations

import random as _random
from dataclasses import dataclass, field as dc_field

from . import spaces as sp
from .control import feedback_apply, injection_apply
from .errors import (IllPosedNetwork, IndexMismatch, NotLinked, SingularStatic,
                     TransferConditionsFail)
from .field import QQ
from .genops import GDS, Genaut, adjoint, dotted, poly_eval
from .linkage import is_decoupled
from .invariants import is_conditioned_invariant, is_controlled_invariant
from .netgraph import (DirectedGraph, contains_circuit, contains_cutset, kirchhoff_spaces,
                       multiport_decompose)
from .poly import Poly
from .spaces import Label, Space, labels

DEVICE_KINDS = ("R", "C", "L", "E", "J", "YV", "YI")


# -- E-linkage pairs -----------------------------------------------------

@dataclass(frozen=True)
class ELinkagePair:
    """V¹ on W ⊎ P and V² on Ẇ ⊎ Ṗ with V¹ ⊇ (V²)_WP."""

    v1: Space
    v2: Space
    w: tuple
    p: tuple

    def __post_init__(self):
        w, p = labels(self.w), labels(self.p)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "p", p)
        if set(w) & set(p):
            raise IndexMismatch("W and P must be disjoint")
        if self.v1.index != labels(w + p):
            raise IndexMismatch("V¹ must live on W ⊎ P")
        if self.v2.index != labels(dotted(w) + dotted(p)):
            raise IndexMismatch("V² must live on Ẇ ⊎ Ṗ")
        if not _undot_all(self.v2) <= self.v1:
            raise NotLinked("V¹ does not contain the undotted V²")

    @classmethod
    def make(cls, v1, v2, w):
        w = labels(w)
        return cls(v1, v2, w, tuple(x for x in v1.index if x not in set(w)))

    @property
    def wdot(self):
        return dotted(self.w)

    @property
    def pdot(self):
        return dotted(self.p)

    def joint(self):
        """V¹ ⊕ V²."""
        return sp.direct_sum(self.v1, self.v2)

    def swap(self):
        """The same spaces read from the P side."""
        return ELinkagePair(self.v1, self.v2, self.p, self.w)


def _undot_all(V):
    return sp.rename(V, {x: x.undot() for x in V.index if x.dotted})


def _dot_all(V):
    return sp.rename(V, {x: x.dot() for x in V.index if not x.dotted})


def identity_pair(w, p, field=QQ):
    """I_WP ⊕ I_ẆṖ for P a relabelling of W (given in the same order)."""
    w = [sp.L(x) for x in w]
    p = [sp.L(x) for x in p]
    v1 = sp.identity_copy(zip(w, p), field)
    v2 = sp.identity_copy(zip(dotted(w), dotted(p)), field)
    return ELinkagePair(v1, v2, w, p)


def _side(pair, V):
    """'w' or 'p' according to which state labels V carries."""
    if V.w == pair.w:
        return "w"
    if V.w == pair.p:
        return "p"
    raise IndexMismatch("system state labels match neither side of the pair")


def _wrap(like, space, state):
    if isinstance(like, GDS):
        return GDS(space, state, like.mu, like.my)
    return Genaut(space, state)


def linkage_apply(pair, V):
    """(V¹ ⊕ V²) ↔ V, landing on whichever side V is not on."""
    side = _side(pair, V)
    other = pair.p if side == "w" else pair.w
    out = sp.compose(pair.joint(), V.space, allow_empty=True)
    return _wrap(V, out, other)


def _manifest(V):
    return V.m if isinstance(V, GDS) else ()


def _dotcross(pair, vw, vp):
    W, Wd, P, Pd = pair.w, pair.wdot, pair.p, pair.pdot
    v1, v2 = pair.v1, pair.v2
    a, b = vw.space, vp.space
    return {
        "v1_dot_w": sp.restrict(v1, W) >= sp.restrict(a, W),
        "v1_cross_w": sp.contract(v1, W) <= sp.contract(a, W),
        "v2_dot_wdot": sp.restrict(v2, Wd) >= sp.restrict(a, Wd),
        "v2_cross_wdot": sp.contract(v2, Wd) <= sp.contract(a, Wd),
        "v1_dot_p": sp.restrict(v1, P) >= sp.restrict(b, P),
        "v1_cross_p": sp.contract(v1, P) <= sp.contract(b, P),
        "v2_dot_pdot": sp.restrict(v2, Pd) >= sp.restrict(b, Pd),
        "v2_cross_pdot": sp.contract(v2, Pd) <= sp.contract(b, Pd),
    }


@dataclass
class LinkReport:
    linked: bool
    forward: bool
    backward: bool
    dotcross: dict

    def __bool__(self):
        return self.linked


def elinkage_verify(pair, vw, vp):
    """Both matched-composition equalities plus the eight dot-cross flags."""
    if vw.w != pair.w or vp.w != pair.p:
        raise IndexMismatch("systems do not sit on the W and P sides of the pair")
    if labels(_manifest(vw)) != labels(_manifest(vp)):
        raise IndexMismatch("manifest labels differ")
    joint = pair.joint()
    fwd = sp.compose(joint, vw.space, allow_empty=True) == vp.space
    bwd = sp.compose(joint, vp.space, allow_empty=True) == vw.space
    dc = _dotcross(pair, vw, vp)
    if all(dc.values()) and fwd != bwd:
        raise AssertionError("dot-cross conditions hold but only one direction links")
    return LinkReport(fwd and bwd, fwd, bwd, dc)


def linkage_compose(pair_wp, pair_wq):
    """(V¹_WP ↔ V¹_WQ, V²_ẆṖ ↔ V²_ẆQ̇) as a pair from P to Q."""
    if pair_wp.w != pair_wq.w:
        raise IndexMismatch("pairs must share their W side")
    if set(pair_wp.p) & set(pair_wq.p):
        raise IndexMismatch("P and Q must be disjoint")
    v1 = sp.compose(pair_wp.v1, pair_wq.v1, allow_empty=True)
    v2 = sp.compose(pair_wp.v2, pair_wq.v2, allow_empty=True)
    return ELinkagePair(v1, v2, pair_wp.p, pair_wq.p)


def pair_adjoint(pair):
    """Ṽ¹ = (V²)^⊥ undotted with W negated, Ṽ² = (V¹)^⊥ dotted with Ṗ
    negated. An involution."""
    v1 = sp.sign_flip(_undot_all(sp.perp(pair.v2)), pair.w)
    v2 = sp.sign_flip(_dot_all(sp.perp(pair.v1)), pair.pdot)
    return ELinkagePair(v1, v2, pair.w, pair.p)


@dataclass
class AdjointTriple:
    pair: ELinkagePair
    vw: object
    vp: object
    report: LinkReport


def linkage_adjoint(pair, vw, vp):
    """Adjoint pair together with the adjoint systems it links."""
    if not elinkage_verify(pair, vw, vp).linked:
        raise NotLinked("the pair does not link the given systems")
    apair = pair_adjoint(pair)
    avw, avp = adjoint(vw), adjoint(vp)
    rep = elinkage_verify(apair, avw, avp)
    if not rep.linked:
        raise AssertionError("adjoint pair fails to link the adjoint systems")
    return AdjointTriple(apair, avw, avp, rep)


# -- transfer across a linkage -------------------------------------------

def _constant_term_ok(V):
    und = lambda S: sp.rename(S, {x: x.undot() for x in V.wdot})
    return (V.dot_w() == und(V.dot_wdot())) and (V.cross_w() == und(V.cross_wdot()))


def poly_transfer(pair, vw, vp, p):
    """p(V_WẆ) and p(V_PṖ) linked through the same pair."""
    if not elinkage_verify(pair, vw, vp).linked:
        raise NotLinked("the pair does not link the given genauts")
    p = p if isinstance(p, Poly) else Poly(p, vw.field)
    if p[0] and not (_constant_term_ok(vw) and _constant_term_ok(vp)):
        raise TransferConditionsFail("constant term present and the ∘/× equalities fail")
    pw, pp = poly_eval(p, vw), poly_eval(p, vp)
    rep = elinkage_verify(pair, pw, pp)
    dw = is_decoupled(pw.space, (pw.w, pw.wdot))
    dp = is_decoupled(pp.space, (pp.w, pp.wdot))
    return {"linked": rep.linked, "decoupled": (dw, dp), "pw": pw, "pp": pp}


def _kinds(V, sub):
    out = set()
    if is_conditioned_invariant(sub, V):
        out.add("conditioned")
    if is_controlled_invariant(sub, V):
        out.add("controlled")
    return out


def invariant_transfer(pair, vw, vp, subspace, direction="w2p", via="v1"):
    """Image of an invariant subspace through V¹ (or (V²)_WP)."""
    if direction == "p2w":
        pair, vw, vp = pair.swap(), vp, vw
    elif direction != "w2p":
        raise ValueError(f"unknown direction {direction!r}")
    if subspace.index != vw.w:
        raise IndexMismatch("subspace must live on the source state labels")
    kinds = _kinds(vw, subspace)
    if not kinds:
        raise TransferConditionsFail("subspace is neither conditioned nor controlled invariant")
    if via == "v1":
        link = pair.v1
    elif via == "v2":
        link = _undot_all(pair.v2)
    else:
        raise ValueError(f"unknown route {via!r}")
    img = sp.compose(link, subspace, allow_empty=True)
    got = _kinds(vp, img)
    if not kinds <= got:
        raise AssertionError("invariance lost across the linkage")
    return img


@dataclass
class InducedTransfer:
    vw_sub: Space
    w_genaut: Genaut
    p_genaut: Genaut
    linked: bool


def induced_transfer(pair, vw, vp, vp_sub, part="quotient"):
    """Carry an invariant space of the P side back to W and link the induced
    genauts: sums with V_P ⊕ (V_P)_Ṗ ("quotient") or intersections
    ("restricted")."""
    W, Wd = pair.w, pair.wdot
    if not (is_conditioned_invariant(vp_sub, vp) and is_controlled_invariant(vp_sub, vp)):
        raise TransferConditionsFail("P-side subspace is not invariant")
    v2wp = _undot_all(pair.v2)
    redot = lambda S: sp.rename(S, {x: x.dot() for x in S.index})
    if part == "quotient":
        if not redot(vp_sub) <= vp.dot_wdot():
            raise TransferConditionsFail("(V_P)_Ṗ is not inside V_PṖ∘Ṗ")
        if redot(sp.contract(pair.v1, W)) != sp.contract(pair.v2, Wd):
            raise TransferConditionsFail("(V¹×W)_Ẇ differs from V²×Ẇ")
        sub = sp.compose(v2wp, vp_sub, allow_empty=True)
        if sub != sp.compose(pair.v1, vp_sub, allow_empty=True):
            raise AssertionError("the two images of V_P differ")
        combine = sp.vsum
    elif part == "restricted":
        if not vp.cross_w() <= vp_sub:
            raise TransferConditionsFail("V_P does not contain V_PṖ×P")
        if redot(sp.restrict(pair.v1, W)) != sp.restrict(pair.v2, Wd):
            raise TransferConditionsFail("(V¹∘W)_Ẇ differs from V²∘Ẇ")
        sub = sp.compose(pair.v1, vp_sub, allow_empty=True)
        if redot(sub) != sp.compose(pair.v2, redot(vp_sub), allow_empty=True):
            raise AssertionError("the two images of V_P differ")
        combine = sp.intersect
    else:
        raise ValueError(f"unknown part {part!r}")
    gw = Genaut(combine(vw.space, sp.direct_sum(sub, redot(sub))), vw.w)
    gp = Genaut(combine(vp.space, sp.direct_sum(vp_sub, redot(vp_sub))), vp.w)
    return InducedTransfer(sub, gw, gp, elinkage_verify(pair, gw, gp).linked)


@dataclass
class LawTransfer:
    law_w: Space
    law_p: Space
    closed_w: Genaut
    closed_p: Genaut
    forward: bool              # (V¹ ⊕ V²) ↔ closed_w == closed_p
    linked: bool               # both directions


def feedback_transfer(pair, src_w, law_w, src_p=None):
    """Carry a W ⊎ Mu feedback law to P ⊎ Mu through V¹.

    The closed loop on W, pushed through the pair, equals the closed loop on
    P. The reverse direction holds too whenever the closed loops still meet
    the dot-cross conditions.
    """
    mu = src_w.mu
    side = sp.contract(sp.restrict(src_w.space, src_w.w + src_w.wdot + mu), src_w.w)
    if not sp.contract(pair.v1, pair.w) <= side:
        raise TransferConditionsFail("V¹×W is not inside source∘WẆMu×W")
    if src_p is None:
        src_p = linkage_apply(pair, src_w)
    law_p = sp.compose(law_w, pair.v1, allow_empty=True)
    cw = feedback_apply(src_w, law_w)
    cp = feedback_apply(src_p, law_p)
    rep = elinkage_verify(pair, cw, cp)
    return LawTransfer(law_w, law_p, cw, cp, rep.forward, rep.linked)


def injection_transfer(pair, src_w, law_w, src_p=None):
    """Carry an Ẇ ⊎ My injection law to Ṗ ⊎ My through V²."""
    my = src_w.my
    side = sp.restrict(sp.contract(src_w.space, src_w.w + src_w.wdot + my), src_w.wdot)
    if not sp.restrict(pair.v2, pair.wdot) >= side:
        raise TransferConditionsFail("V²∘Ẇ does not contain source×WẆMy∘Ẇ")
    if src_p is None:
        src_p = linkage_apply(pair, src_w)
    law_p = sp.compose(law_w, pair.v2, allow_empty=True)
    cw = injection_apply(src_w, law_w)
    cp = injection_apply(src_p, law_p)
    rep = elinkage_verify(pair, cw, cp)
    return LawTransfer(law_w, law_p, cw, cp, rep.forward, rep.linked)


# -- networks ------------------------------------------------------------

@dataclass
class Network:
    """Directed graph plus one device tag per edge.

    ``values`` holds R, C and L values; ``cmatrix``/``lmatrix`` optionally
    replace the diagonal C and L blocks by symmetric matrices given as
    {(a, b): value} over edge labels.
    """

    graph: DirectedGraph
    kinds: dict
    values: dict = dc_field(default_factory=dict)
    cmatrix: dict | None = None
    lmatrix: dict | None = None

    def __post_init__(self):
        self.kinds = {sp.L(k): v for k, v in self.kinds.items()}
        self.values = {sp.L(k): v for k, v in self.values.items()}
        if set(self.kinds) != set(self.graph.edges):
            raise IndexMismatch("every edge needs exactly one device tag")
        for e, k in self.kinds.items():
            if k not in DEVICE_KINDS:
                raise ValueError(f"unknown device kind {k!r}")
            if k in ("R", "C", "L") and e not in self.values:
                raise ValueError(f"{e} needs a value")

    def edges_of(self, *kinds):
        return [e for e in self.graph.labels if self.kinds[e] in kinds]

    def _block(self, kind, mat):
        es = self.edges_of(kind)
        if mat is None:
            return {(a, b): (self.values[a] if a == b else 0) for a in es for b in es}
        m = {(sp.L(a), sp.L(b)): v for (a, b), v in mat.items()}
        return {(a, b): m.get((a, b), m.get((b, a), 0)) for a in es for b in es}

    def cap_block(self):
        return self._block("C", self.cmatrix)

    def ind_block(self):
        return self._block("L", self.lmatrix)


def vlab(e, dot=False):
    e = sp.L(e)
    return Label("v." + e.base, e.primes, dot)


def ilab(e, dot=False):
    e = sp.L(e)
    return Label("i." + e.base, e.primes, dot)


def _as(V, fn, dot=False):
    return sp.rename(V, {e: fn(e, dot) for e in V.index})


def _graph_spaces(G, field):
    volt, cur = kirchhoff_spaces(G, field)
    return _as(volt, vlab), _as(cur, ilab)


def _positive_definite(block, es):
    """Exact leading-minor test via symmetric elimination."""
    m = [[QQ(block[(a, b)]) for b in es] for a in es]
    n = len(m)
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


def _check_devices(net, field):
    for kind, block in (("C", net.cap_block()), ("L", net.ind_block())):
        es = net.edges_of(kind)
        for a in es:
            for b in es:
                if block[(a, b)] != block[(b, a)]:
                    raise ValueError(f"{kind} matrix is not symmetric")
        if not field.p and not _positive_definite(block, es):
            raise ValueError(f"{kind} matrix is not positive definite")
    if not field.p:
        for e in net.edges_of("R"):
            if QQ(net.values[e]) <= 0:
                raise ValueError(f"resistance of {e} must be positive")


def check_well_posed(net):
    """No circuit of voltage sources and current sensors, no cutset of current
    sources and voltage sensors."""
    G = net.graph
    ev = net.edges_of("E", "YI")
    if ev and contains_circuit(G, ev):
        raise IllPosedNetwork("voltage sources and current sensors form a circuit")
    jv = net.edges_of("J", "YV")
    if jv and contains_cutset(G, jv):
        raise IllPosedNetwork("current sources and voltage sensors form a cutset")


def io_labels(net):
    """(W, Mu, My) variable labels of the network GDS."""
    w = labels([vlab(e) for e in net.edges_of("C")] + [ilab(e) for e in net.edges_of("L")])
    mu = labels([ilab(e) for e in net.edges_of("J")] + [vlab(e) for e in net.edges_of("E")])
    my = labels([ilab(e) for e in net.edges_of("YI")] + [vlab(e) for e in net.edges_of("YV")])
    return w, mu, my


def _static_rows(net, edges, field):
    """Device equations of the static devices among ``edges`` as dict rows."""
    rows = []
    for e in edges:
        k = net.kinds.get(e)
        if k == "R":
            rows.append({vlab(e): 1, ilab(e): -field(net.values[e])})
        elif k == "YV":
            rows.append({ilab(e): 1})
        elif k == "YI":
            rows.append({vlab(e): 1})
    return rows


def _dynamic_rows(block, lhs, rhs, field):
    """lhs_a − Σ_b block[a, b]·rhs_b = 0 for each a."""
    es = sorted({a for a, _ in block})
    rows = []
    for a in es:
        r = {lhs(a): 1}
        for b in es:
            v = block[(a, b)]
            if v:
                r[rhs(b)] = -field(v)
        rows.append(r)
    return rows


def _solutions(space, eq_rows):
    """space ∩ {eq_rows · x = 0}."""
    if not eq_rows:
        return space
    eqs = Space.from_rows(space.index, eq_rows, space.field)
    return sp.intersect(space, sp.perp(eqs))


def network_gds(net, field=QQ):
    """Solution space of KCL, KVL, the topological constraints on v̇_C and
    di_L/dt, and the device laws, restricted to W ⊎ Ẇ ⊎ Mu ⊎ My."""
    _check_devices(net, field)
    G = net.graph
    caps, inds = net.edges_of("C"), net.edges_of("L")
    vv, vi = _graph_spaces(G, field)
    parts = [vv, vi]
    if caps:
        parts.append(_as(kirchhoff_spaces(G.restrict(caps), field)[0], vlab, True))
    if inds:
        parts.append(_as(kirchhoff_spaces(G.contract_to(inds), field)[1], ilab, True))
    top = sp.direct_sum(*parts)
    rows = _static_rows(net, G.labels, field)
    rows += _dynamic_rows(net.cap_block(), ilab, lambda b: vlab(b, True), field)
    rows += _dynamic_rows(net.ind_block(), vlab, lambda b: ilab(b, True), field)
    full = _solutions(top, rows)
    w, mu, my = io_labels(net)
    return GDS(sp.restrict(full, w + dotted(w) + mu + my), w, mu, my)


# -- the topological emulator --------------------------------------------

@dataclass
class Emulator:
    pair: ELinkagePair
    gds: GDS                   # the emulator V_PṖMuMy (implicit chain)
    original: GDS              # the network GDS V_WẆMuMy
    flattened: dict | None
    ports: dict                # 'cap' / 'ind' port edge labels
    parts: dict                # multiport spaces of the implicit chain
    zero_modes: dict
    report: LinkReport

    @property
    def dimension(self):
        return len(self.pair.p)


def _absorb(dec, field):
    """V(g1) ↔ V(connector) for voltages and currents: spaces on E1 ⊎ P2."""
    a = kirchhoff_spaces(dec.g1, field)
    c = kirchhoff_spaces(dec.connector, field)
    return [sp.compose(a[k], c[k], allow_empty=True) for k in range(2)]


def _flatten(V, state, mu, my):
    """Ṗ = A P + B Mu, My = C P + D Mu read off a GDS, or SingularStatic."""
    f = V.field
    src = labels(state + mu)
    dst = labels(dotted(state) + my)
    if src and not sp.restrict(V, src).is_full():
        raise SingularStatic("emulator constrains its states or inputs")
    if dst and not sp.contract(V, dst).is_zero():
        raise SingularStatic("emulator derivatives or outputs are not determined")
    cols = {}
    for x in src:
        vec = sp.extend(V, src, {x: 1}) if src else {}
        cols[x] = vec
    def block(rows_lab, cols_lab):
        return [[cols[c][r] for c in cols_lab] for r in rows_lab]
    sd = dotted(state)
    return {
        "state": list(state), "inputs": list(mu), "outputs": list(my),
        "A": block(sd, state), "B": block(sd, mu),
        "C": block(my, state), "D": block(my, mu),
    }


def build_rlc_emulator(net, field=QQ, flatten=True):
    """Capacitor and inductor multiport emulator of an RLC network.

    The pair is V¹ = V^v(ĝ_C) ⊕ V^i(ĝ_L) with V² the matching derivative
    spaces cut down by the C and L laws, where ĝ_C, ĝ_L are the reactive
    multiports with their port connection diagrams absorbed.
    """
    check_well_posed(net)
    original = network_gds(net, field)
    G = net.graph
    caps, inds = net.edges_of("C"), net.edges_of("L")
    rest = [e for e in G.labels if e not in set(caps)]
    k1 = sp.fresh_offset(G.edges)
    dec1 = multiport_decompose(G, caps, rest, k1)
    gc_v, gc_i = _absorb(dec1, field)
    G2 = dec1.g2
    rest2 = [e for e in G2.labels if e not in set(inds)]
    dec2 = multiport_decompose(G2, inds, rest2, sp.fresh_offset(G2.edges))
    gl_v, gl_i = _absorb(dec2, field)
    static = dec2.g2
    P2, Q2 = dec1.p2, dec2.p2

    gc_v, gc_i = _as(gc_v, vlab), _as(gc_i, ilab)
    gl_v, gl_i = _as(gl_v, vlab), _as(gl_i, ilab)
    pv = labels(vlab(e) for e in P2)
    qi = labels(ilab(e) for e in Q2)
    state = labels(pv + qi)
    w, mu, my = io_labels(net)

    v1 = sp.direct_sum(gc_v, gl_i) if (gc_v.index or gl_i.index) else gc_v
    cap_dot = labels([vlab(e, True) for e in caps] + list(dotted(pv)))
    ind_dot = labels([ilab(e, True) for e in inds] + list(dotted(qi)))
    capX = _dev_full(gc_v, gc_i, net.cap_block(), lambda b: vlab(b, True), ilab, field)
    indX = _dev_full(gl_i, gl_v, net.ind_block(), lambda b: ilab(b, True), vlab, field)
    v2 = sp.direct_sum(sp.restrict(capX, cap_dot), sp.restrict(indX, ind_dot))
    pair = ELinkagePair(v1, v2, w, state)

    # implicit chain: cap ports ↔ static multiport ↔ inductor ports
    cap_port = sp.restrict(capX, labels([ilab(e) for e in P2] + list(dotted(pv))))
    ind_port = sp.restrict(indX, labels([vlab(e) for e in Q2] + list(dotted(qi))))
    sv, si = _graph_spaces(static, field)
    stat_full = _solutions(sp.direct_sum(sv, si), _static_rows(net, static.labels, field))
    stat_keep = labels([vlab(e) for e in P2 + Q2] + [ilab(e) for e in P2 + Q2] + list(mu + my))
    stat = sp.restrict(stat_full, stat_keep)
    emu = sp.compose(sp.compose(cap_port, stat, allow_empty=True), ind_port, allow_empty=True)
    emu_gds = GDS(emu, state, mu, my)

    direct = sp.compose(pair.joint(), original.space, allow_empty=True)
    if direct != emu:
        raise AssertionError("implicit emulator differs from the linkage image")
    rep = elinkage_verify(pair, original, emu_gds)
    if not rep.linked:
        raise AssertionError("emulator pair fails to link the network")

    flat = _flatten(emu, state, mu, my) if flatten else None
    zero = {
        "capacitor_cutsets": G.contract_to(caps).rank() if caps else 0,
        "inductor_loops": (len(inds) - G.restrict(inds).rank()) if inds else 0,
        "emulator_cross_p_zero": emu_gds.zero_input().cross_w().is_zero(),
    }
    return Emulator(
        pair, emu_gds, original, flat,
        {"cap": P2, "ind": Q2},
        {"cap_port": cap_port, "static": stat, "ind_port": ind_port},
        zero, rep,
    )


def _dev_full(Vx, Vy, block, dot_fn, law_fn, field):
    """[(Vx dotted) ⊕ Vy] ∩ {law_fn(a) = Σ block·dot_fn(b)}."""
    parts = [S for S in (_dot_all(Vx), Vy) if S.index]
    if not parts:
        return Vx
    big = sp.direct_sum(*parts)
    return _solutions(big, _dynamic_rows(block, law_fn, dot_fn, field))


def emulator_dimension_formula(net):
    """Σ over C and L of r(G∘E_k) − r(G×E_k)."""
    G = net.graph
    out = 0
    for kind in ("C", "L"):
        es = net.edges_of(kind)
        if es:
            out += G.restrict(es).rank() - G.contract_to(es).rank()
    return out


# -- random fixtures -----------------------------------------------------

def _reactive_ok(net):
    """Voltage sources and current sensors close no loop with capacitors;
    current sources and voltage sensors cut no set with inductors."""
    G = net.graph
    caps, ey = net.edges_of("C"), net.edges_of("E", "YI")
    if ey and G.restrict(caps + ey).rank() != (G.restrict(caps).rank() if caps else 0) + len(ey):
        return False
    inds, jy = net.edges_of("L"), net.edges_of("J", "YV")
    if jy:
        keep_l = [e for e in G.labels if e not in set(inds)]
        keep_lj = [e for e in keep_l if e not in set(jy)]
        r1 = G.restrict(keep_l).rank() if keep_l else 0
        r2 = G.restrict(keep_lj).rank() if keep_lj else 0
        if r1 != r2:
            return False
    return True


def random_rlc_network(rng=None, n_nodes=6, n_edges=14, kinds_weights=None, generic=True,
                       max_tries=200):
    """A well-posed random network: a resistor spanning tree plus random R, C
    and L edges and at most one of each source and sensor. With ``generic``
    the sources and sensors also avoid loops with capacitors and cutsets with
    inductors."""
    rng = rng if rng is not None else _random.Random(0)
    weights = kinds_weights or {"R": 3, "C": 3, "L": 2}
    pool = [k for k, c in weights.items() for _ in range(c)]
    for _ in range(max_tries):
        nodes = [str(i) for i in range(n_nodes)]
        edges, kinds, values = [], {}, {}
        cnt = {}

        def add(kind, t, h):
            cnt[kind] = cnt.get(kind, 0) + 1
            name = f"{kind}{cnt[kind]}"
            edges.append((name, t, h))
            kinds[name] = kind
            if kind in ("R", "C", "L"):
                values[name] = rng.randint(1, 4)
        for i in range(1, n_nodes):
            add("R", nodes[rng.randrange(i)], nodes[i])
        for kind in ("C", "L"):
            if weights.get(kind):
                add(kind, *rng.sample(nodes, 2))
        while len(edges) < n_edges - 4:
            t, h = rng.sample(nodes, 2)
            add(rng.choice(pool), t, h)
        for kind in ("E", "J", "YV", "YI"):
            if rng.random() < 0.75:
                t, h = rng.sample(nodes, 2)
                add(kind, t, h)
        net = Network(DirectedGraph(edges), kinds, values)
        try:
            check_well_posed(net)
        except IllPosedNetwork:
            continue
        if generic and not _reactive_ok(net):
            continue
        return net
    raise IllPosedNetwork("could not draw a well-posed network")
