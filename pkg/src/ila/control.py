"""State feedback, output injection and pole placement for GDSs."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import spaces as sp
from .errors import (BadPartition, DegreeMismatch, NotGenop, NotInvariant, NotReachableByFeedback,
                     NotReachableByInjection, NothingToPlace, UnplaceableFactor)
from .genops import GDS, Genaut, adjoint, annihilates, classify, minimal_annihilating_poly
from .invariants import is_conditioned_invariant
from .poly import Poly, solve_combination
from .spaces import Space


@dataclass
class FeedbackLaw:
    linkage: Space
    kind: str
    unique: bool
    achieved: Genaut | None = None
    details: dict = dc_field(default_factory=dict)


def _need_split(src):
    if not isinstance(src, GDS):
        raise BadPartition("source must be a GDS with an input/output split")


def _wdot_labels(src):
    return src.w + src.wdot


# -- wm_u feedback -------------------------------------------------------

def feedback_conditions(src, target):
    """The two containments deciding whether ``target`` is reachable."""
    _need_split(src)
    dyn = _wdot_labels(src)
    a = sp.restrict(src.space, dyn) >= target.space
    inner = sp.contract(sp.restrict(src.space, dyn + src.mu), src.wdot)
    b = inner <= target.cross_wdot()
    return a, b


def feedback_exists(src, target):
    a, b = feedback_conditions(src, target)
    return a and b


def feedback_apply(src, law):
    """(source ∩ V_WMu)∘WẆ."""
    _need_split(src)
    if law.index != sp.labels(src.w + src.mu):
        raise BadPartition("feedback law must live on W ⊎ Mu")
    return Genaut(sp.restrict(sp.intersect(src.space, law), _wdot_labels(src)), src.w)


def feedback_recover(src, target):
    """(source ∩ target)∘WMu, certified by re-application."""
    if not feedback_exists(src, target):
        raise NotReachableByFeedback("target fails the feedback reachability conditions")
    wmu = sp.labels(src.w + src.mu)
    law = sp.restrict(sp.intersect(src.space, target.space), wmu)
    back = feedback_apply(src, law)
    if back != target:
        raise AssertionError("recovered feedback law does not reproduce the target")
    u1 = sp.restrict(src.space, wmu) >= law
    if src.mu:
        inner = sp.contract(sp.restrict(src.space, _wdot_labels(src) + src.mu), src.mu)
        u2 = inner <= sp.contract(law, src.mu)
    else:
        u2 = True
    return FeedbackLaw(law, "feedback", u1 and u2, back)


def feedback(src, target=None, mode="exists", law=None):
    if mode == "exists":
        return feedback_exists(src, target)
    if mode == "recover":
        return feedback_recover(src, target)
    if mode == "apply":
        out = feedback_apply(src, law)
        if target is not None and out != target:
            raise NotReachableByFeedback("law does not produce the target")
        return out
    raise ValueError(f"unknown mode {mode!r}")


# -- m_y ẇ injection -----------------------------------------------------

def injection_conditions(src, target):
    _need_split(src)
    dyn = _wdot_labels(src)
    a = sp.contract(src.space, dyn) <= target.space
    inner = sp.restrict(sp.contract(src.space, dyn + src.my), src.w)
    b = inner >= target.dot_w()
    return a, b


def injection_exists(src, target):
    a, b = injection_conditions(src, target)
    return a and b


def injection_apply(src, law):
    """(source + V_ẆMy)×WẆ."""
    _need_split(src)
    if law.index != sp.labels(src.wdot + src.my):
        raise BadPartition("injection law must live on Ẇ ⊎ My")
    return Genaut(sp.contract(sp.vsum(src.space, law), _wdot_labels(src)), src.w)


def injection_recover(src, target):
    """(source + target)×ẆMy, certified by re-application."""
    if not injection_exists(src, target):
        raise NotReachableByInjection("target fails the injection reachability conditions")
    wdmy = sp.labels(src.wdot + src.my)
    law = sp.contract(sp.vsum(src.space, target.space), wdmy)
    back = injection_apply(src, law)
    if back != target:
        raise AssertionError("recovered injection law does not reproduce the target")
    u1 = sp.contract(src.space, wdmy) <= law
    if src.my:
        inner = sp.restrict(sp.contract(src.space, _wdot_labels(src) + src.my), src.my)
        u2 = inner >= sp.restrict(law, src.my)
    else:
        u2 = True
    return FeedbackLaw(law, "injection", u1 and u2, back)


def injection(src, target=None, mode="exists", law=None):
    if mode == "exists":
        return injection_exists(src, target)
    if mode == "recover":
        return injection_recover(src, target)
    if mode == "apply":
        out = injection_apply(src, law)
        if target is not None and out != target:
            raise NotReachableByInjection("law does not produce the target")
        return out
    raise ValueError(f"unknown mode {mode!r}")


def feedback_law_dual(law, src):
    """Injection law of the adjoint system matching a feedback law of ``src``
    (and back again): perp, with W relabelled as Ẇ or the reverse."""
    P = sp.perp(law)
    if set(src.w) & set(law.index):
        return sp.rename(P, {x: x.dot() for x in src.w})
    return sp.rename(P, {x: x.undot() for x in src.wdot})


# -- pole placement ------------------------------------------------------

@dataclass
class BasicSequence:
    vectors: list            # x^0 .. x^k as coordinate lists over W
    vcom: Space              # V¹×W ∩ (V¹×Ẇ)_W
    vw: Space                # span{x^0..x^{k-1}} + vcom
    genop: Genaut            # the genop of the sequence
    poly: Poly               # its minimal annihilating polynomial
    source: Genaut

    @property
    def k(self):
        return len(self.vectors) - 1


def _span(index, vecs, extra, f):
    return Space._make(index, [list(v) for v in vecs] + [list(r) for r in extra.rows], f)


def _sequence_genop(V1, xs, vcom):
    w, f = V1.w, V1.field
    n = len(w)
    rows = []
    for a, b in zip(xs, xs[1:]):
        rows.append(list(a) + list(b))
    for r in vcom.rows:
        rows.append(list(r) + [f.zero] * n)
        rows.append([f.zero] * n + list(r))
    return Genaut(Space.from_rows(w + V1.wdot, rows, f), w)


def _image(V1, x):
    full = sp.extend(V1.space, V1.w, dict(zip(V1.w, x)))
    if full is None:
        raise NotInvariant("sequence left V¹∘W")
    return [full[t.dot()] for t in V1.w]


def _add(a, b, f):
    out = [x + y for x, y in zip(a, b)]
    return [x % f.p for x in out] if f.p else out


def _scale(c, a, f):
    out = [c * x for x in a]
    return [x % f.p for x in out] if f.p else out


def basic_sequence(V1):
    cls = classify(V1)
    if cls.genop:
        raise NothingToPlace("V¹ is already a genop")
    if not cls.usg:
        raise NotGenop("basic sequences need a USG")
    f, w = V1.field, V1.w
    n = len(w)
    K = sp.rename(V1.cross_wdot(), {x: x.undot() for x in V1.wdot})
    C = V1.cross_w()
    vcom = sp.intersect(C, K)
    units = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]
    x0 = None
    for cand in units + [list(r) for r in K.rows]:
        if K.contains(cand) and not C.contains(cand):
            x0 = cand
            break
    if x0 is None:
        raise NothingToPlace("no admissible seed vector")
    xs = [x0]
    S = _span(w, xs, vcom, f)
    while True:
        y = _image(V1, xs[-1])
        pick = None
        for cand in [y] + [_add(y, list(r), f) for r in K.rows]:
            if not S.contains(cand):
                pick = cand
                break
        if pick is None:
            xs.append(y)
            break
        xs.append(pick)
        S = _span(w, xs[:-1] + [pick], vcom, f)
    k = len(xs) - 1
    vw = _span(w, xs[:k], vcom, f)
    coef = solve_combination(xs[:k] + [list(r) for r in vcom.rows], [-a for a in xs[k]], f)
    if coef is None:
        raise AssertionError("last sequence vector left the invariant space")
    b = Poly(list(coef[:k]) + [1], f)
    G = _sequence_genop(V1, xs, vcom)
    if not classify(G).genop:
        raise AssertionError("genop of the basic sequence is not a genop")
    return BasicSequence(xs, vcom, vw, G, b, V1)


def retarget_lambdas(b, c):
    """λ_0..λ_k with Σ_i λ_i c_{m+i} = b_m for every m (λ_0 = 1 when monic)."""
    k = c.degree
    f = c.field
    lam = [f.zero] * (k + 1)
    for m in range(k, -1, -1):
        acc = b[m]
        for i in range(k - m):
            acc -= lam[i] * c[m + i]
        i0 = k - m
        val = acc * f.inv(c[k])
        lam[i0] = val % f.p if f.p else val
    return lam


def retarget(seq, c, b=None):
    b = seq.poly if b is None else b
    f = seq.source.field
    c = c.monic()
    if c.degree != b.degree or c.degree != seq.k:
        raise DegreeMismatch(f"target degree {c.degree} differs from essential rank {seq.k}")
    lam = retarget_lambdas(b, c)
    xs = seq.vectors
    n = len(seq.source.w)
    ys = []
    for j in range(len(xs)):
        acc = [f.zero] * n
        for i in range(j + 1):
            acc = _add(acc, _scale(lam[i], xs[j - i], f), f)
        ys.append(acc)
    G = _sequence_genop(seq.source, ys, seq.vcom)
    if not annihilates(c, G):
        raise AssertionError("retargeted genop is not annihilated by the target")
    return BasicSequence(ys, seq.vcom, seq.vw, G, c, seq.source)


def grow_to_full(Vend, V1):
    f, w = V1.field, V1.w
    Vw = Vend.dot_w()
    if not is_conditioned_invariant(Vw, V1):
        raise NotInvariant("V^end∘W is not invariant in V¹")
    if not Vend.space <= V1.space:
        raise NotInvariant("V^end is not contained in V¹")
    cur = Vw
    extra = []
    for r in V1.dot_w().rows:
        if not cur.contains(r):
            v = _image(V1, list(r))
            extra.append(dict(zip(w + V1.wdot, list(r) + v)))
            cur = Space._make(w, [list(x) for x in cur.rows] + [list(r)], f)
    new = Genaut(sp.vsum(Vend.space, Space.from_rows(w + V1.wdot, extra, f)), w)
    if not (classify(new).genop and new.dot_w() == V1.dot_w() and Vend.space <= new.space):
        raise AssertionError("grown space fails its post-conditions")
    return new


def uncontrollable_poly(V1, vw):
    """Minimal annihilating polynomial of V¹ + (V_W ⊕ (V_W)_Ẇ); 1 if trivial."""
    box = sp.direct_sum(vw, sp.rename(vw, {x: x.dot() for x in V1.w}))
    return minimal_annihilating_poly(Genaut(sp.vsum(V1.space, box), V1.w), allow_constant=True)


def place_poles(src, target):
    """A wm_u feedback law whose closed loop is annihilated by ``target``."""
    _need_split(src)
    f = src.field
    target = (target if isinstance(target, Poly) else Poly(target, f)).monic()
    V1 = src.restricted()
    if classify(V1).genop:
        return _place_on_genop(src, V1, target)
    seq = basic_sequence(V1)
    pu = uncontrollable_poly(V1, seq.vw)
    if not pu.divides(target):
        raise UnplaceableFactor(f"target must contain the factor {pu}", pu)
    p2 = target // pu
    if p2.degree != seq.k:
        raise DegreeMismatch(f"target/p_u has degree {p2.degree}, essential rank is {seq.k}")
    end = retarget(seq, p2)
    new = grow_to_full(end.genop, V1)
    if not feedback_exists(src, new):
        raise NotReachableByFeedback("placed genop is not reachable by wm_u feedback")
    law = feedback_recover(src, new)
    if not annihilates(target, law.achieved):
        raise AssertionError("closed loop is not annihilated by the target")
    law.details = {"p_u": pu, "p_end": p2, "essential_rank": seq.k, "start_poly": seq.poly}
    return law


def _place_on_genop(src, V1, target):
    """V¹ is already a genop: K = (V¹×Ẇ)_W is invariant and is exactly what
    the inputs reach. Keep the quotient dynamics on V¹∘W / K and close the
    loop on K with the companion map of target / p_u."""
    f, w = V1.field, V1.w
    U = V1.dot_w()
    K = sp.rename(V1.cross_wdot(), {x: x.undot() for x in V1.wdot})
    pu = minimal_annihilating_poly(V1, allow_constant=True)
    if K.is_zero():
        if pu.degree >= 1 and pu == target or pu.degree == 0 and target == Poly.s(f):
            return feedback_recover(src, V1)
        raise NothingToPlace("no input reaches the state; its polynomial cannot be moved")
    if not pu.divides(target):
        raise UnplaceableFactor(f"target must contain the factor {pu}", pu)
    p2 = target // pu
    d = K.rank
    if p2.degree != d:
        raise DegreeMismatch(f"target/p_u has degree {p2.degree}, r(V¹×Ẇ) is {d}")
    basis = [list(r) for r in K.rows]
    images = basis[1:]
    last = [f.zero] * len(w)
    for j in range(d):
        last = _add(last, _scale(-p2[j], basis[j], f), f)
    images.append(last)
    pairs = list(zip(basis, images))
    span = K
    for r in U.rows:
        if not span.contains(r):
            pairs.append((list(r), _image(V1, list(r))))
            span = Space._make(w, [list(x) for x in span.rows] + [list(r)], f)
    rows = [dict(zip(w + V1.wdot, x + y)) for x, y in pairs]
    new = Genaut(Space.from_rows(w + V1.wdot, rows, f), w)
    law = feedback_recover(src, new)
    if not annihilates(target, law.achieved):
        raise AssertionError("closed loop is not annihilated by the target")
    law.details = {"p_u": pu, "p_end": p2, "essential_rank": d, "start_poly": None}
    return law


def place_poles_injection(src, target):
    """Dual placement: run the feedback pipeline on the adjoint and map the
    law back to an m_y ẇ injection."""
    adj = adjoint(src)
    fl = place_poles(adj, target)
    law = feedback_law_dual(fl.linkage, adj)
    achieved = injection_apply(src, law)
    if achieved != adjoint(fl.achieved):
        raise AssertionError("adjoint placement does not match direct injection")
    if not annihilates(target, achieved):
        raise AssertionError("injected system is not annihilated by the target")
    out = injection_recover(src, achieved)
    out.details = dict(fl.details)
    return out
