"""Conditioned and controlled invariant subspaces of a genaut."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import spaces as sp
from .errors import BadCap, BadSeed, IndexMismatch, NotInvariant
from .genops import Genaut, classify


@dataclass
class InvariantReport:
    space: sp.Space
    kind: str
    iterations: int
    chain: list = dc_field(default_factory=list)


def _to_wdot(V, Vw):
    return sp.rename(Vw, {x: x.dot() for x in V.w})


def _to_w(V, Vd):
    return sp.rename(Vd, {x: x.undot() for x in V.wdot})


def _check_w(V, Vw):
    if Vw.index != V.w:
        raise IndexMismatch("subspace must live on W")


def image(V, Vw):
    """V ↔ V_W, as a space on W (the Ẇ labels undotted)."""
    return _to_w(V, sp.compose(V.space, Vw))


def preimage(V, Vw):
    """V ↔ (V_W)_Ẇ, a space on W."""
    return sp.compose(V.space, _to_wdot(V, Vw))


def is_conditioned_invariant(Vw, V):
    _check_w(V, Vw)
    return image(V, Vw) <= Vw


def is_controlled_invariant(Vw, V):
    _check_w(V, Vw)
    return preimage(V, Vw) >= Vw


def invariance_check(Vw, V, kind="conditioned"):
    if kind == "conditioned":
        return is_conditioned_invariant(Vw, V)
    if kind == "controlled":
        return is_controlled_invariant(Vw, V)
    if kind == "both":
        return is_conditioned_invariant(Vw, V) and is_controlled_invariant(Vw, V)
    raise ValueError(f"unknown kind {kind!r}")


def min_conditioned_invariant(V, seed=None):
    """Least conditioned invariant space containing ``seed`` (a space on Ẇ,
    by default V×Ẇ)."""
    if seed is None:
        seed = V.cross_wdot()
    if seed.index == V.w:
        seed = _to_wdot(V, seed)
    if seed.index != V.wdot:
        raise IndexMismatch("seed must live on Ẇ")
    if not seed <= V.dot_wdot():
        raise BadSeed("seed is not contained in V∘Ẇ")
    cur = _to_w(V, seed)
    chain = [cur]
    while True:
        img = image(V, cur)
        if img <= cur:
            break
        cur = sp.vsum(img, cur)
        chain.append(cur)
    return InvariantReport(cur, "conditioned", len(chain) - 1, chain)


def max_controlled_invariant(V, cap=None):
    """Largest controlled invariant space inside ``cap`` (default V∘W)."""
    if cap is None:
        cap = V.dot_w()
    _check_w(V, cap)
    if not V.cross_w() <= cap:
        raise BadCap("cap does not contain V×W")
    cur = cap
    chain = [cur]
    while True:
        pre = preimage(V, cur)
        if pre >= cur:
            break
        cur = sp.intersect(pre, cur)
        chain.append(cur)
    return InvariantReport(cur, "controlled", len(chain) - 1, chain)


@dataclass
class InducedGenops:
    restricted: Genaut
    quotient: Genaut
    restricted_is_genop: bool
    quotient_is_genop: bool


def induced_genops(V, Vw):
    """V ∩ (V_W ⊕ (V_W)_Ẇ) and V + (V_W ⊕ (V_W)_Ẇ).

    The sum is a genop when V is USG and V_W conditioned invariant; the
    intersection is a genop when V is LSG and V_W controlled invariant.
    """
    _check_w(V, Vw)
    cond = is_conditioned_invariant(Vw, V)
    ctrl = is_controlled_invariant(Vw, V)
    if not (cond or ctrl):
        raise NotInvariant("subspace is neither conditioned nor controlled invariant")
    box = sp.direct_sum(Vw, _to_wdot(V, Vw))
    r = Genaut(sp.intersect(V.space, box), V.w)
    q = Genaut(sp.vsum(V.space, box), V.w)
    cls = classify(V)
    rg, qg = classify(r).genop, classify(q).genop
    if ctrl and cls.lsg and not rg:
        raise AssertionError("LSG cut down to a controlled invariant space must be a genop")
    if cond and cls.usg and not qg:
        raise AssertionError("USG plus a conditioned invariant space must be a genop")
    return InducedGenops(r, q, rg, qg)
