"""Directed multigraphs, minors, forests, Kirchhoff spaces and minimal
multiport decomposition."""
from __future__ import annotations

from dataclasses import dataclass

from . import spaces as sp
from .errors import BadPartition, NotAForest, ParseError, UnknownEdge
from .field import QQ
from .spaces import Label, Space


class UnionFind:
    __slots__ = ("parent", "size")

    def __init__(self, items=()):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in self.parent}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


class DirectedGraph:
    """Edge-labelled directed multigraph. Self-loops and parallel edges are
    allowed; vertices are strings."""

    __slots__ = ("edges", "vertices")

    def __init__(self, edges=(), vertices=()):
        self.edges = {}
        for lab, t, h in edges:
            lab = sp.L(lab)
            if lab in self.edges:
                raise BadPartition(f"duplicate edge label {lab}")
            self.edges[lab] = (str(t), str(h))
        vs = {str(v) for v in vertices}
        for t, h in self.edges.values():
            vs.add(t)
            vs.add(h)
        self.vertices = frozenset(vs)

    @property
    def labels(self):
        return sp.labels(self.edges)

    def __len__(self):
        return len(self.edges)

    def __eq__(self, other):
        return isinstance(other, DirectedGraph) and self.edges == other.edges and self.vertices == other.vertices

    def __repr__(self):
        return f"<DirectedGraph |V|={len(self.vertices)} |E|={len(self.edges)}>"

    def edge_list(self):
        return [(lab, *self.edges[lab]) for lab in self.labels]

    def _check(self, T):
        T = [sp.L(t) for t in T]
        for t in T:
            if t not in self.edges:
                raise UnknownEdge(f"{t} is not an edge")
        return set(T)

    def restrict(self, T):
        """G∘T: keep the edges T (and their end vertices)."""
        T = self._check(T)
        return DirectedGraph((lab, *self.edges[lab]) for lab in self.labels if lab in T)

    def contract_to(self, T):
        """G×T: fuse the end points of every edge outside T, keep T."""
        T = self._check(T)
        uf = UnionFind(self.vertices)
        for lab, (t, h) in self.edges.items():
            if lab not in T:
                uf.union(t, h)
        reps = _canonical_reps(uf, self.vertices)
        return DirectedGraph((lab, reps[self.edges[lab][0]], reps[self.edges[lab][1]])
                             for lab in self.labels if lab in T)

    def rename_edges(self, mapping):
        mp = {sp.L(a): sp.L(b) for a, b in mapping.items()}
        return DirectedGraph(((mp.get(lab, lab), t, h) for lab, t, h in self.edge_list()), self.vertices)

    def rank(self):
        uf = UnionFind(self.vertices)
        return sum(1 for t, h in self.edges.values() if uf.union(t, h))

    def components(self):
        uf = UnionFind(self.vertices)
        for t, h in self.edges.values():
            uf.union(t, h)
        return len({uf.find(v) for v in self.vertices})

    def format(self):
        return "".join(f"{lab} {t} {h}\n" for lab, t, h in self.edge_list())

    @classmethod
    def parse(cls, text):
        """Edge list lines ``label tail head``; '#' starts a comment."""
        edges = []
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0]
            toks = line.split()
            if not toks:
                continue
            if len(toks) != 3:
                col = raw.find(toks[min(len(toks), 3) - 1]) + 1 if toks else 1
                raise ParseError("expected 'label tail head'", n, col)
            edges.append(tuple(toks))
        return cls(edges)


def _canonical_reps(uf, vertices):
    """Map each vertex to the smallest vertex id in its class."""
    best = {}
    for v in vertices:
        r = uf.find(v)
        if r not in best or v < best[r]:
            best[r] = v
    return {v: best[uf.find(v)] for v in vertices}


def graph_minor(G, T, mode="delete"):
    """Delete (G∘(E−T)) or contract (G×(E−T)) the edges T."""
    T = G._check(T)
    keep = [lab for lab in G.labels if lab not in T]
    if mode == "delete":
        return G.restrict(keep)
    if mode == "contract":
        return G.contract_to(keep)
    raise ValueError(f"unknown mode {mode!r}")


def kirchhoff_spaces(G, field=QQ):
    """(voltage space, current space) on the edge labels.

    Voltage of an edge is the potential of its tail minus that of its head.
    The reduced incidence matrix drops the smallest vertex of each component.
    """
    labs = G.labels
    if not labs:
        empty = Space((), (), field, ())
        return empty, empty
    uf = UnionFind(G.vertices)
    for t, h in G.edges.values():
        uf.union(t, h)
    reps = _canonical_reps(uf, G.vertices)
    pos = {lab: i for i, lab in enumerate(labs)}
    rows = {v: [field.zero] * len(labs) for v in G.vertices if reps[v] != v}
    for lab, (t, h) in G.edges.items():
        if t == h:
            continue
        if t in rows:
            rows[t][pos[lab]] += field.one
        if h in rows:
            rows[h][pos[lab]] -= field.one
    mat = [rows[v] for v in sorted(rows)]
    if field.p:
        mat = [[x % field.p for x in r] for r in mat]
    volt = Space._make(labs, mat, field)
    return volt, sp.perp(volt)


def voltage_space(G, field=QQ):
    return kirchhoff_spaces(G, field)[0]


def current_space(G, field=QQ):
    return kirchhoff_spaces(G, field)[1]


def forests(G, seed=None, order=None):
    """Maximal circuit-free edge set containing ``seed``, grown in ``order``
    (default: canonical label order)."""
    uf = UnionFind(G.vertices)
    out = []
    seen = set()
    for lab in (sorted(sp.L(s) for s in seed) if seed else ()):
        if lab not in G.edges:
            raise UnknownEdge(f"{lab} is not an edge")
        t, h = G.edges[lab]
        if not uf.union(t, h):
            raise NotAForest(f"seed contains a circuit through {lab}")
        out.append(lab)
        seen.add(lab)
    for lab in (order if order is not None else G.labels):
        lab = sp.L(lab)
        if lab in seen:
            continue
        t, h = G.edges[lab]
        if uf.union(t, h):
            out.append(lab)
    return out


def is_forest(G, T):
    uf = UnionFind(G.vertices)
    return all(uf.union(*G.edges[sp.L(t)]) for t in T)


def contains_circuit(G, T):
    return not is_forest(G, T)


def contains_cutset(G, T):
    """True iff deleting T lowers the rank of G."""
    T = G._check(T)
    return G.restrict([e for e in G.labels if e not in T]).rank() < G.rank()


@dataclass
class MultiportDecomposition:
    g1: DirectedGraph          # on E1 ⊎ P1
    g2: DirectedGraph          # on E2 ⊎ P2
    connector: DirectedGraph   # on P1 ⊎ P2
    p1: tuple
    p2: tuple
    t1: list
    t2: list
    t12: list
    t21: list
    p1_of: dict                # port label -> forest edge it copies
    p2_of: dict

    @property
    def port_count(self):
        return len(self.p1)


def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _union(parent, size, a, b):
    ra, rb = _find(parent, a), _find(parent, b)
    if ra == rb:
        return False
    if size[ra] < size[rb]:
        ra, rb = rb, ra
    parent[rb] = ra
    size[ra] += size[rb]
    return True


def _forest(nv, tail, head, seed, grow=()):
    """Greedy forest over vertex ids 0..nv-1: ``seed`` edges first, then the
    ``grow`` edges that still join two trees (returned separately)."""
    parent, size = list(range(nv)), [1] * nv
    base = [e for e in seed if _union(parent, size, tail[e], head[e])]
    extra = [e for e in grow if _union(parent, size, tail[e], head[e])]
    return base, extra


def _minor(nv, tail, head, names, keep, contract):
    """G∘keep×(keep−contract) on integer edge and vertex ids; each class of
    fused vertices is named by its smallest vertex name. Returns the kept
    edge ids with their new end points."""
    parent, size = list(range(nv)), [1] * nv
    for e in contract:
        _union(parent, size, tail[e], head[e])
    best = {}
    for e in keep:
        for v in (tail[e], head[e]):
            r = _find(parent, v)
            b = best.get(r)
            if b is None or names[v] < names[b]:
                best[r] = v
    dropped = bytearray(len(tail))
    for e in contract:
        dropped[e] = 1
    return [(e, best[_find(parent, tail[e])], best[_find(parent, head[e])]) for e in keep if not dropped[e]]


def _graph(triples, label, names):
    """DirectedGraph from trusted (edge id, tail id, head id) triples."""
    G = DirectedGraph.__new__(DirectedGraph)
    G.edges = {label[e]: (names[t], names[h]) for e, t, h in triples}
    G.vertices = frozenset(names[v] for _, t, h in triples for v in (t, h))
    return G


def multiport_decompose(G, E1, E2, prime_offset=None):
    """Minimal multiport decomposition of G for the edge partition {E1, E2}.

    Port edges are copies of forest edges carrying ``prime_offset`` extra
    primes: P1 copies t2−t12, P2 copies t1−t21.
    """
    E1 = [sp.L(e) for e in E1]
    E2 = [sp.L(e) for e in E2]
    s1, s2 = set(E1), set(E2)
    if s1 & s2 or (s1 | s2) != set(G.edges) or len(s1) != len(E1) or len(s2) != len(E2):
        raise BadPartition("E1, E2 must partition the edge set")
    E1 = [lab for lab in G.edges if lab in s1]
    E2 = [lab for lab in G.edges if lab in s2]
    k = prime_offset if prime_offset is not None else sp.fresh_offset(G.edges)
    # everything below runs on integer ids: edges 0..m-1 (E1 first), then
    # one port copy per forest edge at id m + e; vertices 0..nv-1
    edges = E1 + E2
    m, n1 = len(edges), len(E1)
    # number vertices in order of first appearance so nearby edges touch nearby ids
    vid = {}
    for t, h in G.edges.values():
        vid.setdefault(t, len(vid))
        vid.setdefault(h, len(vid))
    for v in G.vertices:
        vid.setdefault(v, len(vid))
    names = list(vid)
    nv = len(names)
    tail = [vid[G.edges[lab][0]] for lab in edges]
    head = [vid[G.edges[lab][1]] for lab in edges]

    t1, _ = _forest(nv, tail, head, range(n1))
    t2, _ = _forest(nv, tail, head, range(n1, m))
    # grow t1 with t2 edges into a forest of G, and t2 with t1 edges
    _, t12 = _forest(nv, tail, head, t1, t2)
    _, t21 = _forest(nv, tail, head, t2, t1)
    in12, in21 = bytearray(m), bytearray(m)
    for e in t12:
        in12[e] = 1
    for e in t21:
        in21[e] = 1
    q1 = [e for e in t2 if not in12[e]]
    q2 = [e for e in t1 if not in21[e]]
    label = edges + [None] * m
    for e in q1 + q2:
        label[m + e] = edges[e].prime(k)
    # port copies share the end points of the edges they copy
    tail, head = tail + tail, head + head

    def ported(triples, q):
        mark = bytearray(m)
        for e in q:
            mark[e] = 1
        return [(m + e if e < m and mark[e] else e, t, h) for e, t, h in triples]

    e1 = ported(_minor(nv, tail, head, names, list(range(n1)) + t2, t12), q1)
    e2 = ported(_minor(nv, tail, head, names, list(range(n1, m)) + t1, t21), q2)
    # connector: G_{E1P1} ∘ (t1 ⊎ P1) × (P1 ⊎ (t1 − t21)), with t1 − t21 renamed P2
    tail1, head1 = tail[:], head[:]
    for e, t, h in e1:
        tail1[e], head1[e] = t, h
    conn = ported(_minor(nv, tail1, head1, names, t1 + [m + e for e in q1], t21), q2)
    return MultiportDecomposition(
        _graph(e1, label, names), _graph(e2, label, names), _graph(conn, label, names),
        sp.labels(label[m + e] for e in q1), sp.labels(label[m + e] for e in q2),
        [edges[e] for e in t1], [edges[e] for e in t2], [edges[e] for e in t12], [edges[e] for e in t21],
        {label[m + e]: edges[e] for e in q1}, {label[m + e]: edges[e] for e in q2},
    )


def port_count_formula(G, E1):
    """r(G∘E1) − r(G×E1)."""
    E1 = list(E1)
    return G.restrict(E1).rank() - G.contract_to(E1).rank()


def recompose(dec, kind="current", field=QQ):
    """(V(g1) ⊕ V(g2)) ↔ V(connector) for the chosen Kirchhoff space."""
    pick = 1 if kind == "current" else 0
    a = kirchhoff_spaces(dec.g1, field)[pick]
    b = kirchhoff_spaces(dec.g2, field)[pick]
    c = kirchhoff_spaces(dec.connector, field)[pick]
    return sp.compose(sp.direct_sum(a, b), c)
