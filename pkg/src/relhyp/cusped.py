"""Finite truncations of the cusped space and the coned-off Cayley graph.

Vertex labels:

* ``('C', g)`` for the Cayley vertex with normal form ``g``;
* ``('H', i, t, p, k)`` for depth ``k >= 1`` above ``t p`` in the horoball
  of the coset ``t P_i``;
* ``('V', i, t)`` for a cone vertex (coned-off graph only).

A depth-0 horoball vertex ``(i, t, p, 0)`` is the Cayley vertex of ``t p``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ResourceLimit
from .graph import Graph
from .horoball import HoroballGraph
from .rewriting import cayley_ball
from .words import inverse, shortlex_key


@dataclass
class Coset:
    parabolic: int
    t: tuple
    members: list  # Cayley-ball indices of t*p, ShortLex order
    ps: list  # the parabolic elements p with t*p = member
    graph: Graph  # coset subgraph on ps

    @property
    def hid(self):
        return (self.parabolic, self.t)


def _components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        a, b = find(i), find(j)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[r] for r in sorted(groups)]


def coset_partition(cb, rp):
    """Cosets of each parabolic met by the Cayley ball, by P_i-labelled edges."""
    o = cb.oracle
    out = []
    for par in rp.parabolics:
        gens = set(par.gens)
        edges = [(i, j) for i, j, g in cb.edges if g in gens]
        for comp in _components(len(cb.elements), edges):
            t = cb.elements[comp[0]]
            tinv = inverse(t)
            ps = [o.normal_form(tinv + cb.elements[m]) for m in comp]
            pos = {m: k for k, m in enumerate(comp)}
            cedges = [(pos[i], pos[j]) for i, j in edges if i in pos and j in pos]
            out.append(Coset(par.id, t, comp, ps, Graph(ps, cedges)))
    return out


class CuspedBall:
    def __init__(self, oracle, rp, R, T, max_vertices=200_000):
        self.oracle = oracle
        self.rp = rp
        self.R = R
        self.T = T
        self.cball = cayley_ball(oracle, R, max_vertices)
        self.cosets = coset_partition(self.cball, rp) if T > 0 else []
        self.coset_by_hid = {c.hid: c for c in self.cosets}
        self._coset_of = {(c.parabolic, m): c for c in self.cosets for m in c.members}
        labels = [("C", g) for g in self.cball.elements]
        edges = [(i, j) for i, j, _ in self.cball.edges]
        horo = []
        for c in self.cosets:
            for p in c.ps:
                for k in range(1, T + 1):
                    horo.append(("H", c.parabolic, c.t, p, k))
        horo.sort(key=lambda v: (v[4], v[1], shortlex_key(v[2]), shortlex_key(v[3])))
        labels.extend(horo)
        if len(labels) > max_vertices:
            raise ResourceLimit(f"cusped ball exceeds {max_vertices} vertices")
        index = {v: i for i, v in enumerate(labels)}
        self.horoballs = {}
        for c in self.cosets:
            hb = HoroballGraph(c.graph, T)
            self.horoballs[c.hid] = hb
            i, t = c.hid
            for k in range(1, T + 1):
                for a, b in hb.level_pairs(k):
                    edges.append((index["H", i, t, c.ps[a], k], index["H", i, t, c.ps[b], k]))
            for m, p in zip(c.members, c.ps):
                edges.append((m, index["H", i, t, p, 1]))
                for k in range(1, T):
                    edges.append((index["H", i, t, p, k], index["H", i, t, p, k + 1]))
        self.graph = Graph(labels, edges)
        self.depths = np.array([0 if v[0] == "C" else v[4] for v in labels], dtype=np.int32)
        self.ncayley = len(self.cball.elements)

    # ----------------------------------------------------------- queries
    def __len__(self):
        return self.graph.n

    def label(self, i):
        return self.graph.labels[i]

    def idx(self, label):
        return self.graph.index[label]

    def cayley(self, g):
        """Index of the Cayley vertex of a word (normalised first)."""
        return self.graph.index[("C", self.oracle.normal_form(g))]

    def depth(self, v):
        if not isinstance(v, (int, np.integer)):
            v = self.idx(v)
        return int(self.depths[v])

    def element(self, v):
        """Group element t*p under a vertex."""
        lab = self.label(v)
        if lab[0] == "C":
            return lab[1]
        return self.oracle.normal_form(lab[2] + lab[3])

    def cosets_of(self, v):
        """The 0-horoballs containing a vertex."""
        lab = self.label(v)
        if lab[0] == "H":
            return ((lab[1], lab[2]),)
        return tuple(self._coset_of[par.id, v].hid for par in self.rp.parabolics
                     if (par.id, v) in self._coset_of)

    def l_horoball(self, v, L):
        """Horoball id of the L-horoball containing v, or None.

        For L = 0 a Cayley vertex lies in one 0-horoball per parabolic, so a
        tuple of ids is returned."""
        if not isinstance(v, (int, np.integer)):
            v = self.idx(v)
        lab = self.label(v)
        if L == 0:
            if lab[0] == "H":
                return (lab[1], lab[2])
            return self.cosets_of(v)
        if self.depths[v] < L:
            return None
        return (lab[1], lab[2])

    def horoball_vertices(self, hid, min_depth=1):
        i, t = hid
        c = self.coset_by_hid[hid]
        out = []
        if min_depth <= 0:
            out.extend(c.members)
        for p in c.ps:
            for k in range(max(1, min_depth), self.T + 1):
                out.append(self.graph.index["H", i, t, p, k])
        return sorted(out)

    def horo_index(self, hid, p, k):
        if k == 0:
            return self.graph.index["C", self.oracle.normal_form(hid[1] + p)]
        return self.graph.index["H", hid[0], hid[1], p, k]

    def d_coset(self, hid, p, q):
        c = self.coset_by_hid[hid]
        hb = self.horoballs[hid]
        return hb.d_base(p, q)

    def center(self):
        return self.graph.index["C", ()]

    def inner(self, margin=None):
        """Vertices within R - margin of the identity (default margin R/2)."""
        margin = self.R // 2 if margin is None else margin
        return self.graph.ball(self.center(), max(0, self.R - margin))

    def translate(self, g, v):
        """Left translate of vertex v by g, or None if it leaves the ball."""
        lab = self.label(v)
        o = self.oracle
        if lab[0] == "C":
            return self.graph.index.get(("C", o.normal_form(tuple(g) + lab[1])))
        _, i, t, p, k = lab
        h = o.normal_form(tuple(g) + t + p)
        j = self.graph.index.get(("C", h))
        if j is None:
            return None
        c = self._coset_of.get((i, j))
        if c is None:
            return None
        q = c.ps[c.members.index(j)]
        return self.graph.index.get(("H", i, c.t, q, k))

    def translate_hid(self, g, hid):
        c = self.coset_by_hid[hid]
        for m in c.members:
            j = self.translate(g, m)
            if j is not None and (hid[0], j) in self._coset_of:
                return self._coset_of[hid[0], j].hid
        return None

    def thick_part(self, max_depth):
        """Induced subgraph on vertices of depth <= max_depth, with index map."""
        keep = [i for i in range(self.graph.n) if self.depths[i] <= max_depth]
        return self.graph.induced(keep)

    def to_lines(self):
        from .serialize import cusped_lines
        return cusped_lines(self)


def build_cusped_ball(oracle, rp, R, T, max_vertices=200_000):
    return CuspedBall(oracle, rp, R, T, max_vertices)


@dataclass
class ConedOffGraph:
    graph: Graph
    cones: dict  # hid -> cone vertex index
    ncayley: int


def build_coned_off(oracle, rp, R, max_vertices=200_000):
    cb = cayley_ball(oracle, R, max_vertices)
    labels = [("C", g) for g in cb.elements]
    edges = [(i, j) for i, j, _ in cb.edges]
    cones = {}
    for c in coset_partition(cb, rp):
        cones[c.hid] = len(labels)
        labels.append(("V", c.parabolic, c.t))
        edges.extend((m, cones[c.hid]) for m in c.members)
    return ConedOffGraph(Graph(labels, edges), cones, len(cb.elements))
