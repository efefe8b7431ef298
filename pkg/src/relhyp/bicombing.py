"""Mineyev's recursive homological bicombing on a finite graph.

``Q(a, b)`` is built from the canonical geodesic bicombing ``P`` by
averaging over flowers and stars, then antisymmetrised.  All
coefficients are Fractions; recursion is memoised per ordered pair.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .chains import SparseChain, edge_key
from .errors import RelHypError
from .metric import canonical_geodesic


class MineyevState:
    def __init__(self, graph, delta_m=1):
        if delta_m < 1:
            raise ValueError("delta_m must be at least 1")
        self.g = graph
        self.dm = delta_m
        self.step = 10 * delta_m
        self._geod = {}
        self._f = {}
        self._star = {}
        self._qp = {}

    def d(self, a, b):
        return self.g.dist(a, b)

    def geod(self, a, b):
        key = (a, b)
        p = self._geod.get(key)
        if p is None:
            p = canonical_geodesic(self.g, a, b)
            self._geod[key] = p
        return p

    def P(self, a, b):
        """Chain of the canonical geodesic, as a dict edge-key -> coefficient."""
        out = {}
        p = self.geod(a, b)
        for u, v in zip(p, p[1:]):
            k, s = edge_key(u, v)
            out[k] = out.get(k, 0) + s
        return out

    # ------------------------------------------------------------ pieces
    def pr(self, a, b):
        if a == b:
            return a
        d = self.d(a, b)
        r = ((d - 1) // self.step) * self.step
        return self.geod(a, b)[r]

    def flower(self, a, b):
        d = self.d(a, b)
        ra, rb = self.g.row(a), self.g.row(b)
        return [int(x) for x in np.nonzero((ra == d) & (rb >= 0) & (rb <= self.dm))[0]]

    def f(self, a, b):
        """0-chain f(a, b) as a dict vertex -> Fraction."""
        key = (a, b)
        got = self._f.get(key)
        if got is not None:
            return got
        d = self.d(a, b)
        if d <= self.step:
            out = {b: Fraction(1)}
        elif d % self.step:
            out = self.f(a, self.pr(a, b))
        else:
            fl = self.flower(a, b)
            w = Fraction(1, len(fl))
            out = {}
            for x in fl:
                for v, c in self.f(a, self.pr(a, x)).items():
                    out[v] = out.get(v, 0) + w * c
        self._f[key] = out
        return out

    def star_vertex(self, a):
        got = self._star.get(a)
        if got is None:
            ball = self.g.ball(a, 7 * self.dm)
            w = Fraction(1, len(ball))
            got = {x: w for x in ball}
            self._star[a] = got
        return got

    def star(self, chain0):
        out = {}
        for v, c in chain0.items():
            for x, w in self.star_vertex(v).items():
                out[x] = out.get(x, 0) + c * w
        return {k: v for k, v in out.items() if v}

    def fbar(self, a, b):
        return self.star(self.f(a, b))

    def Qprime(self, a, b):
        key = (a, b)
        got = self._qp.get(key)
        if got is not None:
            return got
        d = self.d(a, b)
        if d <= self.step:
            out = self.P(a, b)
        else:
            out = {}
            for x, c in self.fbar(b, a).items():
                if self.d(a, x) >= d:
                    raise RelHypError(f"Mineyev recursion does not descend at {(a, b)}")
                for k, v in self.Qprime(a, x).items():
                    out[k] = out.get(k, 0) + c * v
                for k, v in self.P(x, b).items():
                    out[k] = out.get(k, 0) + c * v
            out = {k: v for k, v in out.items() if v}
        self._qp[key] = out
        return out

    def Q(self, a, b):
        if a == b:
            return SparseChain(1)
        ch = SparseChain(1, self.Qprime(a, b))
        ch.iadd(SparseChain(1, self.Qprime(b, a)), -1)
        return ch * Fraction(1, 2)

    def triangle_area(self, a, b, c):
        return (self.Q(a, b) + self.Q(b, c) + self.Q(c, a)).norm1()


def mineyev_pr(s, a, b):
    return s.pr(a, b)


def mineyev_flower(s, a, b):
    return s.flower(a, b)


def mineyev_f(s, a, b):
    return SparseChain(0, s.f(a, b))


def mineyev_star(s, c):
    return SparseChain(0, s.star(c.c if isinstance(c, SparseChain) else c))


def mineyev_Q(s, a, b):
    return s.Q(a, b)


def triangle_area(s, a, b, c):
    return s.triangle_area(a, b, c)
