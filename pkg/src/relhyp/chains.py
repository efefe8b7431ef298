"""Exact rational cellular chains and flow decomposition of 1-chains.

Cells are keyed canonically: a vertex by itself, an edge by its ordered
endpoint pair ``(u, v)`` with ``u < v``, and a 2-cell by its boundary
cycle rotated to start at its least vertex with the smaller neighbour
second.  Re-orienting a cell negates its coefficient.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import BoundaryNotInT


def _lt(u, v):
    try:
        return u < v
    except TypeError:
        return repr(u) < repr(v)


def _argmin(seq):
    try:
        return min(range(len(seq)), key=seq.__getitem__)
    except TypeError:
        return min(range(len(seq)), key=lambda i: repr(seq[i]))


def edge_key(u, v):
    """Canonical key and sign for the oriented edge u -> v."""
    return ((u, v), 1) if _lt(u, v) else ((v, u), -1)


def cell_key(cycle):
    """Canonical key and sign for an oriented 2-cell given by its vertex cycle."""
    cyc = list(cycle)
    m = _argmin(cyc)
    rot = cyc[m:] + cyc[:m]
    if _lt(rot[-1], rot[1]):
        return tuple([rot[0]] + rot[:0:-1]), -1
    return tuple(rot), 1


class SparseChain:
    """A finitely supported chain with Fraction coefficients."""

    __slots__ = ("dim", "c")

    def __init__(self, dim, coeffs=None):
        self.dim = dim
        self.c = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    self.c[k] = Fraction(v)

    # construction -----------------------------------------------------
    @classmethod
    def vertex(cls, v, coef=1):
        return cls(0, {v: coef})

    @classmethod
    def edge(cls, u, v, coef=1):
        k, s = edge_key(u, v)
        return cls(1, {k: s * Fraction(coef)})

    @classmethod
    def path(cls, vertices, coef=1):
        ch = cls(1)
        for u, v in zip(vertices, vertices[1:]):
            ch.add_edge(u, v, coef)
        return ch

    @classmethod
    def cell(cls, cycle, coef=1):
        k, s = cell_key(cycle)
        return cls(2, {k: s * Fraction(coef)})

    # mutation -------------------------------------------------------------
    def _bump(self, k, v):
        x = self.c.get(k, 0) + v
        if x:
            self.c[k] = x
        else:
            self.c.pop(k, None)

    def add_edge(self, u, v, coef=1):
        k, s = edge_key(u, v)
        self._bump(k, s * Fraction(coef))

    def iadd(self, other, scale=1):
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        scale = Fraction(scale)
        for k, v in other.c.items():
            self._bump(k, v * scale)
        return self

    # arithmetic -------------------------------------------------------------
    def copy(self):
        out = SparseChain(self.dim)
        out.c = dict(self.c)
        return out

    def __add__(self, other):
        return self.copy().iadd(other)

    def __sub__(self, other):
        return self.copy().iadd(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, s):
        s = Fraction(s)
        out = SparseChain(self.dim)
        if s:
            out.c = {k: v * s for k, v in self.c.items()}
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SparseChain) and self.dim == other.dim and self.c == other.c

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    def __repr__(self):
        return f"SparseChain({self.dim}, {len(self.c)} cells, |.|_1={self.norm1()})"

    def norm1(self):
        return sum((abs(v) for v in self.c.values()), Fraction(0))

    def total(self):
        return sum(self.c.values(), Fraction(0))

    def support(self):
        return set(self.c)

    def support_vertices(self):
        if self.dim == 0:
            return set(self.c)
        out = set()
        for k in self.c:
            out.update(k)
        return out

    def oriented_items(self):
        """Edges as (u, v, positive coefficient) in the direction of flow."""
        for (u, v), a in self.c.items():
            yield (u, v, a) if a > 0 else (v, u, -a)

    def to_lines(self):
        def fmt(k):
            return repr(k).replace(" ", "")
        return [f"{fmt(k)} {v.numerator}/{v.denominator}" for k, v in sorted(self.c.items(), key=lambda kv: repr(kv[0]))]


def boundary(ch):
    if ch.dim == 0:
        return SparseChain(-1)
    out = SparseChain(ch.dim - 1)
    if ch.dim == 1:
        for (u, v), a in ch.c.items():
            out._bump(v, a)
            out._bump(u, -a)
        return out
    for cyc, a in ch.c.items():
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            out.add_edge(u, v, a)
    return out


def decompose_chain(f, T):
    """Coherent decomposition f = sum alpha_i p_i into simple T-paths.

    Returns a list of ``(alpha, vertex_path)``; a path whose first and last
    vertices coincide is a simple cycle.  Coherence means
    ``sum alpha_i * (len(p_i) - 1) == f.norm1()``.
    """
    if f.dim != 1:
        raise ValueError("decompose_chain expects a 1-chain")
    T = set(T)
    d = boundary(f)
    if not d.support() <= T:
        raise BoundaryNotInT(f"boundary support {sorted(d.support() - T, key=repr)[:5]} not in T")
    if not T and f:
        raise BoundaryNotInT("circulation with empty T")
    # residual flow on oriented edges of the positive graph
    out = {}
    for u, v, a in f.oriented_items():
        out.setdefault(u, {})[v] = a
    excess = dict(d.c)  # >0 sinks, <0 sources
    pieces = []

    def take(path, amount):
        for u, v in zip(path, path[1:]):
            out[u][v] -= amount
            if not out[u][v]:
                del out[u][v]
                if not out[u]:
                    del out[u]

    def walk(start):
        pos = {start: 0}
        path = [start]
        u = start
        while True:
            if u != start and excess.get(u, 0) > 0:
                return path, None
            nxt = out.get(u)
            if not nxt:
                return path, None
            cand = list(nxt)
            v = cand[_argmin(cand)]
            if v in pos:
                return path, pos[v]
            pos[v] = len(path)
            path.append(v)
            u = v

    while out:
        sources = sorted((v for v, a in excess.items() if a < 0), key=repr)
        start = sources[0] if sources else min(out, key=repr)
        path, loop_at = walk(start)
        if loop_at is not None:
            cyc = path[loop_at:] + [path[loop_at]]
            amt = min(out[u][v] for u, v in zip(cyc, cyc[1:]))
            take(cyc, amt)
            pieces.append((amt, cyc))
            continue
        end = path[-1]
        amt = min(out[u][v] for u, v in zip(path, path[1:]))
        amt = min(amt, -excess[start], excess[end])
        take(path, amt)
        for v, s in ((start, amt), (end, -amt)):
            excess[v] = excess[v] + s
            if not excess[v]:
                del excess[v]
        pieces.append((amt, path))
    return pieces


def path_length(p):
    return len(p) - 1


def recompose(pieces):
    ch = SparseChain(1)
    for a, p in pieces:
        ch.iadd(SparseChain.path(p), a)
    return ch
