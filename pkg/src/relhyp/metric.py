"""Distances, canonical geodesics, Gromov products and hyperbolicity estimates.

Everything here is exact: distances are ints and Gromov products are
half-integers held as Fractions.  Vertices are graph indices.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import Disconnected


# ---------------------------------------------------------------- constants

@dataclass(frozen=True)
class Constants:
    delta: int
    K: int
    L1: int
    L2: int
    regime: str = "paper"

    @classmethod
    def from_delta(cls, delta):
        delta = max(1, int(delta))
        K = 10 * delta
        L1 = 100 * K
        return cls(delta, K, L1, 3 * L1, "paper")

    @classmethod
    def override(cls, delta, K=None, L1=None, L2=None):
        K = 10 * delta if K is None else K
        L1 = 100 * K if L1 is None else L1
        L2 = 3 * L1 if L2 is None else L2
        return cls(delta, K, L1, L2, "override")

    @property
    def quasigeodesic_eps(self):
        return 20 * self.K + 120 * self.delta + 72

    @property
    def near_geodesic(self):
        return self.K + 12 * self.delta + 9

    @property
    def delta_prime(self):
        return 6 * self.K + 48 * self.delta + 28

    @property
    def q_support(self):
        return self.K + 25 * self.delta + 9

    @property
    def hdist(self):
        return 3 * self.K + 21 * self.delta + 14

    def as_dict(self):
        return {"delta": self.delta, "K": self.K, "L1": self.L1, "L2": self.L2, "regime": self.regime}


# ------------------------------------------------------------ distances

def bfs_distance(g, a, b):
    return g.dist(a, b)


def canonical_geodesic(g, a, b):
    """Greedy least-index geodesic from min(a, b); reversed when a > b."""
    if a == b:
        return [a]
    if a > b:
        return canonical_geodesic(g, b, a)[::-1]
    row = g.row(b)
    if row[a] < 0:
        raise Disconnected(f"{g.labels[a]} and {g.labels[b]} are not connected")
    path = [a]
    u = a
    while u != b:
        want = row[u] - 1
        u = next(w for w in g.adj[u] if row[w] == want)
        path.append(u)
    return path


def all_geodesics(g, a, b, limit=100000):
    """Every geodesic from a to b (small graphs only)."""
    row = g.row(b)
    out = []

    def rec(path):
        if len(out) >= limit:
            return
        u = path[-1]
        if u == b:
            out.append(list(path))
            return
        for w in g.adj[u]:
            if row[w] == row[u] - 1:
                path.append(w)
                rec(path)
                path.pop()

    rec([a])
    return out


def gromov_product(g, x, y, z):
    """(x, y)_z as an exact Fraction."""
    return Fraction(g.dist(x, z) + g.dist(y, z) - g.dist(x, y), 2)


def tripod(g, x, y, z):
    """Comparison tripod data for the triangle x, y, z."""
    sides = {
        "xy": canonical_geodesic(g, x, y),
        "yz": canonical_geodesic(g, y, z),
        "zx": canonical_geodesic(g, z, x),
    }
    prods = {"x": gromov_product(g, y, z, x), "y": gromov_product(g, x, z, y),
             "z": gromov_product(g, x, y, z)}
    return {"sides": sides, "products": prods,
            "internal": {"xy": prods["x"], "yz": prods["y"], "zx": prods["z"]}}


# -------------------------------------------------- points on paths

def point_at(path, t):
    """Point at arc-length t (a Fraction with denominator 1 or 2)."""
    if t.denominator == 1:
        return (path[int(t)],)
    i = int(t)
    return (path[i], path[i + 1])


def point_distance(g, p, q):
    """Distance between vertices or edge midpoints, given as 1- or 2-tuples."""
    if p == q or (len(p) == 2 and len(q) == 2 and set(p) == set(q)):
        return Fraction(0)
    best = min(g.dist(u, v) for u in p for v in q)
    return Fraction(best) + Fraction(len(p) - 1, 2) + Fraction(len(q) - 1, 2)


def _insize(g, s1, s2, T):
    """max over t in [0, T] (half steps) of the distance between s1(t), s2(t)."""
    worst = Fraction(0)
    t = Fraction(0)
    half = Fraction(1, 2)
    while t <= T:
        d = point_distance(g, point_at(s1, t), point_at(s2, t))
        if d > worst:
            worst = d
        t += half
    return worst


def triangle_thinness(g, x, y, z, sides=None):
    """Tripod-fibre diameter of one geodesic triangle."""
    if sides is None:
        sxy, syz, szx = canonical_geodesic(g, x, y), canonical_geodesic(g, y, z), canonical_geodesic(g, z, x)
    else:
        sxy, syz, szx = sides
    px = gromov_product(g, y, z, x)
    py = gromov_product(g, x, z, y)
    pz = gromov_product(g, x, y, z)
    return max(_insize(g, sxy, szx[::-1], px),
               _insize(g, syz, sxy[::-1], py),
               _insize(g, szx, syz[::-1], pz))


def _triples(inner, budget, rng):
    inner = list(inner)
    if len(inner) <= budget.get("exhaustive_max", 150):
        return list(itertools.combinations(inner, 3)), True
    n = budget.get("samples", 10000)
    return [tuple(rng.sample(inner, 3)) for _ in range(n)], False


def delta_thin(g, inner=None, budget=None, all_geos=False, return_info=False):
    """Thin-triangle constant over triangles with corners in ``inner``."""
    budget = dict(budget or {})
    inner = list(range(g.n)) if inner is None else list(inner)
    rng = random.Random(budget.get("seed", 0))
    triples, exhaustive = _triples(inner, budget, rng)
    worst = Fraction(0)
    for x, y, z in triples:
        if all_geos:
            for sides in itertools.product(all_geodesics(g, x, y), all_geodesics(g, y, z), all_geodesics(g, z, x)):
                worst = max(worst, triangle_thinness(g, x, y, z, sides))
        else:
            worst = max(worst, triangle_thinness(g, x, y, z))
    if return_info:
        return worst, {"samples": len(triples), "exhaustive": exhaustive, "seed": budget.get("seed", 0)}
    return worst


def delta_fourpoint(g, inner=None, budget=None, return_info=False):
    """Four-point (Gromov product) defect, maximised over quadruples."""
    budget = dict(budget or {})
    inner = list(range(g.n)) if inner is None else list(inner)
    rng = random.Random(budget.get("seed", 0))
    if len(inner) <= budget.get("exhaustive_max", 40):
        quads = list(itertools.combinations(inner, 4))
        exhaustive = True
    else:
        quads = [tuple(rng.sample(inner, 4)) for _ in range(budget.get("samples", 10000))]
        exhaustive = False
    worst = Fraction(0)
    for a, b, c, d in quads:
        s = sorted([g.dist(a, b) + g.dist(c, d), g.dist(a, c) + g.dist(b, d), g.dist(a, d) + g.dist(b, c)])
        worst = max(worst, Fraction(s[2] - s[1], 2))
    if return_info:
        return worst, {"samples": len(quads), "exhaustive": exhaustive, "seed": budget.get("seed", 0)}
    return worst


def set_distance_row(g, vertices):
    """Distance from every vertex to the nearest element of ``vertices``."""
    vs = list(vertices)
    out = np.array(g.row(vs[0]), copy=True)
    for v in vs[1:]:
        np.minimum(out, g.row(v), out=out)
    return out


def hausdorff_distance(g, path1, path2):
    if not path1 or not path2:
        raise ValueError("empty path")
    d12 = set_distance_row(g, set(path2))
    d21 = set_distance_row(g, set(path1))
    return int(max(d12[list(path1)].max(), d21[list(path2)].max()))


def slimness(g, sides):
    """Least s such that each side lies in the s-neighbourhood of the other two."""
    worst = 0
    for i, s in enumerate(sides):
        others = set(itertools.chain.from_iterable(sides[j] for j in range(len(sides)) if j != i))
        if not others:
            continue
        row = set_distance_row(g, others)
        worst = max(worst, int(row[list(s)].max()))
    return worst


def inner_ball(g, center, radius):
    return g.ball(center, radius)


def measure_delta(g, inner, samples=2000, seed=0, exhaustive_max=150):
    """Integer delta-hat >= 1 from the thin-triangle estimator."""
    budget = {"samples": samples, "seed": seed, "exhaustive_max": exhaustive_max}
    val, info = delta_thin(g, inner, budget, return_info=True)
    return max(1, -(-val.numerator // val.denominator)), val, info


def report_row(graph_id, radius, estimator, value, samples, seed):
    return {"graph-id": graph_id, "radius": radius, "estimator": estimator,
            "value": str(value), "samples": samples, "seed": seed}
