"""Independent reference computations used to freeze expected values.

Nothing here imports the package: each oracle takes a different route to
the same number (coset enumeration instead of rewriting, permutations or
real matrices instead of normal forms, networkx instead of the package's
BFS), so agreement is a genuine cross-check.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from fractions import Fraction

import networkx as nx
import numpy as np


# ------------------------------------------------------------- coset enumeration

def todd_coxeter_order(ngens, relators, limit=100_000):
    """Order of <gens | relators> by HLT coset enumeration over the trivial subgroup.

    Generators are 1..ngens, inverses negative.  Returns None past ``limit`` cosets.
    """
    cols = [g for i in range(1, ngens + 1) for g in (i, -i)]
    col = {g: k for k, g in enumerate(cols)}
    table = [[None] * len(cols)]
    parent = [0]

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    queue = []

    def union(a, b):
        a, b = find(a), find(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def process():
        while queue:
            b = queue.pop()
            for k, g in enumerate(cols):
                t = table[b][k]
                if t is None:
                    continue
                table[b][k] = None
                ik = col[-g]
                if table[t][ik] == b:
                    table[t][ik] = None
                a, t2 = find(b), find(t)
                if table[a][k] is None:
                    table[a][k] = t2
                else:
                    union(table[a][k], t2)
                    t2 = find(t2)
                if table[t2][ik] is None:
                    table[t2][ik] = a
                else:
                    union(table[t2][ik], a)

    def define(c, g):
        if len(table) >= limit:
            raise OverflowError
        n = len(table)
        table.append([None] * len(cols))
        parent.append(n)
        table[c][col[g]] = n
        table[n][col[-g]] = c
        return n

    def scan_fill(c, w):
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][col[w[i]]] is not None:
                f = table[f][col[w[i]]]
                i += 1
            if i > j:
                if f != b:
                    union(f, b)
                    process()
                return
            while j >= i and table[b][col[-w[j]]] is not None:
                b = table[b][col[-w[j]]]
                j -= 1
            if j < i:
                union(f, b)
                process()
                return
            if i == j:
                g = w[i]
                table[f][col[g]] = b
                table[b][col[-g]] = f
                return
            define(f, w[i])

    try:
        c = 0
        while c < len(table):
            if find(c) == c:
                for r in relators:
                    if find(c) != c:
                        break
                    scan_fill(c, r)
                if find(c) == c:
                    for g in cols:
                        if table[c][col[g]] is None:
                            define(c, g)
            c += 1
    except OverflowError:
        return None
    return sum(1 for c in range(len(table)) if find(c) == c)


def triangle_relators(p, q, r):
    """<x, y | x^p, y^q, (xy)^r> on generators x=1, y=2."""
    return [(1,) * p, (2,) * q, (1, 2) * r]


# ------------------------------------------------------------- permutations

def compose(s, t):
    """Apply s then t (right action, matching left-to-right words)."""
    return tuple(t[s[i]] for i in range(len(s)))


def perm_order(s):
    e = tuple(range(len(s)))
    k, t = 1, s
    while t != e:
        t = compose(t, s)
        k += 1
    return k


def a5_triangle_generators():
    """Even permutations x, y of 5 points with orders 2, 3 and xy of order 5."""
    evens = [s for s in itertools.permutations(range(5))
             if sum(1 for i in range(5) for j in range(i + 1, 5) if s[i] > s[j]) % 2 == 0]
    for x in evens:
        if perm_order(x) != 2:
            continue
        for y in evens:
            if perm_order(y) == 3 and perm_order(compose(x, y)) == 5:
                return x, y
    raise AssertionError("no generating pair found")


def perm_group_sphere_sizes(gens, radius):
    e = tuple(range(len(gens[0])))
    inv = lambda s: tuple(sorted(range(len(s)), key=lambda i: s[i]))
    letters = list(gens) + [inv(g) for g in gens]
    seen = {e}
    frontier = [e]
    sizes = [1]
    for _ in range(radius):
        nxt = []
        for s in frontier:
            for g in letters:
                t = compose(s, g)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        sizes.append(len(nxt))
        frontier = nxt
    return sizes


# ------------------------------------------------------------- PSL(2, R)

def psl2_triangle_sphere_sizes(p, q, r, radius, digits=7, with_product=False):
    """Sphere sizes of a hyperbolic (p,q,r) triangle group via a faithful real representation.

    x and y are elliptic with traces 2cos(pi/p), 2cos(pi/q) and xy has trace
    -2cos(pi/r) in SL(2,R); matrices are compared up to sign after rounding.
    ``with_product`` adds z = xy to the generating set.
    """
    tx, ty, txy = 2 * math.cos(math.pi / p), 2 * math.cos(math.pi / q), -2 * math.cos(math.pi / r)
    a = tx / 2
    x = np.array([[a, math.sqrt(1 - a * a)], [-math.sqrt(1 - a * a), a]])
    # y = [[u, v], [w, ty - u]] with det 1 and tr(xy) = txy, u = ty / 2
    u = ty / 2
    s = math.sqrt(1 - a * a)
    # tr(xy) = a*u + s*w - s*v + a*(ty-u) = a*ty + s*(w - v)
    diff = (txy - a * ty) / s
    # det y = u*(ty-u) - v*w = 1 with w = v + diff, so v^2 + diff*v - c = 0
    c = u * (ty - u) - 1
    v = (-diff + math.sqrt(diff * diff + 4 * c)) / 2
    w = v + diff
    y = np.array([[u, v], [w, ty - u]])
    gens = [x, y, x @ y] if with_product else [x, y]
    letters = [m for g in gens for m in (g, np.linalg.inv(g))]

    def key(m):
        v = np.round(m, digits).ravel() + 0.0
        lead = next(x for x in v if x != 0)
        return tuple(v if lead > 0 else -v + 0.0)

    e = np.eye(2)
    seen = {key(e)}
    frontier = [e]
    sizes = [1]
    for _ in range(radius):
        nxt = []
        for m in frontier:
            for g in letters:
                t = m @ g
                k = key(t)
                if k not in seen:
                    seen.add(k)
                    nxt.append(t)
        sizes.append(len(nxt))
        frontier = nxt
    return sizes


# ------------------------------------------------------------- horoballs

def horoball_nx(base, depth):
    """Explicit horoball truncation built straight from the edge rule."""
    dist = dict(nx.all_pairs_shortest_path_length(base))
    h = nx.Graph()
    nodes = list(base.nodes)
    for k in range(depth + 1):
        for v in nodes:
            h.add_node((v, k))
            if k < depth:
                h.add_edge((v, k), (v, k + 1))
        for v, w in itertools.combinations(nodes, 2):
            d = dist[v][w]
            if (k == 0 and d == 1) or (k > 0 and 0 < d <= 2 ** k):
                h.add_edge((v, k), (w, k))
    return h


def level_edge_count(base, k):
    dist = dict(nx.all_pairs_shortest_path_length(base))
    span = 1 if k == 0 else 2 ** k
    return sum(1 for v, w in itertools.combinations(base.nodes, 2) if 0 < dist[v][w] <= span)


# ------------------------------------------------------------- lattices

def l1_slope_bruteforce(rows, bound):
    """Least l1 norm of a nonzero vector in the row lattice, by enumeration of
    integer combinations with small coefficients."""
    best = None
    rng = range(-bound, bound + 1)
    for coeffs in itertools.product(rng, repeat=len(rows)):
        if not any(coeffs):
            continue
        v = [sum(c * r[i] for c, r in zip(coeffs, rows)) for i in range(len(rows[0]))]
        n = sum(abs(x) for x in v)
        if n and n <= bound and (best is None or n < best):
            best = n
    return best


def z4z4_table():
    """Multiplication table of Z/4 x Z/4 as pairs."""
    elems = [(i, j) for i in range(4) for j in range(4)]
    return {(a, b): ((a[0] + b[0]) % 4, (a[1] + b[1]) % 4) for a in elems for b in elems}


# ------------------------------------------------------------- free groups

def free_group_ball(radius, ngens=2):
    """Reduced words of length <= radius, letters +-1..+-ngens."""
    out = [()]
    frontier = [()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for g in [s for i in range(1, ngens + 1) for s in (i, -i)]:
                if w and w[-1] == -g:
                    continue
                nxt.append(w + (g,))
        out.extend(nxt)
        frontier = nxt
    return out


def coset_count(words, gen):
    """Distinct cosets w<gen> met by ``words``: strip trailing powers of gen."""
    reps = set()
    for w in words:
        w = list(w)
        while w and abs(w[-1]) == gen:
            w.pop()
        reps.add(tuple(w))
    return len(reps)


# ------------------------------------------------------------- thin triangles

def _point(path, t):
    """Point at arc length t (Fraction) as a frozenset of 1 or 2 vertices."""
    if t.denominator == 1:
        return (path[int(t)],)
    return (path[int(t)], path[int(t) + 1])


def _pdist(d, p, q):
    if set(p) == set(q):
        return Fraction(0)
    return Fraction(min(d[u][v] for u in p for v in q)) + Fraction(len(p) - 1, 2) + Fraction(len(q) - 1, 2)


def thin_delta_all_geodesics(g):
    """Max tripod-fibre diameter over all triples and all geodesic choices."""
    d = dict(nx.all_pairs_shortest_path_length(g))
    worst = Fraction(0)
    for x, y, z in itertools.combinations(g.nodes, 3):
        gx = Fraction(d[x][y] + d[x][z] - d[y][z], 2)
        gy = Fraction(d[y][x] + d[y][z] - d[x][z], 2)
        gz = Fraction(d[z][x] + d[z][y] - d[x][y], 2)
        for sxy in nx.all_shortest_paths(g, x, y):
            for syz in nx.all_shortest_paths(g, y, z):
                for szx in nx.all_shortest_paths(g, z, x):
                    for s1, s2, T in ((sxy, szx[::-1], gx), (syz, sxy[::-1], gy), (szx, syz[::-1], gz)):
                        t = Fraction(0)
                        while t <= T:
                            worst = max(worst, _pdist(d, _point(s1, t), _point(s2, t)))
                            t += Fraction(1, 2)
    return worst


# ------------------------------------------------------------- Mineyev f by hand

def mineyev_f_reference(g, a, b, delta=1):
    """Direct recursive evaluation of f(a, b) using networkx geodesics.

    Geodesics are the lexicographically least vertex sequences from the
    smaller endpoint, matching a fixed vertex order 0..n-1.
    """
    d = dict(nx.all_pairs_shortest_path_length(g))
    step = 10 * delta

    def geod(u, v):
        if u > v:
            return geod(v, u)[::-1]
        return min(nx.all_shortest_paths(g, u, v))

    def pr(u, v):
        if u == v:
            return u
        r = ((d[u][v] - 1) // step) * step
        return geod(u, v)[r]

    def f(u, v):
        n = d[u][v]
        if n <= step:
            return {v: Fraction(1)}
        if n % step:
            return f(u, pr(u, v))
        fl = [x for x in g.nodes if d[u][x] == n and d[v][x] <= delta]
        out = {}
        for x in fl:
            for k, c in f(u, pr(u, x)).items():
                out[k] = out.get(k, 0) + c / len(fl)
        return out

    return f(a, b)
