"""Dehn-filling experiments: quotients, surgered spaces and injectivity checks.

Slope lengths and thresholds are recorded, never assumed.  The full-scale
threshold 12 * 2^(3000 delta) is kept symbolically (as a log2) because it
is far too large to hold as an integer for any realistic delta.
"""
from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .cusped import coset_partition
from .errors import IncompleteOracle, UnsupportedQuotient
from .graph import Graph
from .horoball import HoroballGraph, horoball_fill, check_fill
from .metric import delta_thin
from .rewriting import cayley_ball, growth_series, make_oracle
from .words import (INF, echelon, free_reduce, in_lattice, inverse, l1_shell, quotient_presentation,
                    shortlex_key, slope_length, triangle_kernels, triangle_presentation)


@dataclass
class FillingSpec:
    base: object
    kernels: list
    quotient: object
    slopes: dict  # parabolic id -> int or INF
    L2: int
    delta: int = 1

    @property
    def min_slope(self):
        return min(self.slopes.values(), default=INF)

    @property
    def paper_threshold_log2(self):
        """log2 of 12 * 2^(3000 delta)."""
        return 3000 * self.delta + math.log2(12)

    @property
    def config_threshold(self):
        return 12 * 2 ** self.L2

    def threshold_met(self):
        return self.min_slope >= self.config_threshold

    def record(self):
        conf = self.config_threshold if self.L2 <= 60 else f"12*2^{self.L2}"
        return {"slopes": {str(k): ("inf" if v == INF else v) for k, v in self.slopes.items()},
                "L2": self.L2, "config_threshold": conf,
                "paper_threshold": f"12*2^{3000 * self.delta}",
                "threshold_met": self.threshold_met()}


def shell_depth(slope):
    """Largest L with 2^(L+1) < slope: the deepest shell that stays simple."""
    if slope == INF:
        return None
    L = 0
    while 2 ** (L + 2) < slope:
        L += 1
    return L if 2 ** (L + 1) < slope else None


def fill(rp, kernels, L2=None, delta=1, search_bound=64):
    """Assemble the quotient presentation and the slope-length record."""
    by_id = {k.parabolic_id: k for k in kernels}
    slopes = {p.id: slope_length(p, by_id[p.id], search_bound) if p.id in by_id else INF
              for p in rp.parabolics}
    if L2 is None:
        depths = [shell_depth(s) for s in slopes.values() if s != INF]
        L2 = min((d for d in depths if d is not None), default=0) if depths else 3 * 100 * 10 * delta
    return FillingSpec(rp, list(kernels), quotient_presentation(rp, kernels), slopes, L2, delta)


def parabolic_order(p, k):
    """|P/K| for a parabolic and kernel, INF when infinite."""
    if k is None or k.is_trivial():
        return INF
    if p.kind == "FreeAbelian":
        basis = echelon(k.matrix)
        if len(basis) < p.rank:
            return INF
        return abs(math.prod(r[next(j for j, x in enumerate(r) if x)] for r in basis))
    if p.kind == "FiniteCyclic":
        g = p.order
        for w in k.words:
            g = math.gcd(g, sum(1 if x > 0 else -1 for x in w) % p.order)
        return g
    if p.rank == 1:
        return abs(math.gcd(*[sum(1 if x > 0 else -1 for x in w) for w in k.words])) or INF
    raise UnsupportedQuotient("order of a free-group quotient is not computed")


def _reduce_mod(v, basis):
    v = list(v)
    for r in basis:
        c = next(j for j, x in enumerate(r) if x)
        q = v[c] // r[c]
        v = [a - q * b for a, b in zip(v, r)]
    return tuple(v)


def quotient_cayley_graph(p, k):
    """Cayley graph of Z^r / K on the images of the standard generators."""
    if p.kind != "FreeAbelian" or parabolic_order(p, k) == INF:
        return None
    basis = echelon(k.matrix)
    start = _reduce_mod((0,) * p.rank, basis)
    seen, todo, edges = {start: 0}, [start], []
    while todo:
        v = todo.pop()
        for i in range(p.rank):
            w = _reduce_mod(tuple(x + (j == i) for j, x in enumerate(v)), basis)
            if w not in seen:
                seen[w] = len(seen)
                todo.append(w)
            if w != v:
                edges.append((seen[v], seen[w]))
    return Graph(list(seen), edges)


def parabolic_elements(p, max_len):
    """Nontrivial elements of P of word length <= max_len, as words."""
    if p.kind == "FreeAbelian":
        out = []
        for n in range(1, max_len + 1):
            out.extend(p.vector_word(v) for v in l1_shell(p.rank, n))
        return out
    letters = [s for g in p.gens for s in (g, -g)]
    out, frontier = [], [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for s in letters:
                if w and w[-1] == -s:
                    continue
                nxt.append(w + (s,))
        out.extend(nxt)
        frontier = nxt
    return out


# --------------------------------------------------------- surgered space

@dataclass
class SurgeredSpace:
    spec: FillingSpec
    oracle: object
    R: int
    T: int
    graph: Graph
    depths: np.ndarray
    cosets: list
    shell: dict = field(default_factory=dict)  # hid -> {k: Counter of (a, b) index pairs}
    ncayley: int = 0
    spheres: list = field(default_factory=list)

    def center(self):
        return self.graph.index["C", ()]

    def inner(self, margin=None):
        margin = self.R // 2 if margin is None else margin
        return self.graph.ball(self.center(), max(0, self.R - margin))


def _shell_counts(oracle, par, coset, k):
    """Edge multiplicities at depth k of the K-quotient of the horoball over P."""
    pos = {p: i for i, p in enumerate(coset.ps)}
    cnt = Counter()
    elems = parabolic_elements(par, 2 ** k)
    for i, p in enumerate(coset.ps):
        for e in elems:
            j = pos.get(oracle.normal_form(p + e))
            if j is None:
                continue
            cnt[(min(i, j), max(i, j))] += 1
    # each unordered edge {p~, p~e} was seen from both ends; a loop twice from one end
    return Counter({key: v // 2 for key, v in cnt.items()})


def build_surgered(fs, R, T, max_vertices=200_000, oracle=None):
    """Y/K over the quotient Cayley ball with horoballs glued beyond depth L2."""
    o = oracle or make_oracle(fs.quotient)
    if not o.complete:
        raise IncompleteOracle("quotient word problem not solved")
    cb = cayley_ball(o, R, max_vertices)
    cosets = coset_partition(cb, fs.base) if T > 0 else []
    pars = {p.id: p for p in fs.base.parabolics}
    labels = [("C", g) for g in cb.elements]
    edges = [(i, j) for i, j, _ in cb.edges]
    horo = [("H", c.parabolic, c.t, p, k) for c in cosets for p in c.ps for k in range(1, T + 1)]
    horo.sort(key=lambda v: (v[4], v[1], shortlex_key(v[2]), shortlex_key(v[3])))
    labels.extend(horo)
    index = {v: i for i, v in enumerate(labels)}
    shell = {}
    top = min(fs.L2, T)
    for c in cosets:
        i, t = c.hid
        lvl = {}
        for k in range(1, top + 1):
            lvl[k] = _shell_counts(o, pars[i], c, k)
            for (a, b) in lvl[k]:
                if a != b:
                    edges.append((index["H", i, t, c.ps[a], k], index["H", i, t, c.ps[b], k]))
        shell[c.hid] = lvl
        if T > fs.L2:
            if fs.L2 == 0:
                bgraph = c.graph
            else:
                bgraph = Graph(c.ps, [(a, b) for (a, b) in lvl[fs.L2] if a != b])
            hb = HoroballGraph(bgraph, T - fs.L2)
            for j in range(1, T - fs.L2 + 1):
                for a, b in hb.level_pairs(j):
                    k = fs.L2 + j
                    edges.append((index["H", i, t, c.ps[a], k], index["H", i, t, c.ps[b], k]))
        for m, p in zip(c.members, c.ps):
            edges.append((m, index["H", i, t, p, 1]))
            for k in range(1, T):
                edges.append((index["H", i, t, p, k], index["H", i, t, p, k + 1]))
    g = Graph(labels, edges)
    depths = np.array([0 if v[0] == "C" else v[4] for v in labels], dtype=np.int32)
    return SurgeredSpace(fs, o, R, T, g, depths, cosets, shell, len(cb.elements), cb.sphere_sizes())


def shell_check(z):
    """Compare each complete coset's shell with the horoball over its quotient coset graph.

    Returns rows ``(hid, level, isomorphic, max multiplicity, loops)``; only
    cosets whose every element of P/K lies in the ball are tested.
    """
    fs = z.spec
    pars = {p.id: p for p in fs.base.parabolics}
    kern = {k.parabolic_id: k for k in fs.kernels}
    rows = []
    for c in z.cosets:
        order = parabolic_order(pars[c.parabolic], kern.get(c.parabolic))
        if order == INF or len(c.ps) != order:
            continue
        hb = HoroballGraph(c.graph, fs.L2)
        want = quotient_cayley_graph(pars[c.parabolic], kern[c.parabolic])
        iso = want is not None and nx.is_isomorphic(c.graph.to_networkx(), want.to_networkx())
        rows.append((c.hid, 0, iso, 1, 0))
        for k, cnt in z.shell[c.hid].items():
            want = set(hb.level_pairs(k))
            got = {e for e in cnt if e[0] != e[1]}
            loops = sum(v for e, v in cnt.items() if e[0] == e[1])
            mult = max(cnt.values(), default=0)
            rows.append((c.hid, k, got == want and loops == 0 and mult <= 1, mult, loops))
    return rows


def surgered_matches_cusped(z, cb):
    """Exact label and edge equality with a cusped ball."""
    if z.graph.labels != cb.graph.labels:
        return False
    return sorted(z.graph.edges()) == sorted(cb.graph.edges())


# ------------------------------------------------------- injectivity and survival

def injectivity_check(fs, bound, oracle=None, samples=200, seed=0):
    """Is each P_i/K_i -> G/K injective on elements of length <= bound, and are
    the images of distinct parabolics disjoint away from 1?"""
    o = oracle or make_oracle(fs.quotient)
    if not o.complete:
        raise IncompleteOracle("quotient word problem not solved")
    kern = {k.parabolic_id: k for k in fs.kernels}
    rows, images = [], {}
    for p in fs.base.parabolics:
        k = kern.get(p.id)
        basis = echelon(k.matrix) if (k is not None and p.kind == "FreeAbelian") else None
        bad, tested, img = [], 0, set()
        for w in parabolic_elements(p, bound):
            if p.kind == "FreeAbelian" and basis is not None and in_lattice(p.word_vector(w), basis):
                continue
            if p.kind == "FreeAbelian" and basis is None and k is not None and not k.is_trivial():
                continue
            tested += 1
            nf = o.normal_form(w)
            if not nf:
                bad.append(w)
            else:
                img.add(nf)
        images[p.id] = img
        rows.append({"parabolic": p.id, "tested": tested, "violations": len(bad),
                     "examples": [list(w) for w in bad[:5]], "injective": not bad})
    rng = random.Random(seed)
    inter = []
    for i, j in itertools.combinations(sorted(images), 2):
        a, b = sorted(images[i], key=shortlex_key), sorted(images[j], key=shortlex_key)
        if len(a) > samples:
            a = rng.sample(a, samples)
        common = set(a) & set(b)
        inter.append({"pair": (i, j), "common": len(common), "disjoint": not common})
    accidental = not fs.threshold_met()
    return {"parabolics": rows, "intersections": inter,
            "pass": all(r["injective"] for r in rows) and all(x["disjoint"] for x in inter),
            "threshold_met": not accidental}


def _kernel_element(fs, w):
    """Is the word w a kernel element of a single parabolic?"""
    kern = {k.parabolic_id: k for k in fs.kernels}
    for p in fs.base.parabolics:
        if any(abs(x) not in p.gens for x in w):
            continue
        k = kern.get(p.id)
        if k is None or k.is_trivial():
            return False
        if p.kind == "FreeAbelian":
            return in_lattice(p.word_vector(w), echelon(k.matrix))
    return False


def survival_check(fs, words, oracle=None):
    """Report which words of ``words`` the quotient map identifies."""
    o = oracle or make_oracle(fs.quotient)
    if not o.complete:
        raise IncompleteOracle("quotient word problem not solved")
    base = make_oracle(fs.base)
    classes = {}
    for w in words:
        w = base.normal_form(tuple(w))
        classes.setdefault(o.normal_form(w), []).append(w)
    ident = []
    for ws in classes.values():
        ws = list(dict.fromkeys(ws))
        for u, v in itertools.combinations(ws, 2):
            d = free_reduce(inverse(u) + v)
            ident.append({"u": list(u), "v": list(v), "expected": _kernel_element(fs, d)})
    return {"words": len(set(base.normal_form(tuple(w)) for w in words)),
            "images": len(classes), "injective": not ident, "identified": ident}


# ----------------------------------------------------------- experiments

def triangle_experiment(p, q, r, radius=10, delta_radius=6, samples=2000, seed=0):
    """Fill F(x,y) rel <x>,<y>,<xy> by x^p, y^q, (xy)^r and gather evidence."""
    fs = fill(triangle_presentation(), triangle_kernels(p, q, r))
    o = make_oracle(fs.quotient)
    row = {"p": p, "q": q, "r": r, "curvature": "negative" if 1 / p + 1 / q + 1 / r < 1 else "nonnegative"}
    if not o.complete:
        row.update(verdict="undecided")
        return row
    growth = growth_series(o.rs, radius)
    row["growth"] = growth
    zero = next((i for i, s in enumerate(growth) if s == 0), None)
    if zero is not None:
        row.update(verdict="finite", order=sum(growth))
        return row
    increasing = all(b > a for a, b in zip(growth[1:], growth[2:]))
    row.update(verdict="infinite-evidence" if increasing else "undecided", increasing=increasing)
    g = cayley_ball(o, delta_radius).graph()
    inner = g.ball(0, delta_radius // 2)
    val, info = delta_thin(g, inner, {"samples": samples, "seed": seed}, return_info=True)
    row.update(delta=str(val), delta_samples=info["samples"])
    return row


def quotient_delta(fs, R, T, samples=2000, seed=0, loops=50):
    """delta-hat of the surgered space on its inner ball, plus fill ratios."""
    z = build_surgered(fs, R, T)
    o = z.oracle
    finite = None
    if o.rs is not None:
        finite = 0 in growth_series(o.rs, 4 * R + 4)
    inner = z.inner()
    val, info = delta_thin(z.graph, inner, {"samples": samples, "seed": seed}, return_info=True)
    rng = random.Random(seed)
    worst = 0.0
    for c in z.cosets[:3]:
        hb = HoroballGraph(c.graph, max(1, T))
        g = hb.graph()
        for _ in range(loops):
            loop = _random_loop(g, rng)
            if loop is None:
                continue
            labs = [g.labels[v] for v in loop]
            f = horoball_fill(hb, labs)
            worst = max(worst, f.area / (len(labs) - 1))
    return {"delta": str(val), "samples": info["samples"], "vertices": z.graph.n,
            "finite_quotient": finite,
            "max_area_ratio": worst, "threshold_met": fs.threshold_met(),
            "flag": None if fs.threshold_met() else "slope below configured threshold"}


def _random_loop(g, rng, length=8):
    start = rng.randrange(g.n)
    path = [start]
    for _ in range(length):
        path.append(rng.choice(g.adj[path[-1]]) if g.adj[path[-1]] else path[-1])
    back = []
    u, row = path[-1], g.row(start)
    while u != start:
        u = next(w for w in g.adj[u] if row[w] == row[u] - 1)
        back.append(u)
    loop = path + back
    return loop if len(loop) > 2 else None
