"""Knuth-Bendix completion, group oracles and Cayley balls.

Words are encoded as strings, one character per letter, so that Python's
string order is the lexicographic order g1 < g1^-1 < g2 < g2^-1 < ...
and ShortLex is ``(len(w), w)``.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .errors import IncompleteOracle, ResourceLimit
from .words import free_reduce, inverse, shortlex_key

_BASE = 0x100


def enc(w):
    return "".join(chr(_BASE + 2 * (abs(x) - 1) + (x < 0)) for x in w)


def dec(s):
    out = []
    for ch in s:
        c = ord(ch) - _BASE
        g = c // 2 + 1
        out.append(-g if c % 2 else g)
    return tuple(out)


def _slex_gt(u, v):
    return (len(u), u) > (len(v), v)


class RewriteSystem:
    """A ShortLex-reducing string rewriting system over inverse-closed letters."""

    def __init__(self, ngens):
        self.ngens = ngens
        self.rules = {}
        self.lengths = Counter()
        self.complete = False
        self.status = "bounded-incomplete"

    def _add(self, lhs, rhs):
        self.rules[lhs] = rhs
        self.lengths[len(lhs)] += 1

    def _remove(self, lhs):
        del self.rules[lhs]
        self.lengths[len(lhs)] -= 1
        if not self.lengths[len(lhs)]:
            del self.lengths[len(lhs)]

    def reduce_str(self, s):
        rules, lens = self.rules, sorted(self.lengths)
        stack = []
        todo = list(reversed(s))
        while todo:
            stack.append(todo.pop())
            n = len(stack)
            for L in lens:
                if L > n:
                    break
                key = "".join(stack[n - L:])
                rhs = rules.get(key)
                if rhs is not None:
                    del stack[n - L:]
                    todo.extend(reversed(rhs))
                    break
        return "".join(stack)

    def reduce(self, w):
        return dec(self.reduce_str(enc(w)))

    def rule_list(self):
        return sorted(((dec(l), dec(r)) for l, r in self.rules.items()),
                      key=lambda lr: shortlex_key(lr[0]))

    def critical_pairs(self):
        """Yield all critical pairs (used to certify local confluence)."""
        items = list(self.rules.items())
        for l1, r1 in items:
            for l2, r2 in items:
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        yield r1 + l2[k:], l1[:-k] + r2
                if l1 != l2 and l2 in l1:
                    i = l1.index(l2)
                    yield r1, l1[:i] + r2 + l1[i + len(l2):]

    def is_locally_confluent(self):
        return all(self.reduce_str(a) == self.reduce_str(b) for a, b in self.critical_pairs())


def knuth_bendix(rp, max_rules=5000, max_length=64):
    """ShortLex Knuth-Bendix completion for the group given by ``rp``."""
    n = len(rp.generators)
    rs = RewriteSystem(n)
    eqs = deque()
    for g in range(1, n + 1):
        eqs.append((enc((g, -g)), ""))
        eqs.append((enc((-g, g)), ""))
    for r in rp.full_relators():
        h = (len(r) + 1) // 2
        eqs.append((enc(r[:h]), enc(inverse(r[h:]))))

    order = []  # lhs in insertion order
    failed = False

    def orient(a, b):
        a, b = rs.reduce_str(a), rs.reduce_str(b)
        if a == b:
            return None
        return (a, b) if _slex_gt(a, b) else (b, a)

    def insert(lhs, rhs):
        nonlocal failed
        rs._add(lhs, rhs)
        order.append(lhs)
        if len(rs.rules) > max_rules or len(lhs) > max_length:
            failed = True
        # interreduce
        for l in list(rs.rules):
            if l == lhs:
                continue
            if lhs in l:
                r = rs.rules[l]
                rs._remove(l)
                eqs.append((l, r))
            else:
                r = rs.rules[l]
                if lhs in r:
                    rs.rules[l] = rs.reduce_str(r)

    def drain():
        while eqs and not failed:
            a, b = eqs.popleft()
            o = orient(a, b)
            if o:
                insert(*o)

    drain()
    i = 0
    while i < len(order) and not failed:
        l1 = order[i]
        if l1 in rs.rules:
            for j in range(i + 1):
                l2 = order[j]
                if l2 not in rs.rules or l1 not in rs.rules:
                    continue
                for a, b in ((l1, l2), (l2, l1)):
                    for k in range(1, min(len(a), len(b))):
                        if a[-k:] == b[:k] and a in rs.rules and b in rs.rules:
                            eqs.append((rs.rules[a] + b[k:], a[:-k] + rs.rules[b]))
                drain()
                if failed:
                    break
        i += 1
    if not failed:
        rs.complete = True
        rs.status = "complete"
    return rs


# ----------------------------------------------------------------- oracles

class GroupOracle:
    """Word problem solver; ``backing`` names the strategy in use."""

    def __init__(self, rp, backing, rs=None):
        self.rp = rp
        self.backing = backing
        self.rs = rs
        self.complete = rs is None or rs.complete
        self._cache = {}

    def normal_form(self, w, partial=False):
        if not self.complete and not partial:
            raise IncompleteOracle("rewriting system did not complete")
        w = tuple(w)
        nf = self._cache.get(w)
        if nf is None:
            if self.backing == "FreeGroup":
                nf = free_reduce(w)
            elif self.backing == "FreeProductOfParabolics":
                nf = _free_product_nf(self.rp, w)
            else:
                nf = self.rs.reduce(w)
            if len(self._cache) < 1_000_000:
                self._cache[w] = nf
        return nf

    def mul(self, u, v):
        return self.normal_form(tuple(u) + tuple(v))

    def inv(self, u):
        return self.normal_form(inverse(u))

    def equal(self, u, v):
        return self.normal_form(u) == self.normal_form(v)

    def is_identity(self, w):
        return not self.normal_form(w)


def _is_free_product(rp):
    return not [r for r in rp.relators if free_reduce(r)]


def _syllable_word(p, letters):
    """ShortLex-least word for the element of parabolic ``p`` spelled by ``letters``."""
    if p is None or p.kind == "FreeGroup":
        return free_reduce(letters)
    if p.kind == "FreeAbelian":
        v = p.word_vector(letters)
        return p.vector_word(v)
    m = p.order
    e = sum(1 if x > 0 else -1 for x in letters) % m
    g = p.gens[0]
    return (g,) * e if e <= m - e else (-g,) * (m - e)


def _free_product_nf(rp, w):
    owner = {}
    for p in rp.parabolics:
        for g in p.gens:
            owner[g] = p
    # a generator outside every parabolic is its own free factor
    syl = []  # list of (factor key, letters)
    for x in free_reduce(w):
        p = owner.get(abs(x))
        key = p.id if p is not None else "free"
        if syl and syl[-1][0] == key:
            letters = _syllable_word(p, syl[-1][1] + (x,))
            if letters:
                syl[-1] = (key, letters)
            else:
                syl.pop()
        else:
            syl.append((key, (x,)))
    return tuple(x for _, letters in syl for x in letters)


def make_oracle(rp, max_rules=5000, max_length=64):
    if not rp.full_relators():
        return GroupOracle(rp, "FreeGroup")
    if _is_free_product(rp):
        return GroupOracle(rp, "FreeProductOfParabolics")
    return GroupOracle(rp, "RewriteSystem", knuth_bendix(rp, max_rules, max_length))


def normal_form(o, w):
    return o.normal_form(w)


# ------------------------------------------------------------- Cayley balls

@dataclass
class CayleyBall:
    oracle: GroupOracle
    radius: int
    elements: list  # normal forms in ShortLex order
    index: dict
    edges: list  # (i, j, g) with elements[j] = elements[i] * g, g > 0

    def __len__(self):
        return len(self.elements)

    def graph(self):
        from .graph import Graph
        return Graph(self.elements, [(i, j) for i, j, _ in self.edges])

    def sphere_sizes(self):
        c = Counter(len(w) for w in self.elements)
        return [c[r] for r in range(self.radius + 1)]


def cayley_ball(o, radius, max_vertices=200_000):
    """Ball of radius ``radius`` about 1 in the Cayley graph, ShortLex-ordered."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if not o.complete:
        raise IncompleteOracle("cannot build a Cayley ball from an incomplete system")
    n = len(o.rp.generators)
    letters = [s for g in range(1, n + 1) for s in (g, -g)]
    seen = {(): 0}
    frontier = [()]
    for r in range(radius):
        nxt = []
        for w in frontier:
            for s in letters:
                u = o.normal_form(w + (s,))
                if u not in seen:
                    seen[u] = r + 1
                    nxt.append(u)
                    if len(seen) > max_vertices:
                        raise ResourceLimit(f"Cayley ball exceeds {max_vertices} vertices")
        frontier = nxt
    elements = sorted(seen, key=shortlex_key)
    index = {w: i for i, w in enumerate(elements)}
    edges = set()
    for i, w in enumerate(elements):
        for g in range(1, n + 1):
            j = index.get(o.normal_form(w + (g,)))
            if j is not None and j != i:
                edges.add((i, j, g))
    return CayleyBall(o, radius, elements, index, sorted(edges))


def growth_series(rs, radius):
    """Sphere sizes 0..radius, counted as irreducible words of each length.

    For a complete ShortLex system the irreducible words are exactly the
    geodesic normal forms, so this counts group elements by length without
    building the ball.  Uses an Aho-Corasick automaton on the rule heads.
    """
    if not rs.complete:
        raise IncompleteOracle("growth counts need a complete system")
    alphabet = [chr(_BASE + i) for i in range(2 * rs.ngens)]
    goto = [{}]
    bad = [False]
    for lhs in rs.rules:
        s = 0
        for ch in lhs:
            if ch not in goto[s]:
                goto.append({})
                bad.append(False)
                goto[s][ch] = len(goto) - 1
            s = goto[s][ch]
        bad[s] = True
    fail = [0] * len(goto)
    delta = [dict() for _ in goto]
    queue = deque()
    for ch in alphabet:
        t = goto[0].get(ch)
        if t is None:
            delta[0][ch] = 0
        else:
            delta[0][ch] = t
            fail[t] = 0
            queue.append(t)
    while queue:
        s = queue.popleft()
        bad[s] = bad[s] or bad[fail[s]]
        for ch in alphabet:
            t = goto[s].get(ch)
            if t is None:
                delta[s][ch] = delta[fail[s]][ch]
            else:
                fail[t] = delta[fail[s]][ch]
                delta[s][ch] = t
                queue.append(t)
    counts = {0: 1}
    sizes = [1]
    for _ in range(radius):
        nxt = Counter()
        for s, c in counts.items():
            for ch in alphabet:
                t = delta[s][ch]
                if not bad[t]:
                    nxt[t] += c
        counts = nxt
        sizes.append(sum(nxt.values()))
    return sizes
