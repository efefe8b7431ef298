"""Combinatorial horoballs over finite graphs.

A horoball vertex is a pair ``(v, k)`` with ``v`` a base-vertex label and
``k >= 0`` its depth.  Levels up to the explicit depth are materialised;
distances and geodesics use the closed form, which is valid at any depth.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chains import SparseChain, boundary
from .errors import DepthOverflow, NotALoop, SelfLoop
from .graph import Graph


class HoroballGraph:
    def __init__(self, base, depth):
        if base.loops:
            raise SelfLoop("base graph has a self-loop")
        if not base.is_connected():
            raise ValueError("base graph must be connected")
        self.base = base
        self.depth = depth
        self.bd = base.all_distances()
        self._graph = None

    # ----------------------------------------------------------- structure
    def bidx(self, v):
        return self.base.index[v]

    def d_base(self, v, w):
        return int(self.bd[self.bidx(v), self.bidx(w)])

    def adjacent(self, a, b):
        (v, k), (w, j) = a, b
        if v == w:
            return abs(k - j) == 1
        if k != j:
            return False
        d = self.d_base(v, w)
        return d == 1 if k == 0 else 0 < d <= 2 ** k

    def level_pairs(self, k):
        """Index pairs (i<j) joined by a horizontal edge at depth k."""
        if k == 0:
            return self.base.edges()
        iu, ju = np.triu_indices(self.base.n, 1)
        dd = self.bd[iu, ju]
        m = (dd > 0) & (dd <= 2 ** k)
        return list(zip(iu[m].tolist(), ju[m].tolist()))

    def vertices(self):
        return [(v, k) for k in range(self.depth + 1) for v in self.base.labels]

    def edges(self, kind=None):
        lab = self.base.labels
        out = []
        for k in range(self.depth + 1):
            if kind in (None, "horizontal"):
                out.extend(((lab[i], k), (lab[j], k)) for i, j in self.level_pairs(k))
            if kind in (None, "vertical") and k < self.depth:
                out.extend(((v, k), (v, k + 1)) for v in lab)
        return out

    def graph(self):
        """Explicit truncation as a Graph, vertices ordered by (depth, base index)."""
        if self._graph is None:
            n = self.base.n
            labels = self.vertices()
            edges = []
            for k in range(self.depth + 1):
                edges.extend((k * n + i, k * n + j) for i, j in self.level_pairs(k))
                if k < self.depth:
                    edges.extend((k * n + i, (k + 1) * n + i) for i in range(n))
            self._graph = Graph(labels, edges)
        return self._graph

    # ------------------------------------------------------------- 2-cells
    def triangles(self, k):
        lab = self.base.labels
        nb = {}
        for i, j in self.level_pairs(k):
            nb.setdefault(i, set()).add(j)
            nb.setdefault(j, set()).add(i)
        for i in sorted(nb):
            for j in sorted(x for x in nb[i] if x > i):
                for l in sorted(x for x in nb[i] & nb[j] if x > j):
                    yield ((lab[i], k), (lab[j], k), (lab[l], k))

    def squares(self, k):
        lab = self.base.labels
        for i, j in self.level_pairs(k):
            yield ((lab[i], k), (lab[j], k), (lab[j], k + 1), (lab[i], k + 1))

    def pentagons(self, k):
        """Three horizontal edges u-v-w at depth k and u-w at depth k+1."""
        lab = self.base.labels
        lo, hi = 2 ** k, 2 ** (k + 1)
        nb = {}
        for i, j in self.level_pairs(k):
            nb.setdefault(i, set()).add(j)
            nb.setdefault(j, set()).add(i)
        for v in sorted(nb):
            ns = sorted(nb[v])
            for a in range(len(ns)):
                for b in range(a + 1, len(ns)):
                    u, w = ns[a], ns[b]
                    d = self.bd[u, w]
                    if (d > lo if k > 0 else d > 1) and d <= hi:
                        yield ((lab[u], k), (lab[v], k), (lab[w], k), (lab[w], k + 1), (lab[u], k + 1))

    def cell_counts(self, max_depth=None):
        top = self.depth if max_depth is None else max_depth
        return {
            "triangles": sum(sum(1 for _ in self.triangles(k)) for k in range(top + 1)),
            "squares": sum(sum(1 for _ in self.squares(k)) for k in range(top)),
            "pentagons": sum(sum(1 for _ in self.pentagons(k)) for k in range(top)),
        }

    def is_cell(self, cycle):
        """Whether a vertex cycle bounds one of the three kinds of 2-cell."""
        cyc = list(cycle)
        n = len(cyc)
        if any(not self.adjacent(cyc[i], cyc[(i + 1) % n]) for i in range(n)):
            return False
        if len(set(cyc)) != n:
            return False
        depths = [k for _, k in cyc]
        if n == 3:
            return len(set(depths)) == 1
        if n not in (4, 5):
            return False
        k = min(depths)
        if set(depths) != {k, k + 1}:
            return False
        top = [c for c in cyc if c[1] == k]
        low = [c for c in cyc if c[1] == k + 1]
        if n == 4:
            return len(top) == 2 and len(low) == 2
        if len(top) != 3 or len(low) != 2:
            return False
        u, w = low[0][0], low[1][0]
        d = self.d_base(u, w)
        return (d > 2 ** k if k > 0 else d > 1)


def build_horoball(base, depth):
    return HoroballGraph(base, depth)


# -------------------------------------------------------------- metric

def _hops_needed(D, M):
    """Minimal number of horizontal hops at depth M spanning base distance D."""
    if D == 0:
        return 0
    span = 2 ** M
    return -(-D // span)


def closed_form(D, ka, kb, max_depth=None):
    """(cost, M, h) minimising (M-ka)+(M-kb)+h with h <= 3 hops at depth M."""
    if D == 0:
        return abs(ka - kb), max(ka, kb), 0
    best = None
    M = max(ka, kb)
    while True:
        if max_depth is not None and M > max_depth:
            break
        h = _hops_needed(D, M)
        if h <= 3:
            cost = 2 * M - ka - kb + h
            if best is None or cost < best[0]:
                best = (cost, M, h)
            elif cost > best[0] + 2:
                break
        if h == 1:
            break
        M += 1
    if best is None:
        raise DepthOverflow(f"no geodesic within depth {max_depth}")
    return best


def horoball_distance(h, a, b, max_depth=None):
    (v, ka), (w, kb) = a, b
    return closed_form(h.d_base(v, w), ka, kb, max_depth)[0]


def horoball_geodesic(h, a, b, max_depth=None):
    """Canonical geodesic: smallest feasible depth, then least intermediate vertices."""
    (v, ka), (w, kb) = a, b
    D = h.d_base(v, w)
    cost, M, hops = closed_form(D, ka, kb, max_depth)
    path = [(v, k) for k in range(ka, M + 1)]
    if D == 0:
        path = [(v, k) for k in (range(ka, kb + 1) if kb >= ka else range(ka, kb - 1, -1))]
        return path
    span = 2 ** M
    bd = h.bd
    iv, iw = h.bidx(v), h.bidx(w)

    def ok(i, j):
        d = bd[i, j]
        return d == 1 if M == 0 else 0 < d <= span

    mids = []
    if hops == 2:
        x = next(i for i in range(h.base.n) if ok(iv, i) and ok(i, iw))
        mids = [x]
    elif hops == 3:
        near_w = [j for j in range(h.base.n) if ok(j, iw)]
        for x in range(h.base.n):
            if not ok(iv, x):
                continue
            y = next((j for j in near_w if ok(x, j)), None)
            if y is not None:
                mids = [x, y]
                break
    lab = h.base.labels
    path.extend((lab[i], M) for i in mids)
    path.extend((w, k) for k in range(M, kb - 1, -1))
    assert len(path) - 1 == cost
    return path


def geodesic_shape(path):
    """(number of vertical segments, number of horizontal edges)."""
    kinds = ["v" if a[0] == b[0] else "h" for a, b in zip(path, path[1:])]
    segs = 0
    prev = None
    for k in kinds:
        if k == "v" and prev != "v":
            segs += 1
        prev = k
    return segs, kinds.count("h")


def sigma_path(h, x, y, L2, d=None):
    """The path sigma(x, y): vertical to depth R, one horizontal edge, vertical back."""
    (p, k1), (q, k2) = x, y
    if d is None:
        d = h.d_base(p, q)
    return sigma_vertices(p, k1, q, k2, d, L2)


def sigma_depth(d, k1, k2, L2):
    N = 0
    while 2 ** N < d:
        N += 1
    R = max(N, k1, k2)
    return L2 + 1 if R == L2 else R


def sigma_vertices(p, k1, q, k2, d, L2):
    if d == 0:
        step = 1 if k2 >= k1 else -1
        return [(p, k) for k in range(k1, k2 + step, step)]
    R = sigma_depth(d, k1, k2, L2)
    return [(p, k) for k in range(k1, R + 1)] + [(q, k) for k in range(R, k2 - 1, -1)]


# ---------------------------------------------------------------- filling

@dataclass
class HoroFilling:
    cells: list = field(default_factory=list)  # (kind, vertex cycle)

    @property
    def area(self):
        return len(self.cells)

    def chain(self):
        ch = SparseChain(2)
        for _, cyc in self.cells:
            ch.iadd(SparseChain.cell(cyc))
        return ch


def _remove_backtracks(loop):
    changed = True
    while changed and len(loop) > 2:
        changed = False
        n = len(loop)
        for i in range(n):
            if loop[(i - 1) % n] == loop[(i + 1) % n]:
                # drop loop[i] and one copy of its repeated neighbour
                j = (i + 1) % n
                keep = [loop[t] for t in range(n) if t not in (i, j)]
                loop = keep
                changed = True
                break
    if len(loop) == 2 and loop[0] != loop[1]:
        loop = [loop[0]]
    return loop


def horoball_fill(h, loop, max_depth=None):
    """Fill a closed edge path (vertex list, first != last repeated optional)."""
    loop = list(loop)
    if len(loop) > 1 and loop[0] == loop[-1]:
        loop = loop[:-1]
    n = len(loop)
    for i in range(n):
        if n > 1 and not h.adjacent(loop[i], loop[(i + 1) % n]):
            raise NotALoop(f"{loop[i]} and {loop[(i + 1) % n]} are not adjacent")
    fill = HoroFilling()

    def near(a, b, k):
        d = h.d_base(a, b)
        return (d == 1) if k == 0 else 0 < d <= 2 ** k

    while True:
        loop = _remove_backtracks(loop)
        n = len(loop)
        if n <= 1:
            return fill
        j = min(k for _, k in loop)
        if max_depth is not None and j + 1 > max_depth:
            raise DepthOverflow(f"filling needs depth {j + 1} > {max_depth}")
        if all(k == j for _, k in loop):
            if n == 3:
                fill.cells.append(("triangle", tuple(loop)))
                return fill
            # horizontal shortcut at the current depth
            shortcut = next((i for i in range(n) if near(loop[i][0], loop[(i + 2) % n][0], j)), None)
            if shortcut is not None:
                i = shortcut
                tri = (loop[i], loop[(i + 1) % n], loop[(i + 2) % n])
                fill.cells.append(("triangle", tri))
                del loop[(i + 1) % n]
                continue
            loop = _push_cycle(loop, j, fill)
            continue
        # rotate so the loop starts just before a maximal run at depth j
        start = next(i for i in range(n) if loop[i][1] == j and loop[i - 1][1] != j)
        loop = loop[start - 1:] + loop[:start - 1] if start else loop[-1:] + loop[:-1]
        end = 1
        while end + 1 < n and loop[end + 1][1] == j:
            end += 1
        run = loop[1:end + 1]
        # a horizontal triangle at depth j shortens the loop; start over after it
        tri = next((i for i in range(len(run) - 2) if near(run[i][0], run[i + 2][0], j)), None)
        if tri is not None:
            fill.cells.append(("triangle", (run[tri], run[tri + 1], run[tri + 2])))
            del loop[tri + 2]
            continue
        new = _push_run(run, j, fill)
        loop = [loop[0]] + new[1:-1] + loop[end + 1:]


def _push_run(run, j, fill):
    """Replace a horizontal run at depth j by a run at depth j+1."""
    new = [(run[0][0], j + 1)]
    i = 0
    while i < len(run) - 1:
        if i + 2 < len(run):
            a, b, c = run[i], run[i + 1], run[i + 2]
            fill.cells.append(("pentagon", (a, b, c, (c[0], j + 1), (a[0], j + 1))))
            new.append((c[0], j + 1))
            i += 2
        else:
            a, b = run[i], run[i + 1]
            fill.cells.append(("square", (a, b, (b[0], j + 1), (a[0], j + 1))))
            new.append((b[0], j + 1))
            i += 1
    return new


def _push_cycle(loop, j, fill):
    n = len(loop)
    new = []
    i = 0
    while i < n:
        a = loop[i]
        if n - i >= 2:
            b, c = loop[i + 1], loop[(i + 2) % n]
            fill.cells.append(("pentagon", (a, b, c, (c[0], j + 1), (a[0], j + 1))))
            i += 2
        else:
            b = loop[(i + 1) % n]
            fill.cells.append(("square", (a, b, (b[0], j + 1), (a[0], j + 1))))
            i += 1
        new.append((a[0], j + 1))
    return new


def loop_chain(loop):
    loop = list(loop)
    if loop[0] != loop[-1]:
        loop = loop + loop[:1]
    return SparseChain.path(loop)


def check_fill(h, loop, fill):
    """(area bound holds, boundary matches) for a filling of ``loop``."""
    c = loop_chain(loop)
    length = len(loop) - (1 if loop[0] == loop[-1] else 0)
    ok_cells = all(h.is_cell(cyc) for _, cyc in fill.cells)
    return fill.area <= 3 * length, boundary(fill.chain()) == c and ok_cells
