"""Horoball families, preferred paths, skeletons and the composite bicombing q.

Everything operates on a ``CuspedBall`` through a ``PathContext``, which
caches distance rows and the L1-horoballs (the depth >= L1 parts of the
glued horoballs).  An ideal endpoint e_A is written ``Ideal(hid)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .chains import SparseChain
from .errors import CornerAtL2, TruncationUnsound
from .horoball import sigma_vertices
from .metric import canonical_geodesic, hausdorff_distance, slimness


def multi_source_bfs(g, sources, limit=None):
    """Distance to the nearest source (-1 when unreached or beyond ``limit``)."""
    dist = np.full(g.n, -1, dtype=np.int32)
    layer = list(dict.fromkeys(sources))
    dist[layer] = 0
    k = 0
    while layer and (limit is None or k < limit):
        k += 1
        nxt = []
        for u in layer:
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = k
                    nxt.append(w)
        layer = nxt
    return dist


class Ideal(NamedTuple):
    hid: tuple


def _hid_key(hid):
    from .words import shortlex_key
    return (hid[0], shortlex_key(hid[1]))


# ------------------------------------------------------------ abstract closure

def is_ordered_subset(small, big):
    """``small`` occurs in ``big`` as a subsequence."""
    it = iter(big)
    return all(x in it for x in small)


def close_families(initial, order, max_iterations=10):
    """Witness-restricted closure D^0 -> D^1 -> ... of ordered families.

    ``initial`` maps ordered pairs to iterables of horoball ids, ``order``
    sorts a set of ids for a given pair.  Returns
    ``(families, reached_fixpoint, iterations)``.
    """
    fam = {p: order(p, set(s)) for p, s in initial.items()}
    for it in range(1, max_iterations + 1):
        new = {}
        for (a, b), F in fam.items():
            S = set(F)
            for (c, d), G in fam.items():
                pos = [i for i, h in enumerate(G) if h in S]
                if not pos:
                    continue
                lo, hi = min(pos), max(pos)
                if len(pos) >= 2:
                    S.update(G[lo:hi + 1])
                if c == a:
                    S.update(G[:hi + 1])
                if d == b:
                    S.update(G[lo:])
            new[(a, b)] = order((a, b), S)
        if new == fam:
            return fam, True, it
        fam = new
    return fam, False, max_iterations


def check_axioms(fams, c0=None, ck=None, translations=None):
    """Pass/fail with counterexamples for A1-A7 on a computed family map.

    ``translations`` is a list of ``(pair, image_pair, hid_map)`` used for
    A4: ``hid_map`` sends horoball ids of the first pair to the second.
    """
    bad = {f"A{i}": [] for i in range(1, 8)}
    for p, F in fams.items():
        if c0 is not None and not is_ordered_subset(c0[p], F):
            bad["A1"].append(p)
        if ck is not None and not is_ordered_subset(F, ck[p]):
            bad["A2"].append(p)
        rev = fams.get((p[1], p[0]))
        if rev is not None and list(rev) != list(F)[::-1]:
            bad["A3"].append(p)
    for p, q, hmap in translations or []:
        if p in fams and q in fams:
            img = [hmap(h) for h in fams[p]]
            if img != list(fams[q]):
                bad["A4"].append((p, q))
    items = list(fams.items())
    for i, (p, F) in enumerate(items):
        posF = {h: k for k, h in enumerate(F)}
        for q, G in items[i + 1:]:
            posG = {h: k for k, h in enumerate(G)}
            common = [h for h in F if h in posG]
            if len(common) >= 2:
                a, b = common[0], common[-1]
                mid_f = F[posF[a]:posF[b] + 1]
                ga, gb = sorted((posG[a], posG[b]))
                mid_g = G[ga:gb + 1]
                if posG[a] > posG[b]:
                    mid_g = mid_g[::-1]
                if list(mid_f) != list(mid_g):
                    bad["A5"].append((p, q))
            if p[0] == q[0]:
                for h in common:
                    if list(F[:posF[h] + 1]) != list(G[:posG[h] + 1]):
                        bad["A6"].append((p, q, h))
                        break
            if p[1] == q[1]:
                for h in common:
                    if list(F[posF[h]:]) != list(G[posG[h]:]):
                        bad["A7"].append((p, q, h))
                        break
    return {k: {"pass": not v, "violations": v[:10], "count": len(v)} for k, v in bad.items()}


# ------------------------------------------------------------ geometry

class PathContext:
    """Preferred-path machinery on one cusped ball at fixed constants."""

    def __init__(self, cb, constants):
        self.cb = cb
        self.c = constants
        self.g = cb.graph
        self.depths = cb.depths
        self.globules = {}
        if constants.L1 <= cb.T:
            for hid in cb.horoballs:
                vs = cb.horoball_vertices(hid, constants.L1)
                if vs:
                    self.globules[hid] = np.array(vs)
        self._hrow = {}
        self._ghb = {}
        self._geo = {}
        self.families = {}

    # rows and horoball distances ------------------------------------
    def d(self, a, b):
        return self.g.dist(a, b)

    def hrow(self, hid):
        r = self._hrow.get(hid)
        if r is None:
            r = multi_source_bfs(self.g, self.globules[hid].tolist())
            self._hrow[hid] = r
        return r

    def hid_of(self, v):
        """L1-horoball containing v, or None."""
        if self.depths[v] < self.c.L1:
            return None
        lab = self.g.labels[v]
        return (lab[1], lab[2])

    def geodesic(self, a, b):
        key = (a, b)
        p = self._geo.get(key)
        if p is None:
            p = canonical_geodesic(self.g, a, b)
            self._geo[key] = p
        return p

    def geodesic_set(self, a, b):
        ra, rb = self.g.row(a), self.g.row(b)
        d = ra[b]
        return np.nonzero((ra >= 0) & (rb >= 0) & (ra + rb == d))[0]

    def guard(self, vertices, inner):
        if inner is not None and not set(int(v) for v in vertices) <= inner:
            raise TruncationUnsound("a geodesic leaves the inner ball")

    # families ---------------------------------------------------------
    def projection_key(self, pair, hid):
        """Twice the midpoint of the nearest-point projection of hid to gamma(a, b)."""
        path = self.geodesic(*pair)
        r = self.hrow(hid)[path]
        ts = np.nonzero(r == r.min())[0]
        return int(ts.min() + ts.max())

    def order(self, pair, hids):
        a, b = pair
        sign = 1 if a <= b else -1
        return sorted(hids, key=lambda h: (self.projection_key(pair, h),
                                           tuple(sign * x for x in _hid_flat(h))))

    def family_C0(self, a, x, inner=None):
        a, x = self.resolve(a), self.resolve(x)
        geo = self.geodesic_set(a, x)
        self.guard(geo, inner)
        hids = {self.hid_of(int(v)) for v in geo if self.depths[v] >= self.c.L1}
        hids.discard(None)
        return self.order((a, x), hids)

    def family_CK(self, a, x, R=None, inner=None):
        R = self.c.K if R is None else R
        a, x = self.resolve(a), self.resolve(x)
        geo = self.geodesic_set(a, x)
        self.guard(geo, inner)
        out = set()
        ra = self.g.row(a)
        near = multi_source_bfs(self.g, geo.tolist(), R)
        cand = {self.hid_of(int(v)) for v in np.nonzero(near >= 0)[0] if self.depths[v] >= self.c.L1}
        cand.discard(None)
        for hid in sorted(cand, key=_hid_key):
            r = self.hrow(hid)
            if r[a] <= R or r[x] <= R or not self._avoids(a, x, ra, geo, r > R):
                out.add(hid)
        return self.order((a, x), out)

    def _avoids(self, a, x, ra, geo, allowed):
        """Is there a geodesic from a to x through ``allowed`` vertices only?"""
        reach = {a}
        layer = [a]
        onset = set(int(v) for v in geo)
        while layer:
            nxt = set()
            for u in layer:
                for w in self.g.adj[u]:
                    if w in onset and ra[w] == ra[u] + 1 and allowed[w]:
                        nxt.add(w)
            if x in nxt:
                return True
            reach |= nxt
            layer = list(nxt)
        return False

    def family_closure(self, pairs, max_iterations=10, inner=None):
        pairs = list(dict.fromkeys(list(pairs) + [(b, a) for a, b in pairs]))
        init = {p: self.family_C0(*p, inner=inner) for p in pairs}
        fams, fixed, its = close_families(init, self.order, max_iterations)
        self.families.update(fams)
        return fams, fixed, its

    def family(self, a, x):
        a, x = self.resolve(a), self.resolve(x)
        got = self.families.get((a, x))
        return got if got is not None else self.family_C0(a, x)

    # endpoints -----------------------------------------------------------
    def resolve(self, v):
        """Vertex index; an ideal point becomes the deepest vertex of its horoball
        closest to the identity."""
        if isinstance(v, Ideal):
            vs = self.cb.horoball_vertices(v.hid, self.cb.T)
            if not vs:
                raise TruncationUnsound("horoball is not represented in the ball")
            row = self.g.row(self.cb.center())
            return min(vs, key=lambda u: (row[u], u))
        return int(v)

    # geodesics to and between horoballs ----------------------------------
    def gamma_to(self, a, hid):
        """Canonical geodesic from a to the nearest point of horoball hid."""
        if self.hid_of(a) == hid:
            return [a]
        ra = self.g.row(a)
        vs = self.globules[hid]
        dd = ra[vs]
        u = int(vs[np.nonzero(dd == dd.min())[0][0]])
        return canonical_geodesic(self.g, a, u)

    def gamma_between(self, A, B):
        key = (A, B)
        got = self._ghb.get(key)
        if got is not None:
            return got
        if _hid_key(B) < _hid_key(A):
            p = self.gamma_between(B, A)[::-1]
        else:
            rA = self.hrow(A)
            vs = self.globules[B]
            dd = rA[vs]
            v = int(vs[np.nonzero(dd == dd.min())[0][0]])
            p = self.gamma_to(v, A)[::-1]
        self._ghb[key] = p
        return p

    def sigma(self, u, v):
        """sigma(u, v) for u, v in one L1-horoball, as cusped-ball indices."""
        lu, lv = self.g.labels[u], self.g.labels[v]
        hid = (lu[1], lu[2])
        hb = self.cb.horoballs[hid]
        d = hb.d_base(lu[3], lv[3])
        out = []
        for p, k in sigma_vertices(lu[3], lu[4], lv[3], lv[4], d, self.c.L2):
            if k > self.cb.T:
                raise TruncationUnsound(f"sigma path needs depth {k} > {self.cb.T}")
            out.append(self.cb.horo_index(hid, p, k))
        return out

    # preferred paths --------------------------------------------------------
    def preferred_path(self, a, x):
        ideal_a, ideal_x = isinstance(a, Ideal), isinstance(x, Ideal)
        ra, rx = self.resolve(a), self.resolve(x)
        fam = list(self.family(ra, rx))
        if ideal_a and a.hid not in fam:
            fam.insert(0, a.hid)
        if ideal_x and x.hid not in fam:
            fam.append(x.hid)
        if not fam:
            return PreferredPath(ra, rx, canonical_geodesic(self.g, ra, rx), (), [("geodesic", 0)])
        verts = [ra]
        pieces = []

        def extend(seg, kind):
            if seg[0] != verts[-1]:
                raise AssertionError("preferred path pieces do not abut")
            if len(seg) > 1:
                pieces.append((kind, len(verts) - 1))
                verts.extend(seg[1:])

        start = [ra] if ideal_a else self.gamma_to(ra, fam[0])
        extend(start, "geodesic")
        for i, A in enumerate(fam):
            entry = verts[-1]
            if i + 1 < len(fam):
                nxt = self.gamma_between(A, fam[i + 1])
            else:
                nxt = [rx] if ideal_x else self.gamma_to(rx, A)[::-1]
            extend(self.sigma(entry, nxt[0]), "sigma")
            extend(nxt, "geodesic")
        return PreferredPath(ra, rx, verts, tuple(fam), pieces)

    def quasigeodesic_check(self, pp):
        d = self.d(pp.a, pp.b)
        length = len(pp.vertices) - 1
        hd = hausdorff_distance(self.g, pp.vertices, canonical_geodesic(self.g, pp.a, pp.b))
        return {"length": length, "distance": d, "length_bound": 2 * d + self.c.quasigeodesic_eps,
                "length_ok": length <= 2 * d + self.c.quasigeodesic_eps,
                "hausdorff": hd, "hausdorff_bound": self.c.near_geodesic,
                "hausdorff_ok": hd <= self.c.near_geodesic,
                "deep_horizontal_ok": not pp.has_horizontal_at(self.c.L2, self.depths)}

    def triangle_slimness(self, a, b, c):
        sides = [self.preferred_path(a, b).vertices, self.preferred_path(b, c).vertices,
                 self.preferred_path(c, a).vertices]
        return slimness(self.g, sides)


def _hid_flat(h):
    return (h[0],) + tuple(h[1]) if not isinstance(h[1], int) else h


@dataclass
class PreferredPath:
    a: int
    b: int
    vertices: list
    family: tuple
    pieces: list  # (kind, start index)

    def __len__(self):
        return len(self.vertices) - 1

    def chain(self):
        return SparseChain.path(self.vertices)

    def has_horizontal_at(self, L, depths):
        return any(depths[u] == L and depths[v] == L for u, v in zip(self.vertices, self.vertices[1:]))


# ------------------------------------------------------------ skeletons

@dataclass
class Skeleton:
    corners: tuple
    circle: list  # image vertex per circle position
    corner_pos: tuple
    runs: list  # (hid, start, end) circle positions
    pairs: list  # (exit pos, entry pos, hid, image distance)
    classes: dict  # hid -> bite/nibble/dip/plunge
    faces: list  # (list of circle positions in circular order, thick?)
    legs: list = field(default_factory=list)  # per corner: pairs in the leg

    @property
    def ribs(self):
        return [p for p in self.pairs if p[3] != 0]

    @property
    def ligaments(self):
        return [p for p in self.pairs if p[3] == 0]

    def l2_vertices(self):
        out = []
        for _, s, e in self.runs:
            out.extend([s, e] if s != e else [s])
        return out

    def middle_count(self):
        inleg = set()
        for leg in self.legs:
            inleg.update(leg)
        return 3 + 2 * sum(1 for i in range(len(self.pairs)) if i not in inleg)

    def max_pair_distance(self):
        return max((p[3] for p in self.pairs), default=0)

    def to_lines(self):
        lines = [f"corners {' '.join(map(str, self.corners))}"]
        n = len(self.circle)
        for i in range(n):
            lines.append(f"boundary {i} {(i + 1) % n} {self.circle[i]} {self.circle[(i + 1) % n]}")
        for e, s, hid, dist in self.pairs:
            kind = "ligament" if dist == 0 else "rib"
            lines.append(f"{kind} {e} {s} {self.circle[e]} {self.circle[s]}")
        return lines


def build_skeleton(ctx, a, b, c, paths=None):
    """Skeleton of the preferred triangle (a, b, c) in the cusped ball."""
    L2 = ctx.c.L2
    depths = ctx.depths
    if paths is None:
        paths = [ctx.preferred_path(a, b).vertices, ctx.preferred_path(b, c).vertices,
                 ctx.preferred_path(c, a).vertices]
    for v in (a, b, c):
        if depths[v] == L2:
            raise CornerAtL2(f"corner {v} lies at depth L2 = {L2}")
    circle = paths[0][:-1] + paths[1][:-1] + paths[2][:-1]
    n = len(circle)
    corner_pos = (0, len(paths[0]) - 1, len(paths[0]) + len(paths[1]) - 2)
    side_of = np.zeros(n, dtype=int)
    side_of[corner_pos[1]:corner_pos[2]] = 1
    side_of[corner_pos[2]:] = 2
    deep = [depths[v] >= L2 for v in circle]
    runs = []
    if n and not all(deep) and any(deep):
        i0 = next(i for i in range(n) if not deep[i])
        i = 0
        while i < n:
            p = (i0 + i) % n
            if deep[p]:
                j = i
                while j + 1 < n and deep[(i0 + j + 1) % n]:
                    j += 1
                lab = ctx.g.labels[circle[p]]
                runs.append(((lab[1], lab[2]), p, (i0 + j) % n, i, j))
                i = j + 1
            else:
                i += 1
    by_hid = {}
    for hid, s, e, i, j in runs:
        by_hid.setdefault(hid, []).append((s, e, i, j))
    pairs, classes = [], {}
    for hid, rs in by_hid.items():
        rs.sort(key=lambda r: r[2])
        m = len(rs)
        for k in range(m):
            e = rs[k][1]
            s = rs[(k + 1) % m][0]
            pairs.append((e, s, hid, ctx.d(circle[e], circle[s])))
        sides = set()
        bite = False
        for s, e, i, j in rs:
            covered = [(i0 + t) % n for t in range(i, j + 1)]
            sides.update(int(side_of[t]) for t in covered)
            if any(cp in covered for cp in corner_pos):
                bite = True
        classes[hid] = "bite" if bite else {1: "nibble", 2: "dip"}.get(len(sides), "plunge")
    runs = [(hid, s, e) for hid, s, e, _, _ in runs]
    faces = _faces(n, pairs, corner_pos, deep)
    sk = Skeleton((a, b, c), circle, corner_pos, runs, pairs, classes, faces)
    sk.legs = _legs(sk, paths)
    return sk


def _faces(n, pairs, corner_pos, deep):
    """Faces of the chord diagram; each is (circular vertex positions, thick?)."""
    # a chord leaves just after an exit (slot 2e+1) and lands just before an
    # entry (slot 2s-1); arcs run forward between consecutive slots
    partner, at = {}, {}
    for e, s, _, _ in pairs:
        x, y = (2 * e + 1) % (2 * n), (2 * s - 1) % (2 * n)
        if x == y:
            continue
        partner[x], partner[y] = y, x
        at[x], at[y] = e, s
    if not partner:
        return [(list(corner_pos), not any(deep))]
    slots = sorted(partner)
    nxt_slot = {s: slots[(k + 1) % len(slots)] for k, s in enumerate(slots)}
    corner_set = set(corner_pos)
    seen = set()
    faces = []
    for start in slots:
        if start in seen:
            continue
        verts, is_thick = [], True
        x = start
        while x not in seen:
            seen.add(x)
            y = nxt_slot[x]
            lo = (x + 1) // 2
            covered = [(lo + t) % n for t in range(((y - x) % (2 * n)) // 2)]
            if any(deep[p] for p in covered):
                is_thick = False
            verts.append(at[x])
            verts.extend(p for p in covered if p in corner_set)
            verts.append(at[y])
            x = partner[y]
        faces.append((_dedupe_cyclic(verts), is_thick))
    return faces


def _dedupe_cyclic(vs):
    out = [v for i, v in enumerate(vs) if i == 0 or v != vs[i - 1]]
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _legs(sk, paths):
    """Pairs inside each leg: those nested inside the furthest ligament at a corner
    across which the two incident sides coincide."""
    n = len(sk.circle)
    legs = []
    for ci, cp in enumerate(sk.corner_pos):
        out_side = paths[ci]
        in_side = paths[(ci - 1) % 3]
        common = 0
        while (common + 1 < min(len(out_side), len(in_side))
               and out_side[common + 1] == in_side[-2 - common]):
            common += 1
        best = None
        for k, (e, s, hid, dist) in enumerate(sk.pairs):
            if dist != 0:
                continue
            for u, v in ((e, s), (s, e)):
                fu = (u - cp) % n  # forward offset on the outgoing side
                bv = (cp - v) % n  # backward offset on the incoming side
                if fu == bv and fu <= common and (best is None or fu > best[0]):
                    best = (fu, k)
        if best is None:
            legs.append([])
            continue
        reach = best[0]
        inside = []
        for k, (e, s, _, _) in enumerate(sk.pairs):
            offs = [min((u - cp) % n, (cp - u) % n) for u in (e, s)]
            if max(offs) <= reach:
                inside.append(k)
        legs.append(inside)
    return legs


# ------------------------------------------------------------ the bicombing q

class ThickBicombing:
    """Mineyev's Q on the thick part of a cusped ball, in cusped-ball indices."""

    def __init__(self, cb, max_depth, delta_m=1):
        from .bicombing import MineyevState
        self.graph, self.vs = cb.thick_part(max_depth)
        self.back = {v: i for i, v in enumerate(self.vs)}
        self.state = MineyevState(self.graph, delta_m)
        self.max_depth = max_depth

    def Q(self, u, v):
        if u == v:
            return SparseChain(1)
        q = self.state.Q(self.back[u], self.back[v])
        vs = self.vs
        out = SparseChain(1)
        out.c = {(vs[i], vs[j]): c for (i, j), c in q.c.items()}
        return out


def thick_bicombing(ctx, delta_m=None):
    dm = max(1, ctx.c.delta if delta_m is None else delta_m)
    top = min(ctx.cb.T, ctx.c.L2 + ctx.c.L1 + 18 * dm)
    return ThickBicombing(ctx.cb, top, dm)


def split_at_level(vertices, depths, L):
    """Pieces of a path cut at its depth-L vertices, tagged thick or deep."""
    cuts = [0] + [i for i in range(1, len(vertices) - 1) if depths[vertices[i]] == L] + [len(vertices) - 1]
    out = []
    for s, e in zip(cuts, cuts[1:]):
        seg = vertices[s:e + 1]
        out.append((seg, all(depths[v] <= L for v in seg)))
    return out


def q_bicombing(ctx, a, x, Q, path=None):
    """q(a, x): the preferred-path chain with thick pieces replaced by Q."""
    if a == x:
        return SparseChain(1)
    verts = path if path is not None else ctx.preferred_path(a, x).vertices
    out = SparseChain(1)
    for seg, thick in split_at_level(verts, ctx.depths, ctx.c.L2):
        if thick:
            out.iadd(Q.Q(seg[0], seg[-1]))
        else:
            out.iadd(SparseChain.path(seg))
    return out


def c_abc(ctx, sk, Q):
    """Sum of Q around the vertices of every thick face of the skeleton."""
    out = SparseChain(1)
    for verts, thick in sk.faces:
        if not thick or len(verts) < 2:
            continue
        imgs = [sk.circle[p] for p in verts]
        for u, v in zip(imgs, imgs[1:] + imgs[:1]):
            out.iadd(Q.Q(u, v))
    return out


def triangle_defect(ctx, a, b, c, Q):
    """(c_abc, defect chain, whether the defect lies in depth >= L2)."""
    paths = [ctx.preferred_path(a, b).vertices, ctx.preferred_path(b, c).vertices,
             ctx.preferred_path(c, a).vertices]
    sk = build_skeleton(ctx, a, b, c, paths)
    total = (q_bicombing(ctx, a, b, Q, paths[0]) + q_bicombing(ctx, b, c, Q, paths[1])
             + q_bicombing(ctx, c, a, Q, paths[2]))
    cc = c_abc(ctx, sk, Q)
    defect = total - cc
    ok = all(ctx.depths[u] >= ctx.c.L2 and ctx.depths[v] >= ctx.c.L2 for u, v in defect.c)
    return cc, defect, ok, sk
