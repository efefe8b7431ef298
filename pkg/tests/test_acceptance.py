"""Acceptance criteria 1-13, one pass/fail line each.

Run under pytest (the lines are echoed in the terminal summary) or as a
script: ``python tests/test_acceptance.py``.  Tolerances are the ones
fixed by the build contract; nothing here is relaxed.
"""
from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import horoball_nx, psl2_triangle_sphere_sizes, todd_coxeter_order, triangle_relators  # noqa: E402
from relhyp import experiments as ex  # noqa: E402
from relhyp.graph import parse_base  # noqa: E402
from relhyp.horoball import HoroballGraph  # noqa: E402
from relhyp.metric import Constants  # noqa: E402
from relhyp.words import free_product_presentation, triangle_presentation  # noqa: E402

RESULTS = {}
BASES = ("cycle:50", "path:99", "grid:8x8")
F2 = free_product_presentation()


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def bad(rows):
    return ex.violations(rows)


# ---------------------------------------------------------------- horoballs

def criterion_1():
    t0 = time.perf_counter()
    parts, ok = [], True
    for base in BASES:
        h = HoroballGraph(parse_base(base), 8)
        # the BFS truth is taken on a graph built independently from the edge rule
        ref = horoball_nx(h.base.to_networkx(), 8)
        mine = nx.Graph()
        mine.add_nodes_from((h.bidx(v), k) for v, k in h.vertices())
        mine.add_edges_from(((h.bidx(a[0]), a[1]), (h.bidx(b[0]), b[1])) for a, b in h.edges())
        same = nx.utils.graphs_equal(ref, mine)
        rows = ex.horoball_metric_rows(h, 500, seed=0)
        g = h.graph()
        rng = random.Random(1)
        nx_bad = 0
        for _ in range(100):
            a, b = rng.randrange(g.n), rng.randrange(g.n)
            la, lb = g.labels[a], g.labels[b]
            want = nx.shortest_path_length(ref, (h.bidx(la[0]), la[1]), (h.bidx(lb[0]), lb[1]))
            nx_bad += ex.horoball_distance(h, la, lb, 8) != want
        mism = rows[-1]["value"]
        ok &= same and mism == 0 and nx_bad == 0
        parts.append(f"{base}: {mism} mismatches/500, networkx {nx_bad}/100, graph-equal {same}")
    secs = time.perf_counter() - t0
    ok &= secs < 60
    return record(1, ok, "; ".join(parts) + f"; {secs:.1f}s (limit 60s)")


def criterion_2():
    parts, ok = [], True
    for base in BASES:
        rows = ex.horoball_suite(base, 8, "geodesic", seed=0, geodesics=200)
        shape = rows[0]["value"]
        haus = rows[1]
        ok &= bad(rows) == 0
        parts.append(f"{base}: shape violations {shape}/200, max Hausdorff {haus['value']} (<=4)")
    return record(2, ok, "; ".join(parts))


def criterion_3():
    parts, ok = [], True
    for base in BASES:
        rows = ex.horoball_suite(base, 8, "fill", seed=0, loops=200)
        r = rows[0]
        ok &= bad(rows) == 0
        parts.append(f"{base}: {r['value']} failures/200, max area/length {r['max_area_ratio']} (<=3)")
    return record(3, ok, "; ".join(parts))


def criterion_4():
    t0 = time.perf_counter()
    parts, ok = [], True
    for base in BASES:
        rows = ex.horoball_suite(base, 8, "delta", seed=0, triangles=10_000)
        r = rows[0]
        ok &= bad(rows) == 0
        how = "exhaustive" if r["exhaustive"] else f"{r['triangles']} sampled"
        parts.append(f"{base}: delta {r['value']} ({how}, guard {r['guard']})")
    secs = time.perf_counter() - t0
    ok &= secs < 300
    return record(4, ok, "; ".join(parts) + f"; bound 20; {secs:.1f}s (limit 300s)")


# ---------------------------------------------------------------- bicombing and chains

def criterion_5():
    t0 = time.perf_counter()
    thick = ex.thick_ball(F2, 2, 3)
    assert thick.n <= 120
    grid = parse_base("grid:10x12")
    parts, ok = [], True
    for label, g in (("F2 thick ball R2 T3", thick), ("grid 10x12", grid)):
        rows = ex.mineyev_rows(g, 1, 0, label)
        counts = {r["check"]: r["value"] for r in rows}
        ok &= bad(rows) == 0
        parts.append(f"{label} ({g.n} vertices): boundary {counts['boundary']}, antisymmetry "
                     f"{counts['antisymmetry']}, flower {counts['flower']}, norm {counts['norm']} violations, "
                     f"max |Q|/d {counts['max-norm-ratio']} (<=18)")
    secs = time.perf_counter() - t0
    ok &= secs < 300
    return record(5, ok, "; ".join(parts) + f"; {secs:.1f}s (limit 300s)")


def criterion_6():
    rows = ex.decomposition_rows(100, seed=0)
    return record(6, bad(rows) == 0, f"{rows[0]['value']} incoherent decompositions/100")


# ---------------------------------------------------------------- preferred paths

_MEASURED = {}


def measured_context():
    if "ctx" not in _MEASURED:
        _MEASURED["ctx"] = ex.preferred_context(F2, 5, 6, "paper", seed=0)
    return _MEASURED["ctx"]


def criterion_7():
    ctx, meta = measured_context()
    paths = ex.preferred_suite(ctx, "paths", 0, meta, pairs=100)
    tris = ex.preferred_suite(ctx, "triangles", 0, meta, triangles=30)
    worst_len = max(r["length"] - 2 * r["distance"] for r in paths)
    worst_h = max(r["hausdorff"] for r in paths)
    worst_s = max(r["value"] for r in tris)
    c = ctx.c
    ok = bad(paths) == 0 and bad(tris) == 0
    return record(7, ok, f"delta-hat {meta['delta_hat']} -> K={c.K} L1={c.L1} L2={c.L2}; "
                         f"{bad(paths)} path violations/100 (max |p|-2d {worst_len} <= {c.quasigeodesic_eps}, "
                         f"max Hausdorff {worst_h} <= {c.near_geodesic}); "
                         f"{bad(tris)} slimness violations/30 (max {worst_s} <= {c.delta_prime})")


def criterion_8():
    parts, ok = [], True
    for spec in ((1, 1, 1, 3), (1, 1, 2, 4)):
        ctx, meta = ex.preferred_context(F2, 5, 6, Constants.override(*spec), seed=0)
        rows = ex.preferred_suite(ctx, "axioms", 0, meta, pairs=100)
        closure = rows[0]
        axioms = {r["check"]: r["count"] for r in rows if r["check"].startswith("A") and "count" in r}
        wit = next(r["value"] for r in rows if r["check"] == "A4-witnesses")
        ok &= bad(rows) == 0 and closure["value"] and closure["iterations"] <= 10
        parts.append(f"override {spec}: fixpoint in {closure['iterations']} iteration(s), "
                     f"{closure['pairs']} pairs ({closure['nonempty']} non-empty), "
                     f"violations {sum(axioms.values())} over A1-A7, A4 witnesses {wit}")
    return record(8, ok, "; ".join(parts))


CURATED = [("1", "a b", "b^-2"), ("a^-2 b", "a^2 b", "b^-1 a"), ("a^-4 b", "a^4 b", "a^4 b^-1"),
           ("b a^-3", "b a^3", "a^2 b^2"), ("a^-3", "a^3", "b^3")]


def criterion_9():
    parts, ok = [], True
    regimes = [("measured delta-hat", measured_context())]
    regimes.append(("override (1,1,1,3)", ex.preferred_context(F2, 5, 6, Constants.override(1, 1, 1, 3))))
    for name, (ctx, meta) in regimes:
        tris = [tuple(ctx.cb.cayley(F2.word(w)) for w in t) for t in CURATED]
        rows = ex.skeleton_rows(ctx, tris, 0)
        sampled = ex.preferred_suite(ctx, "skeleton", 0, meta, triangles=30)
        allr = rows + sampled
        ok &= bad(allr) == 0
        parts.append(f"{name}: {bad(allr)} violations on {len(CURATED)} curated + 30 sampled triangles "
                     f"(max ribs {max(r['ribs'] for r in allr)} <= 6, max middle {max(r['middle'] for r in allr)}"
                     f" <= 15, max pair distance {max(r['max_pair_distance'] for r in allr)} <= 1)")
    return record(9, ok, "; ".join(parts))


def criterion_10():
    parts, ok = [], True
    for name, constants in (("measured delta-hat", "paper"), ("override (1,1,1,3)", Constants.override(1, 1, 1, 3))):
        ctx, meta = measured_context() if constants == "paper" else ex.preferred_context(F2, 5, 6, constants)
        rows = ex.preferred_suite(ctx, "defect", 0, meta, triangles=30)
        stab = ex.c_abc_stability(F2, (5, 6), 6, ctx.c, triangles=30, seed=0)
        maxes = [r["value"] for r in stab if r["check"] == "c_abc-max"]
        ok &= bad(rows) == 0 and bad(stab) == 0
        parts.append(f"{name}: {bad(rows)} defect violations/30, max |c_abc| by radius 5,6 = "
                     f"{', '.join(maxes)} ({'stable' if stab[-1]['ok'] else 'UNSTABLE'})")
    return record(10, ok, "; ".join(parts))


# ---------------------------------------------------------------- Dehn filling

def criterion_11():
    t0 = time.perf_counter()
    finite = {(2, 3, 5): 60, (2, 3, 4): 24, (2, 3, 3): 12, (2, 2, 3): 6, (2, 2, 5): 10, (2, 2, 10): 20}
    parts, ok = [], True
    tp = triangle_presentation()
    for pqr, order in finite.items():
        rows = ex.fill_suite(tp, ex.kernels_from_slopes(tp, pqr), "triangle", radius=12)
        r = rows[0]
        tc = todd_coxeter_order(2, triangle_relators(*pqr))
        good = r["ok"] and r.get("order") == order == tc
        ok &= good
        parts.append(f"{pqr}->{r.get('order')}")
    for pqr in ((2, 3, 7), (3, 3, 4), (4, 4, 4)):
        rows = ex.fill_suite(tp, ex.kernels_from_slopes(tp, pqr), "triangle", radius=10)
        r = rows[0]
        matrix = psl2_triangle_sphere_sizes(*pqr, 8, with_product=True)
        delta = Fraction(r["delta"])
        good = r["ok"] and r["increasing"] and r["growth"][:9] == matrix
        ok &= good
        parts.append(f"{pqr}: growth to radius 10 increasing {r['increasing']}, "
                     f"matrix oracle agrees {r['growth'][:9] == matrix}, delta-hat {delta}")
    secs = time.perf_counter() - t0
    ok &= secs < 600
    return record(11, ok, "; ".join(parts) + f"; {secs:.1f}s (limit 600s)")


def criterion_12():
    parts, ok = [], True
    tp = triangle_presentation()
    for pqr in ((8, 8, 8), (12, 12, 12)):
        rows = ex.fill_suite(tp, ex.kernels_from_slopes(tp, pqr), "injectivity", radius=8)
        inj = [r for r in rows if r["check"] == "injective"]
        dis = [r for r in rows if r["check"] == "disjoint"]
        ok &= bad(rows) == 0 and len(inj) == 3 and len(dis) == 3
        parts.append(f"{pqr}: {sum(r['tested'] for r in inj)} parabolic elements, "
                     f"{sum(r['violations'] for r in inj)} collapse, {sum(r['common'] for r in dis)} shared images "
                     f"(threshold met {rows[0]['threshold_met']})")
    return record(12, ok, "; ".join(parts))


def criterion_13():
    parts, ok = [], True
    tp = triangle_presentation()
    for pqr in ((4, 4, 4), (8, 8, 8)):
        rows = ex.fill_suite(tp, ex.kernels_from_slopes(tp, pqr), "shell")
        ok &= bool(rows) and bad(rows) == 0
        parts.append(f"{pqr}: {len(rows)} shell levels checked, L2={rows[0]['L2']}, {bad(rows)} non-isomorphic")
    rows = ex.fill_suite(tp, ex.kernels_from_slopes(tp, (0, 0, 0)), "shell", radius=3, depth=2)
    triv = [r for r in rows if r["check"] == "trivial-filling"]
    ok &= len(triv) == 1 and triv[0]["ok"]
    parts.append(f"trivial filling reproduces the cusped ball: {triv[0]['value'] if triv else None}")
    return record(13, ok, "; ".join(parts))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10, criterion_11, criterion_12, criterion_13]


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 14))
def test_criterion(n):
    assert CRITERIA[n - 1](), RESULTS.get(n)


if __name__ == "__main__":
    results = [fn() for fn in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
