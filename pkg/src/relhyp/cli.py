"""Batch driver: ``python -m relhyp <command> [options]``.

Every command writes ``<out-dir>/<experiment>/<suite>.csv`` and a
``summary.json``; wall-clock timings go to ``run.log`` only, so reruns with
the same options give byte-identical CSV and JSON.  The exit status is 1
when any row reports a violation and 2 on an error.
"""
from __future__ import annotations

import argparse
import logging
import re
import sys
import time
from pathlib import Path

from . import experiments as ex
from .errors import RelHypError
from .horoball import HoroballGraph
from .graph import parse_base
from .serialize import horoball_lines, write_csv, write_json, write_lines

log = logging.getLogger("relhyp")


def _slug(*parts):
    return "-".join(re.sub(r"[^A-Za-z0-9]+", "", str(p)) for p in parts if p not in (None, ""))


def _ints(text):
    return tuple(int(x) for x in text.split(",") if x.strip())


class Run:
    """Collects suite outputs for one experiment directory."""

    def __init__(self, out_dir, name, config):
        self.dir = Path(out_dir) / name
        self.dir.mkdir(parents=True, exist_ok=True)
        self.name = name
        self.config = config
        self.suites = {}
        self.notes = []
        self._handler = logging.FileHandler(self.dir / "run.log", mode="w")
        self._handler.setFormatter(logging.Formatter("%(asctime)s %(message)s"))
        log.addHandler(self._handler)
        log.setLevel(logging.INFO)

    def suite(self, name, fn):
        t = time.perf_counter()
        rows = fn()
        log.info("%s/%s rows=%d seconds=%.2f", self.name, name, len(rows), time.perf_counter() - t)
        write_csv(self.dir / f"{name}.csv", rows)
        self.suites[name] = {"rows": len(rows), "violations": ex.violations(rows)}
        return rows

    def note(self, text):
        self.notes.append(text)

    @property
    def ok(self):
        return all(s["violations"] == 0 for s in self.suites.values())

    def close(self):
        write_json(self.dir / "summary.json", {"experiment": self.name, "config": self.config,
                                               "suites": self.suites, "notes": self.notes, "ok": self.ok})
        log.removeHandler(self._handler)
        self._handler.close()
        print(f"{self.name}")
        for name, s in self.suites.items():
            status = "ok" if s["violations"] == 0 else "VIOLATION"
            print(f"  {name:<14} rows {s['rows']:>5}  violations {s['violations']:>3}  {status}")
        for n in self.notes:
            print(f"  {n}")
        return self.ok


def _config(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out_dir")}


def _suites(choice, available):
    if choice in (None, "all"):
        return list(available)
    names = choice.split(",")
    bad = [n for n in names if n not in available]
    if bad:
        raise SystemExit(f"unknown suite {bad[0]!r}; choose from {', '.join(available)} or all")
    return names


# ------------------------------------------------------------------ commands

def cmd_horoball(args):
    depth = 8 if args.depth is None else args.depth
    if args.dump:
        lines = horoball_lines(HoroballGraph(parse_base(args.base), depth))
        print("\n".join(lines))
    run = Run(args.out_dir, args.name or _slug("horoball", args.base, f"d{depth}"), _config(args))
    if args.dump:
        write_lines(run.dir / "graph.txt", lines)
    for s in _suites(args.suite, ex.HOROBALL_SUITES):
        rows = run.suite(s, lambda s=s: ex.horoball_suite(args.base, depth, s, args.seed))
        if s == "delta":
            run.note(f"delta-hat {rows[0]['value']} (bound 20)")
    return run.close()


def cmd_cusped(args):
    rp = ex.load_bundled(args.presentation or "free2.grp")
    R = 5 if args.radius is None else args.radius
    T = 6 if args.depth is None else args.depth
    run = Run(args.out_dir, args.name or _slug("cusped", rp.name, f"r{R}", f"d{T}"), _config(args))
    if args.dump:
        cb = ex.build_cusped_ball(ex.make_oracle(rp), rp, R, T, args.max_vertices)
        write_lines(run.dir / "graph.txt", cb.to_lines())
    for s in _suites(args.suite, ex.CUSPED_SUITES):
        run.suite(s, lambda s=s: ex.cusped_suite(rp, R, T, s, args.seed, max_vertices=args.max_vertices))
    return run.close()


BICOMBING_SUITES = ("mineyev", "decomposition")


def cmd_bicombing(args):
    dm = args.delta or 1
    if args.presentation:
        rp = ex.load_bundled(args.presentation)
        R = 3 if args.radius is None else args.radius
        T = 1 if args.depth is None else args.depth
        g = ex.thick_ball(rp, R, T, args.max_vertices)
        label = _slug(rp.name, f"r{R}", f"d{T}")
    else:
        base = args.base or "grid:10x12"
        g = parse_base(base)
        label = _slug(base)
    run = Run(args.out_dir, args.name or _slug("bicombing", label, f"dm{dm}"), _config(args))
    for s in _suites(args.suite, BICOMBING_SUITES):
        if s == "mineyev":
            run.suite(s, lambda: ex.mineyev_rows(g, dm, args.seed, label))
        else:
            run.suite(s, lambda: ex.decomposition_rows(100, args.seed))
    return run.close()


def cmd_preferred(args):
    rp = ex.load_bundled(args.presentation or "free2.grp")
    pair = None
    R = 5 if args.radius is None else args.radius
    T = 6 if args.depth is None else args.depth
    if args.pair:
        pair = tuple(rp.word(w) for w in args.pair.split(","))
        if len(pair) != 2:
            raise SystemExit("--pair takes two comma-separated words")
        R = max(R, *(len(w) for w in pair))
    constants = args.constants or ("paper" if args.delta is None else str(args.delta))
    ctx, meta = ex.preferred_context(rp, R, T, constants, args.seed, args.max_vertices,
                                     probe_radius=args.probe_radius)
    name = args.name or _slug("preferred", rp.name, f"r{R}", f"d{T}", constants.replace(",", "-"),
                              args.pair and args.pair.replace(",", "-"))
    cfg = _config(args)
    cfg.update(constants_used=ctx.c.as_dict(), **meta)
    run = Run(args.out_dir, name, cfg)
    if pair is not None:
        rows = run.suite("pair", lambda: ex.preferred_suite(ctx, None, args.seed, meta, pair=pair))
        r = rows[0]
        verdict = "pass" if r["ok"] else "FAIL"
        run.note(f"quasigeodesic_check {verdict}: length {r['length']} distance {r['distance']} "
                 f"hausdorff {r['hausdorff']} family {r['family']}")
        return run.close()
    for s in _suites(args.suite, ex.PREFERRED_SUITES + ("stability",)):
        if s == "stability":
            rows = run.suite(s, lambda: ex.c_abc_stability(rp, (R, R + 1), T, ctx.c, seed=args.seed,
                                                           max_vertices=args.max_vertices))
            run.note("max |c_abc| by radius: " + ", ".join(f"{r['radius']}: {r['value']}"
                                                          for r in rows if r["check"] == "c_abc-max"))
        else:
            run.suite(s, lambda s=s: ex.preferred_suite(ctx, s, args.seed, meta))
    run.note("constants " + ", ".join(f"{k}={v}" for k, v in ctx.c.as_dict().items())
             + "".join(f", {k}={v}" for k, v in meta.items()))
    return run.close()


def cmd_fill(args):
    if args.manifest:
        rp, kernels = ex.kernels_from_manifest(ex.bundled_text(args.manifest))
        label = Path(args.manifest).stem
    else:
        rp = ex.load_bundled(args.presentation or "f2rel.grp")
        if not args.slopes:
            raise SystemExit("fill needs --slopes or --manifest")
        slopes = _ints(args.slopes)
        kernels = ex.kernels_from_slopes(rp, slopes)
        label = "s" + "-".join(map(str, slopes))
    R = 8 if args.radius is None else args.radius
    run = Run(args.out_dir, args.name or _slug("fill", rp.name, label, f"r{R}"), _config(args))
    for s in _suites(args.suite, ex.FILL_SUITES):
        rows = run.suite(s, lambda s=s: ex.fill_suite(rp, kernels, s, R, args.depth, args.seed,
                                                      max_vertices=args.max_vertices))
        if s == "triangle" and rows:
            r = rows[0]
            if r["verdict"] == "finite":
                run.note(f"finite, order {r['order']}")
            else:
                run.note(f"{r['verdict']}: growth {r['growth']}, delta-hat {r.get('delta')}")
        if s == "injectivity" and rows:
            met = rows[0]["threshold_met"]
            run.note("injectivity " + ("pass" if ex.violations(rows) == 0 else "FAIL")
                     + ("" if met else " (slopes below the configured threshold; agreement is empirical)"))
    return run.close()


def cmd_all(args):
    ok = True
    base = dict(vars(args))
    jobs = [(cmd_horoball, dict(base=b, depth=8, suite="all", dump=False)) for b in ("cycle:50", "path:99", "grid:8x8")]
    jobs += [(cmd_cusped, dict(presentation="free2.grp", radius=5, depth=6, suite="all", dump=False)),
             (cmd_bicombing, dict(presentation="free2.grp", radius=3, depth=1, base=None, delta=1, suite="all")),
             (cmd_preferred, dict(presentation="free2.grp", radius=5, depth=6, constants="paper", delta=None,
                                  pair=None, suite="all", probe_radius=None)),
             (cmd_preferred, dict(presentation="free2.grp", radius=5, depth=6, constants="1,1,1,3", delta=None,
                                  pair=None, suite="all", probe_radius=None))]
    for sl in ("2,3,5", "4,4,4", "8,8,8"):
        jobs.append((cmd_fill, dict(presentation="f2rel.grp", slopes=sl, manifest=None, radius=8, depth=None,
                                    suite="all")))
    for fn, over in jobs:
        ns = argparse.Namespace(**{**base, "name": None, **over})
        ok = fn(ns) and ok
    return ok


# ------------------------------------------------------------------ parser

def build_parser():
    p = argparse.ArgumentParser(prog="relhyp", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--presentation", help="presentation file, or a bundled name such as free2.grp")
    common.add_argument("--radius", type=int, help="Cayley-ball radius")
    common.add_argument("--depth", type=int, help="horoball truncation depth")
    common.add_argument("--delta", type=int, help="explicit delta (sets K, L1, L2 at the default ratios; delta_M for bicombing)")
    common.add_argument("--constants", help="'paper' to measure delta-hat, or delta,K,L1,L2")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--suite", default="all", help="comma-separated suite names or 'all'")
    common.add_argument("--out-dir", default="results")
    common.add_argument("--max-vertices", type=int, default=1_000_000)
    common.add_argument("--name", help="experiment directory name (default derived from options)")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("horoball", parents=[common], help="combinatorial horoball suites")
    h.add_argument("--base", default="cycle:50", help="cycle:N, path:N (N edges), grid:AxB or edge")
    h.add_argument("--dump", action="store_true", help="print the serialized horoball")
    h.set_defaults(func=cmd_horoball)

    c = sub.add_parser("cusped", parents=[common], help="cusped-space build and delta suites")
    c.add_argument("--dump", action="store_true", help="write the serialized cusped ball to graph.txt")
    c.set_defaults(func=cmd_cusped)

    b = sub.add_parser("bicombing", parents=[common], help="Mineyev bicombing and chain decomposition")
    b.add_argument("--base", help="base graph instead of a cusped thick ball (default grid:10x12)")
    b.set_defaults(func=cmd_bicombing)

    q = sub.add_parser("preferred", parents=[common], help="preferred paths, skeletons, axioms and q")
    q.add_argument("--pair", help="two comma-separated words, e.g. a^-9,a^9")
    q.add_argument("--probe-radius", type=int, help="radius of the ball used to measure delta-hat (default min(radius, 5))")
    q.set_defaults(func=cmd_preferred)

    f = sub.add_parser("fill", parents=[common], help="Dehn-filling experiments")
    f.add_argument("--slopes", help="one kernel exponent per parabolic, e.g. 7,7,7 (0 keeps it unfilled)")
    f.add_argument("--manifest", help="manifest with 'presentation' and 'fill' lines")
    f.set_defaults(func=cmd_fill)

    a = sub.add_parser("all", parents=[common], help="the curated suite of every command")
    a.set_defaults(func=cmd_all)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        ok = args.func(args)
    except RelHypError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    return 0 if ok else 1
