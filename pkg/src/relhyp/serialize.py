"""Plain-text and CSV/JSON output formats."""
from __future__ import annotations

import csv
import json
from pathlib import Path


def _word(w, names=None):
    if not w:
        return "1"
    if names is None:
        return ".".join(str(x) for x in w)
    from .words import format_word
    return format_word(w, names).replace(" ", "")


def horoball_lines(h, names=str):
    """Base-graph header, then one line ``v@k w@j depth kind`` per edge."""
    base = h.base
    lines = [f"# base vertices {base.n} edges {base.num_edges()} depth {h.depth}"]
    lines.extend(f"base {names(base.labels[i])} {names(base.labels[j])}" for i, j in base.edges())
    for (v, k), (w, j) in h.edges():
        kind = "vertical" if v == w else "horizontal"
        lines.append(f"{names(v)}@{k} {names(w)}@{j} {min(k, j)} {kind}")
    return lines


def cusped_label(lab, names=None):
    if lab[0] == "C":
        return _word(lab[1], names)
    if lab[0] == "V":
        return f"cone({lab[1]},{_word(lab[2], names)})"
    _, i, t, p, k = lab
    return f"({i},{_word(t, names)},{_word(p, names)},{k})"


def cusped_lines(cb):
    names = cb.rp.generators
    g = cb.graph
    lines = [f"# cusped radius {cb.R} depth {cb.T} vertices {g.n} edges {g.num_edges()}"]
    lines.extend(f"vertex {i} {cusped_label(lab, names)} {int(cb.depths[i])}" for i, lab in enumerate(g.labels))
    for i, j in g.edges():
        di, dj = int(cb.depths[i]), int(cb.depths[j])
        if di != dj:
            kind = "vertical"
        elif di == 0:
            kind = "cayley"
        else:
            kind = "horizontal"
        lines.append(f"{i} {j} {min(di, dj)} {kind}")
    return lines


def chain_lines(ch):
    return ch.to_lines()


def write_lines(path, lines):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")


def write_csv(path, rows, fields=None):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = list(rows)
    if fields is None:
        fields = []
        for r in rows:
            for k in r:
                if k not in fields:
                    fields.append(k)
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k, "")) for k in fields})


def _cell(v):
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, sort_keys=True, default=str)
    return v


def write_json(path, obj):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n")
