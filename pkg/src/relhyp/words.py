"""Words, relative presentations, filling kernels and slope lengths.

A word is a tuple of nonzero ints: ``i`` stands for the i-th generator
(1-based) and ``-i`` for its inverse.  The empty tuple is the identity.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field, replace

from .errors import ParseError, SearchBoundExceeded, UnsupportedQuotient

INF = math.inf


def free_reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w):
    return tuple(-x for x in reversed(w))


def power(w, n):
    if n < 0:
        return inverse(w) * (-n)
    return tuple(w) * n


def commutator(u, v):
    return free_reduce(tuple(u) + tuple(v) + inverse(u) + inverse(v))


def shortlex_key(w):
    """Sort key realising ShortLex with letters ordered g1 < g1^-1 < g2 < ..."""
    return (len(w), tuple(2 * abs(x) - (x > 0) for x in w))


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\^)\s*\{?\s*(-?\d+)\s*\}?|([A-Za-z_][A-Za-z0-9_]*)|(1))")


def _split_name(name, names):
    if name in names:
        return [names.index(name) + 1]
    # allow "xy" for x y when every generator is a single character
    if all(len(n) == 1 for n in names) and all(c in names for c in name):
        return [names.index(c) + 1 for c in name]
    raise ParseError(f"unknown generator {name!r}")


def parse_word(text, names):
    """Parse ``"a b^-1 (a b)^3"`` style words over the generator list ``names``."""
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    stack = [[]]
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse word at {text[pos:]!r}")
        pos = m.end()
        lpar, rpar, caret, exp, name, one = m.groups()
        if lpar:
            stack.append([])
        elif rpar:
            if len(stack) == 1:
                raise ParseError("unbalanced parenthesis")
            grp = tuple(itertools.chain.from_iterable(stack.pop()))
            stack[-1].append(grp)
        elif caret:
            if not stack[-1]:
                raise ParseError("exponent without base")
            base = stack[-1].pop()
            stack[-1].append(power(base, int(exp)))
        elif name:
            for g in _split_name(name, names):
                stack[-1].append((g,))
        elif one:
            stack[-1].append(())
    if len(stack) != 1:
        raise ParseError("unbalanced parenthesis")
    return free_reduce(tuple(itertools.chain.from_iterable(stack[0])))


def format_word(w, names):
    if not w:
        return "1"
    parts = []
    for x, grp in itertools.groupby(w):
        n = len(list(grp))
        s = names[abs(x) - 1]
        e = n if x > 0 else -n
        parts.append(s if e == 1 else f"{s}^{e}")
    return " ".join(parts)


# ------------------------------------------------------------ presentations

KINDS = ("FreeAbelian", "FiniteCyclic", "FreeGroup")


@dataclass(frozen=True)
class ParabolicSpec:
    id: int
    kind: str
    gens: tuple  # generator indices, 1-based
    order: int = 0  # FiniteCyclic only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown parabolic kind {self.kind}")
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("parabolic generators must be distinct")
        if self.kind == "FiniteCyclic" and (len(self.gens) != 1 or self.order < 1):
            raise ValueError("FiniteCyclic needs one generator and an order")

    @property
    def rank(self):
        return len(self.gens)

    def type_string(self):
        if self.kind == "FreeAbelian":
            return "Z" if self.rank == 1 else f"Z^{self.rank}"
        if self.kind == "FiniteCyclic":
            return f"Z/{self.order}"
        return f"F_{self.rank}"

    def implied_relators(self):
        if self.kind == "FreeAbelian":
            return [commutator((a,), (b,)) for a, b in itertools.combinations(self.gens, 2)]
        if self.kind == "FiniteCyclic":
            return [(self.gens[0],) * self.order]
        return []

    def vector_word(self, v):
        """Word g1^v1 g2^v2 ... for an exponent vector over this parabolic."""
        out = []
        for g, e in zip(self.gens, v):
            out.extend([g if e > 0 else -g] * abs(e))
        return tuple(out)

    def word_vector(self, w):
        """Exponent vector of a word in the parabolic generators (abelianised)."""
        v = [0] * self.rank
        for x in w:
            v[self.gens.index(abs(x))] += 1 if x > 0 else -1
        return tuple(v)


@dataclass(frozen=True)
class RelativePresentation:
    name: str
    generators: tuple
    parabolics: tuple = ()
    relators: tuple = ()

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            if any(x == 0 or abs(x) > n for x in r):
                raise ValueError("relator letter out of range")
        seen = set()
        for p in self.parabolics:
            if any(g < 1 or g > n for g in p.gens):
                raise ValueError("parabolic generator out of range")
            if seen & set(p.gens):
                raise ValueError("parabolic generator sets must be disjoint")
            seen |= set(p.gens)

    def full_relators(self):
        rels = [free_reduce(r) for r in self.relators]
        for p in self.parabolics:
            rels.extend(p.implied_relators())
        out = []
        for r in rels:
            if r and r not in out:
                out.append(r)
        return out

    def word(self, text):
        return parse_word(text, self.generators)

    def fmt(self, w):
        return format_word(w, self.generators)

    def parabolic(self, pid):
        for p in self.parabolics:
            if p.id == pid:
                return p
        raise KeyError(pid)

    def to_text(self):
        lines = [f"group {self.name}", "generators " + " ".join(self.generators)]
        for p in self.parabolics:
            gens = " ".join(self.generators[g - 1] for g in p.gens)
            lines.append(f"parabolic {p.id} type {p.type_string()} generators {gens}")
        for r in self.relators:
            lines.append("relator " + self.fmt(r))
        return "\n".join(lines) + "\n"


def _parse_kind(s):
    s = s.strip()
    if s == "Z":
        return "FreeAbelian", 1, 0
    m = re.fullmatch(r"Z\^(\d+)", s)
    if m:
        return "FreeAbelian", int(m.group(1)), 0
    m = re.fullmatch(r"Z/(\d+)", s)
    if m:
        return "FiniteCyclic", 1, int(m.group(1))
    m = re.fullmatch(r"F_(\d+)", s)
    if m:
        return "FreeGroup", int(m.group(1)), 0
    raise ParseError(f"unknown parabolic type {s!r}")


def parse_presentation(text):
    name, gens, pars, rels = "G", None, [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key == "group":
            name = rest.strip()
        elif key == "generators":
            gens = tuple(rest.split())
        elif key == "parabolic":
            m = re.fullmatch(r"(\d+)\s+type\s+(\S+)\s+generators\s+(.+)", rest.strip())
            if not m or gens is None:
                raise ParseError(f"bad parabolic line {line!r}")
            kind, rank, order = _parse_kind(m.group(2))
            names = m.group(3).split()
            if len(names) != rank:
                raise ParseError(f"parabolic {m.group(1)} expects {rank} generators")
            idx = tuple(gens.index(g) + 1 for g in names)
            pars.append(ParabolicSpec(int(m.group(1)), kind, idx, order))
        elif key == "relator":
            if gens is None:
                raise ParseError("relator before generators")
            rels.append(parse_word(rest, gens))
        else:
            raise ParseError(f"unknown declaration {key!r}")
    if gens is None:
        raise ParseError("missing generators line")
    return RelativePresentation(name, gens, tuple(pars), tuple(rels))


def load_presentation(path):
    with open(path) as fh:
        return parse_presentation(fh.read())


# ----------------------------------------------------------------- kernels

@dataclass(frozen=True)
class FillingKernel:
    parabolic_id: int
    matrix: tuple = ()  # rows, FreeAbelian
    words: tuple = ()  # FiniteCyclic / FreeGroup

    def is_trivial(self):
        return all(not any(r) for r in self.matrix) and all(not free_reduce(w) for w in self.words)

    def generators_as_words(self, p):
        if p.kind == "FreeAbelian":
            return [p.vector_word(r) for r in self.matrix if any(r)]
        return [free_reduce(w) for w in self.words if free_reduce(w)]


def trivial_kernel(p):
    return FillingKernel(p.id)


def cyclic_kernel(p, n):
    """Kernel <x^n> of a rank-one parabolic."""
    if p.kind == "FreeAbelian":
        return FillingKernel(p.id, matrix=((n,),))
    return FillingKernel(p.id, words=((p.gens[0],) * n,))


def parse_kernel(p, spec, names):
    spec = spec.strip()
    if spec in ("trivial", "1", ""):
        return FillingKernel(p.id)
    if p.kind == "FreeAbelian" and re.fullmatch(r"[-\d,;\s]+", spec):
        rows = tuple(tuple(int(x) for x in row.split(",")) for row in spec.split(";") if row.strip())
        if any(len(r) != p.rank for r in rows):
            raise ParseError("kernel row length must equal parabolic rank")
        return FillingKernel(p.id, matrix=rows)
    w = parse_word(spec, names)
    if any(abs(x) not in p.gens for x in w):
        raise ParseError("kernel word must use the parabolic's generators")
    if p.kind == "FreeAbelian":
        return FillingKernel(p.id, matrix=(p.word_vector(w),))
    return FillingKernel(p.id, words=(w,))


def parse_manifest(text):
    """Experiment manifest: ``presentation <path>`` plus ``fill <id> <spec>`` lines."""
    pres, fills = None, {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key == "presentation":
            pres = rest.strip()
        elif key == "fill":
            pid, _, spec = rest.strip().partition(" ")
            fills[int(pid)] = spec.strip()
        else:
            raise ParseError(f"unknown manifest line {line!r}")
    return pres, fills


# ----------------------------------------------------------- integer lattices

def echelon(rows):
    """Integer row echelon form (Hermite-like) of the row lattice."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    ncol = len(m[0])
    out, col = [], 0
    while m and col < ncol:
        nz = [r for r in m if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(ncol):
                    r[j] -= q * piv[j]
            nz = [r for r in nz if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        out.append(piv)
        m = [r for r in m if r is not piv and any(r)]
        col += 1
    # reduce entries above pivots
    for i, r in enumerate(out):
        c = next(j for j, x in enumerate(r) if x)
        for s in out[:i]:
            q = s[c] // r[c]
            for j in range(ncol):
                s[j] -= q * r[j]
    return [tuple(r) for r in out]


def in_lattice(v, basis):
    v = list(v)
    for r in basis:
        c = next(j for j, x in enumerate(r) if x)
        if v[c] % r[c]:
            return False
        q = v[c] // r[c]
        v = [a - q * b for a, b in zip(v, r)]
    return not any(v)


def l1_shell(rank, n):
    """All integer vectors of the given rank with l1 norm exactly n."""
    if rank == 0:
        if n == 0:
            yield ()
        return
    for a in range(-n, n + 1):
        for rest in l1_shell(rank - 1, n - abs(a)):
            yield (a,) + rest


# ------------------------------------------------------------- slope length

def slope_length(p, k, search_bound=64):
    """Shortest nontrivial kernel element in the word metric of ``p``."""
    if k.parabolic_id != p.id:
        raise ValueError("kernel does not belong to this parabolic")
    if k.is_trivial():
        return INF
    if p.kind == "FreeAbelian":
        basis = echelon(k.matrix)
        for n in range(1, search_bound + 1):
            for v in l1_shell(p.rank, n):
                if in_lattice(v, basis):
                    return n
        raise SearchBoundExceeded(f"no kernel vector of l1 norm <= {search_bound}")
    if p.kind == "FiniteCyclic":
        g = p.order
        for w in k.words:
            g = math.gcd(g, sum(1 if x > 0 else -1 for x in w) % p.order)
        if g == p.order:
            return INF
        if g > search_bound:
            raise SearchBoundExceeded(f"slope {g} exceeds bound {search_bound}")
        return g
    return _free_slope(p, k, search_bound)


def _free_slope(p, k, bound):
    from .rewriting import knuth_bendix

    if p.rank == 1:
        n = abs(math.gcd(*[sum(1 if x > 0 else -1 for x in w) for w in k.words]))
        if n == 0:
            return INF
        if n > bound:
            raise SearchBoundExceeded(f"slope {n} exceeds bound {bound}")
        return n
    # relabel onto generators 1..r and solve the word problem of P/K
    rel = {g: i + 1 for i, g in enumerate(p.gens)}
    kw = [tuple(rel[abs(x)] * (1 if x > 0 else -1) for x in w) for w in k.words]
    quot = RelativePresentation("P/K", tuple(f"g{i}" for i in range(p.rank)), (), tuple(kw))
    rs = knuth_bendix(quot)
    if not rs.complete:
        from .errors import IncompleteOracle
        raise IncompleteOracle("word problem of P/K not decided")
    letters = [i for g in range(1, p.rank + 1) for i in (g, -g)]
    for n in range(1, bound + 1):
        for w in itertools.product(letters, repeat=n):
            if free_reduce(w) != w:
                continue
            if not rs.reduce(w):
                return n
    raise SearchBoundExceeded(f"no kernel element of length <= {bound}")


# -------------------------------------------------------- quotient presentation

def quotient_presentation(rp, kernels):
    """Presentation of G/K; parabolic specs replaced by their quotients."""
    by_id = {k.parabolic_id: k for k in kernels}
    if set(by_id) - {p.id for p in rp.parabolics}:
        raise ValueError("kernel for unknown parabolic")
    rels = list(rp.relators)
    pars = []
    next_id = max([p.id for p in rp.parabolics], default=0) + 1
    for p in rp.parabolics:
        k = by_id.get(p.id, FillingKernel(p.id))
        if k.is_trivial():
            pars.append(p)
            continue
        words = k.generators_as_words(p)
        if p.kind == "FreeAbelian":
            basis = echelon(k.matrix)
            diag = len(basis) == p.rank and all(
                sum(1 for x in r if x) == 1 for r in basis)
            if not diag:
                raise UnsupportedQuotient(f"Z^{p.rank}/L is not a product of cyclic factors on the generators")
            rels.extend(p.implied_relators())
            for j, r in enumerate(basis):
                c = next(i for i, x in enumerate(r) if x)
                rels.append((p.gens[c],) * r[c])
            for j, r in enumerate(basis):
                c = next(i for i, x in enumerate(r) if x)
                pid = p.id if j == 0 else next_id
                if j:
                    next_id += 1
                if r[c] > 1:
                    pars.append(ParabolicSpec(pid, "FiniteCyclic", (p.gens[c],), r[c]))
            continue
        if p.kind == "FiniteCyclic":
            g = p.order
            for w in words:
                g = math.gcd(g, sum(1 if x > 0 else -1 for x in w) % p.order)
            rels.extend(words)
            if g > 1:
                pars.append(ParabolicSpec(p.id, "FiniteCyclic", p.gens, g))
            continue
        if p.rank == 1:
            n = abs(math.gcd(*[sum(1 if x > 0 else -1 for x in w) for w in words]))
            rels.extend(words)
            if n > 1:
                pars.append(ParabolicSpec(p.id, "FiniteCyclic", p.gens, n))
            continue
        raise UnsupportedQuotient("quotients of non-abelian free parabolics are not representable")
    seen, out = set(), []
    for r in rels:
        r = free_reduce(r)
        if r and r not in seen:
            seen.add(r)
            out.append(r)
    return replace(rp, name=rp.name + "/K", parabolics=tuple(pars), relators=tuple(out))


# ------------------------------------------------------------ named examples

def free_product_presentation(names=("a", "b")):
    """Free group on ``names`` relative to the cyclic subgroups of its generators."""
    pars = tuple(ParabolicSpec(i + 1, "FreeAbelian", (i + 1,)) for i in range(len(names)))
    return RelativePresentation("F" + str(len(names)), tuple(names), pars, ())


def triangle_presentation():
    """F(x,y) relative to <x>, <y>, <xy>, written with z = xy."""
    pars = tuple(ParabolicSpec(i + 1, "FreeAbelian", (i + 1,)) for i in range(3))
    return RelativePresentation("F2_triangle", ("x", "y", "z"), pars, ((1, 2, -3),))


def triangle_kernels(p, q, r):
    rp = triangle_presentation()
    return [cyclic_kernel(rp.parabolics[0], p), cyclic_kernel(rp.parabolics[1], q),
            cyclic_kernel(rp.parabolics[2], r)]
