"""Finite simple graphs with a fixed vertex order and cached BFS rows."""
from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import Disconnected


class Graph:
    """Undirected simple graph on labelled vertices.

    Vertex ``i`` carries ``labels[i]``; the index order is the fixed vertex
    order used by every canonical choice downstream.
    """

    def __init__(self, labels, edges):
        self.labels = list(labels)
        self.index = {v: i for i, v in enumerate(self.labels)}
        n = len(self.labels)
        nbrs = [set() for _ in range(n)]
        self.loops = []  # self-loops are not stored, only remembered
        for i, j in edges:
            if i == j:
                self.loops.append(i)
            else:
                nbrs[i].add(j)
                nbrs[j].add(i)
        self.adj = [sorted(s) for s in nbrs]
        self._rows = {}
        self._csr = None
        self._full = None

    @classmethod
    def from_labelled_edges(cls, labels, edges):
        idx = {v: i for i, v in enumerate(labels)}
        return cls(labels, [(idx[u], idx[v]) for u, v in edges])

    def __len__(self):
        return len(self.labels)

    @property
    def n(self):
        return len(self.labels)

    def edges(self):
        return [(i, j) for i in range(self.n) for j in self.adj[i] if i < j]

    def num_edges(self):
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, i, j):
        a = self.adj[i]
        k = np.searchsorted(a, j)
        return k < len(a) and a[k] == j

    def csr(self):
        if self._csr is None:
            rows, cols = [], []
            for i, a in enumerate(self.adj):
                rows.extend([i] * len(a))
                cols.extend(a)
            data = np.ones(len(rows), dtype=np.int8)
            self._csr = csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        return self._csr

    def all_distances(self):
        """Full distance matrix (int32, -1 for unreachable)."""
        if self._full is None:
            d = shortest_path(self.csr(), method="D", unweighted=True, directed=False)
            d[np.isinf(d)] = -1
            self._full = d.astype(np.int32)
        return self._full

    def row(self, i):
        """Distances from vertex ``i`` (int32, -1 for unreachable)."""
        if self._full is not None:
            return self._full[i]
        r = self._rows.get(i)
        if r is None:
            if self.n <= 2500:
                return self.all_distances()[i]
            d = shortest_path(self.csr(), method="D", unweighted=True, directed=False, indices=[i])[0]
            d[np.isinf(d)] = -1
            r = d.astype(np.int32)
            if len(self._rows) > 4000:
                self._rows.clear()
            self._rows[i] = r
        return r

    def dist(self, i, j):
        d = int(self.row(i)[j])
        if d < 0:
            raise Disconnected(f"{self.labels[i]} and {self.labels[j]} are not connected")
        return d

    def ball(self, i, r):
        row = self.row(i)
        return [int(j) for j in np.nonzero((row >= 0) & (row <= r))[0]]

    def sphere(self, i, r):
        return [int(j) for j in np.nonzero(self.row(i) == r)[0]]

    def is_connected(self):
        return self.n == 0 or bool((self.row(0) >= 0).all())

    def induced(self, vertices):
        vs = sorted(set(vertices))
        pos = {v: k for k, v in enumerate(vs)}
        edges = [(pos[i], pos[j]) for i in vs for j in self.adj[i] if j in pos and i < j]
        return Graph([self.labels[i] for i in vs], edges), vs

    def to_networkx(self):
        import networkx as nx
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


def cycle_graph(n):
    return Graph(list(range(n)), [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    """Path with ``n`` vertices 0..n-1."""
    return Graph(list(range(n)), [(i, i + 1) for i in range(n - 1)])


def grid_graph(a, b):
    labels = [(i, j) for i in range(a) for j in range(b)]
    idx = {v: k for k, v in enumerate(labels)}
    edges = []
    for i in range(a):
        for j in range(b):
            if i + 1 < a:
                edges.append((idx[i, j], idx[i + 1, j]))
            if j + 1 < b:
                edges.append((idx[i, j], idx[i, j + 1]))
    return Graph(labels, edges)


def parse_base(spec):
    """``cycle:50``, ``path:100`` (length, so 101 vertices), ``grid:8x8``, ``edge``."""
    kind, _, arg = spec.partition(":")
    if kind == "cycle":
        return cycle_graph(int(arg))
    if kind == "path":
        return path_graph(int(arg) + 1)
    if kind == "grid":
        a, b = arg.split("x")
        return grid_graph(int(a), int(b))
    if kind == "edge":
        return path_graph(2)
    raise ValueError(f"unknown base graph {spec!r}")
