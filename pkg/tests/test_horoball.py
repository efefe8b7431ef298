import random

import networkx as nx
import pytest

from oracles import horoball_nx, level_edge_count
from relhyp.chains import boundary
from relhyp.errors import DepthOverflow, SelfLoop
from relhyp.graph import Graph, cycle_graph, parse_base, path_graph
from relhyp.horoball import (HoroballGraph, check_fill, closed_form, geodesic_shape, horoball_distance,
                             horoball_fill, horoball_geodesic, loop_chain, sigma_path)


def as_nx(h):
    """The horoball as a networkx graph on (base index, depth) nodes."""
    key = lambda v: (h.bidx(v[0]), v[1])
    g = nx.Graph()
    g.add_nodes_from(key(v) for v in h.vertices())
    g.add_edges_from((key(a), key(b)) for a, b in h.edges())
    return g


def test_single_edge_depth_two():
    h = HoroballGraph(parse_base("edge"), 2)
    assert sorted(h.vertices()) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    hor = sorted(e for e in h.edges() if e[0][0] != e[1][0])
    assert [e[0][1] for e in hor] == [0, 1, 2]
    assert nx.utils.graphs_equal(as_nx(h), horoball_nx(path_graph(2).to_networkx(), 2))
    squares = [c for c in h.squares(0)] + [c for c in h.squares(1)]
    assert len(squares) == 2


@pytest.mark.parametrize("spec", ["cycle:12", "path:9", "grid:3x4"])
def test_graph_matches_reference_construction(spec):
    base = parse_base(spec)
    h = HoroballGraph(base, 4)
    assert nx.utils.graphs_equal(as_nx(h), horoball_nx(base.to_networkx(), 4))
    for k in range(5):
        assert len(h.level_pairs(k)) == level_edge_count(base.to_networkx(), k)


def test_path_three_depth_two():
    h = HoroballGraph(parse_base("path:3"), 2)
    assert len(h.edges()) == 22
    assert h.adjacent((0, 2), (3, 2))
    assert not h.adjacent((0, 1), (3, 1))
    assert horoball_distance(h, (0, 0), (3, 0)) == 3


def test_c50_level_counts():
    base = cycle_graph(50)
    h = HoroballGraph(base, 8)
    # on C_50 each vertex sees min(2^k, 25) on each side, 25 only once
    for k in range(9):
        span = 1 if k == 0 else 2 ** k
        want = 50 * span if span < 25 else 50 * 49 // 2
        assert len(h.level_pairs(k)) == want


def test_vertical_and_short_examples():
    h = HoroballGraph(path_graph(20), 10)
    assert horoball_distance(h, (0, 0), (0, 5)) == 5
    assert horoball_geodesic(h, (0, 0), (0, 5)) == [(0, k) for k in range(6)]
    assert horoball_distance(h, (0, 3), (8, 3)) == 1
    assert horoball_geodesic(h, (4, 2), (5, 2)) == [(4, 2), (5, 2)]


def test_distance_hundred_is_fourteen():
    base = path_graph(101)
    h = HoroballGraph(base, 8)
    assert horoball_distance(h, (0, 0), (100, 0)) == 14
    path = horoball_geodesic(h, (0, 0), (100, 0))
    assert len(path) == 15
    assert path[:7] == [(0, k) for k in range(7)]
    assert path[-7:] == [(100, k) for k in range(6, -1, -1)]
    assert geodesic_shape(path) == (2, 2)
    assert all(h.adjacent(a, b) for a, b in zip(path, path[1:]))
    g = as_nx(h)
    assert nx.shortest_path_length(g, (0, 0), (100, 0)) == 14


def test_closed_form_random_against_bfs():
    rng = random.Random(3)
    base = cycle_graph(40)
    h = HoroballGraph(base, 7)
    g = as_nx(h)
    verts = h.vertices()
    for _ in range(300):
        a, b = rng.choice(verts), rng.choice(verts)
        assert horoball_distance(h, a, b, 7) == nx.shortest_path_length(g, a, b)


def test_depth_overflow():
    with pytest.raises(DepthOverflow):
        closed_form(100, 0, 0, max_depth=2)


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        HoroballGraph(Graph([0, 1], [(0, 0), (0, 1)]), 2)


def test_sigma_path_examples():
    h = HoroballGraph(path_graph(10), 6)
    p = sigma_path(h, (0, 2), (9, 3), 100)
    assert len(p) - 1 == 4
    assert all(h.adjacent(a, b) for a, b in zip(p, p[1:]))
    bumped = sigma_path(h, (0, 2), (9, 3), 4)
    assert max(k for _, k in bumped) == 5
    assert len(bumped) - 1 == 3 + 1 + 2
    assert all(h.adjacent(a, b) for a, b in zip(bumped, bumped[1:]))
    assert sigma_path(h, (0, 1), (0, 6), 100) == [(0, k) for k in range(1, 7)]


def test_fill_vertical_square():
    h = HoroballGraph(path_graph(2), 2)
    loop = [(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]
    f = horoball_fill(h, loop)
    assert f.area == 1
    assert check_fill(h, loop, f) == (True, True)


def test_fill_horizontal_triangle():
    h = HoroballGraph(path_graph(3), 2)
    loop = [(0, 1), (1, 1), (2, 1), (0, 1)]
    f = horoball_fill(h, loop)
    assert f.area == 1
    assert check_fill(h, loop, f) == (True, True)


def test_fill_hexagon_on_c6():
    h = HoroballGraph(cycle_graph(6), 3)
    loop = [(i % 6, 0) for i in range(7)]
    f = horoball_fill(h, loop)
    assert f.area <= 18
    assert boundary(f.chain()) == loop_chain(loop)
