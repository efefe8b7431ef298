import random
from fractions import Fraction

import networkx as nx
import pytest

from oracles import thin_delta_all_geodesics
from relhyp.errors import Disconnected
from relhyp.graph import Graph, cycle_graph, grid_graph, path_graph
from relhyp.horoball import HoroballGraph, horoball_distance
from relhyp.metric import (Constants, all_geodesics, canonical_geodesic, delta_fourpoint, delta_thin,
                           gromov_product, hausdorff_distance, measure_delta, slimness, tripod)


def from_nx(g):
    g = nx.convert_node_labels_to_integers(g)
    return Graph(list(g.nodes), list(g.edges))


SMALL = {
    "C6": cycle_graph(6),
    "C9": cycle_graph(9),
    "grid4": grid_graph(4, 4),
    "petersen": from_nx(nx.petersen_graph()),
    "tree": from_nx(nx.balanced_tree(2, 3)),
}


def test_constants_ratios():
    c = Constants.from_delta(4)
    assert (c.K, c.L1, c.L2, c.regime) == (40, 4000, 12000, "paper")
    assert c.quasigeodesic_eps == 20 * 40 + 120 * 4 + 72
    assert c.delta_prime == 6 * 40 + 48 * 4 + 28
    o = Constants.override(1, 1, 1, 3)
    assert (o.K, o.L1, o.L2, o.regime) == (1, 1, 3, "override")


def test_distance_matches_horoball_closed_form():
    h = HoroballGraph(path_graph(101), 8)
    g = h.graph()
    assert g.dist(g.index[0, 0], g.index[100, 0]) == horoball_distance(h, (0, 0), (100, 0)) == 14


def test_canonical_geodesic_on_c4_reverses():
    g = cycle_graph(4)
    both = sorted(all_geodesics(g, 0, 2))
    assert both == [[0, 1, 2], [0, 3, 2]]
    assert canonical_geodesic(g, 0, 2) == both[0]
    assert canonical_geodesic(g, 2, 0) == both[0][::-1]
    assert canonical_geodesic(g, 1, 1) == [1]


def test_tree_geodesic_unique():
    g = SMALL["tree"]
    for b in range(g.n):
        assert canonical_geodesic(g, 0, b) == nx.shortest_path(g.to_networkx(), 0, b)


def test_disconnected():
    g = Graph([0, 1, 2], [(0, 1)])
    with pytest.raises(Disconnected):
        canonical_geodesic(g, 0, 2)


def test_gromov_product_and_tripod():
    g = grid_graph(4, 4)
    x, y = 0, 15
    assert gromov_product(g, x, x, 7) == g.dist(x, 7)
    on = canonical_geodesic(g, x, y)
    assert all(gromov_product(g, x, y, z) == 0 for z in on)
    rng = random.Random(1)
    for _ in range(50):
        a, b, c = rng.sample(range(g.n), 3)
        t = tripod(g, a, b, c)
        p = t["products"]
        assert p["x"] + p["y"] == g.dist(a, b)
        assert p["y"] + p["z"] == g.dist(b, c)
        assert p["z"] + p["x"] == g.dist(c, a)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_delta_thin_matches_exhaustive_reference(name):
    g = SMALL[name]
    want = thin_delta_all_geodesics(g.to_networkx())
    assert delta_thin(g, all_geos=True) == want


def test_frozen_delta_values():
    assert delta_thin(SMALL["C6"], all_geos=True) == 3
    assert delta_thin(SMALL["tree"]) == 0
    assert delta_fourpoint(SMALL["tree"]) == 0


@pytest.mark.parametrize("name", sorted(SMALL))
def test_fourpoint_against_thin(name):
    g = SMALL[name]
    thin = delta_thin(g)
    four = delta_fourpoint(g, budget={"exhaustive_max": 50})
    assert four <= thin <= 4 * four


def test_horoball_delta_within_twenty():
    h = HoroballGraph(cycle_graph(50), 8)
    g = h.graph()
    val = delta_thin(g, budget={"samples": 500, "seed": 0, "exhaustive_max": 0})
    assert val <= 20


def test_measure_delta_rounds_up():
    dhat, val, info = measure_delta(cycle_graph(9), range(9))
    assert val == 4 and dhat == 4 and info["exhaustive"]
    dhat, val, _ = measure_delta(SMALL["tree"], range(15))
    assert val == 0 and dhat == 1


def test_hausdorff_examples():
    g = grid_graph(3, 3)
    p = canonical_geodesic(g, 0, 8)
    assert hausdorff_distance(g, p, p) == 0
    assert hausdorff_distance(g, p, p[::-1]) == 0
    assert hausdorff_distance(g, [0, 1, 2, 5, 8], [0, 3, 6, 7, 8]) == 2


def test_sigma_near_geodesic_in_horoball():
    from relhyp.horoball import horoball_geodesic, sigma_path
    h = HoroballGraph(path_graph(60), 7)
    g = h.graph()
    rng = random.Random(2)
    for _ in range(100):
        a = (rng.randrange(60), rng.randrange(4))
        b = (rng.randrange(60), rng.randrange(4))
        s = [g.index[v] for v in sigma_path(h, a, b, 100)]
        geo = [g.index[v] for v in horoball_geodesic(h, a, b)]
        assert hausdorff_distance(g, s, geo) <= 5


def test_slimness_of_geodesic_triangle_on_tree():
    g = SMALL["tree"]
    sides = [canonical_geodesic(g, 7, 8), canonical_geodesic(g, 8, 14), canonical_geodesic(g, 14, 7)]
    assert slimness(g, sides) == 0
    assert Fraction(delta_thin(g, [7, 8, 14])) == 0
