import random
from fractions import Fraction

import pytest

from relhyp.chains import SparseChain, boundary, decompose_chain, recompose
from relhyp.errors import BoundaryNotInT
from relhyp.experiments import decomposition_rows, random_chain
from relhyp.graph import cycle_graph, grid_graph

HALF = Fraction(1, 2)


def test_edge_boundary():
    assert boundary(SparseChain.edge(0, 1)) == SparseChain.vertex(1) - SparseChain.vertex(0)
    assert boundary(SparseChain.edge(1, 0)) == SparseChain.vertex(0) - SparseChain.vertex(1)


def test_orientation_is_stored_once():
    ch = SparseChain.edge(3, 1) + SparseChain.edge(1, 3)
    assert not ch
    assert SparseChain.edge(3, 1) == -SparseChain.edge(1, 3)


def test_loop_has_no_boundary():
    assert not boundary(SparseChain.path([0, 1, 2, 3, 0]))


def test_cell_boundary_is_its_loop():
    cell = SparseChain.cell([0, 1, 2])
    assert boundary(cell) == SparseChain.path([0, 1, 2, 0])
    assert not boundary(boundary(cell))


def test_norm_and_arithmetic():
    ch = SparseChain.path([0, 1, 2]) * HALF - SparseChain.edge(2, 3)
    assert ch.norm1() == 2
    assert (ch + ch).norm1() == 4
    assert boundary(ch) == SparseChain.vertex(2) * HALF - SparseChain.vertex(0) * HALF \
        - SparseChain.vertex(3) + SparseChain.vertex(2)


def test_single_path_decomposes_to_itself():
    f = SparseChain.path([0, 1, 2, 3])
    assert decompose_chain(f, {0, 3}) == [(1, [0, 1, 2, 3])]


def test_two_half_paths_on_hexagon():
    f = SparseChain.path([0, 1, 2, 3]) * HALF + SparseChain.path([0, 5, 4, 3]) * HALF
    pieces = decompose_chain(f, {0, 3})
    assert sorted(pieces) == [(HALF, [0, 1, 2, 3]), (HALF, [0, 5, 4, 3])]
    assert sum(a * (len(p) - 1) for a, p in pieces) == f.norm1() == 3
    assert recompose(pieces) == f


def test_boundary_outside_t_rejected():
    with pytest.raises(BoundaryNotInT):
        decompose_chain(SparseChain.path([0, 1, 2]), {0})


def test_circulation_with_empty_t_rejected():
    with pytest.raises(BoundaryNotInT):
        decompose_chain(SparseChain.path([0, 1, 2, 0]), set())


def test_circulation_with_nonempty_t_splits_into_cycles():
    f = SparseChain.path([0, 1, 2, 0]) * Fraction(2, 3)
    pieces = decompose_chain(f, {0})
    assert recompose(pieces) == f
    assert sum(a * (len(p) - 1) for a, p in pieces) == f.norm1()


def test_random_chains_are_coherent():
    rng = random.Random(11)
    for g in (cycle_graph(6), grid_graph(3, 3)):
        for _ in range(30):
            f = random_chain(g, rng)
            pieces = decompose_chain(f, boundary(f).support() | {0})
            assert recompose(pieces) == f
            assert sum(a * (len(p) - 1) for a, p in pieces) == f.norm1()
            assert all(a > 0 for a, _ in pieces)


def test_decomposition_rows_zero_violations():
    (row,) = decomposition_rows(100, seed=0)
    assert row["ok"] and row["value"] == 0
