import numpy as np
import pytest

from deathbirth import Configuration, LatticeTopology, neighbor_table, neighborhood


def test_ring_nearest_neighbors():
    top = LatticeTopology(1, 1, 5)
    assert set(neighborhood(top, 0)) == {(4,), (1,)}
    assert top.N == 2


def test_moore_neighborhood():
    top = LatticeTopology(2, 1, 5)
    nbrs = neighborhood(top, (0, 0))
    assert len(nbrs) == 8 == top.N
    assert (0, 0) not in nbrs
    assert (4, 4) in nbrs and (1, 1) in nbrs


def test_range_two_ring():
    top = LatticeTopology(1, 2, 7)
    assert set(neighborhood(top, 3)) == {(1,), (2,), (4,), (5,)}
    assert top.N == 4


@pytest.mark.parametrize("d,M,L", [(1, 1, 3), (1, 3, 9), (2, 1, 4), (2, 2, 6), (3, 1, 4)])
def test_neighbor_table_symmetric_and_self_excluding(d, M, L):
    top = LatticeTopology(d, M, L)
    table = neighbor_table(top)
    assert table.shape == (top.n_sites, (2 * M + 1) ** d - 1)
    for x in range(top.n_sites):
        row = table[x]
        assert x not in row
        assert len(set(row)) == len(row)
        for y in row:
            assert x in table[y]
    # table agrees with the coordinate-level neighborhood
    for x in range(0, top.n_sites, max(1, top.n_sites // 7)):
        expected = {top.index(y) for y in neighborhood(top, top.site(x))}
        assert set(table[x]) == expected


def test_topology_rejects_wraparound_self_neighbors():
    with pytest.raises(ValueError, match="exceed"):
        LatticeTopology(1, 2, 4)
    with pytest.raises(ValueError):
        LatticeTopology(0, 1, 5)


def test_configuration_validation():
    top = LatticeTopology(2, 1, 3)
    with pytest.raises(ValueError):
        Configuration(top, np.ones(8))
    with pytest.raises(ValueError):
        Configuration(top, np.zeros(9))
    cfg = Configuration(top, [1, 2, 1, 2, 1, 2, 1, 2, 1])
    assert cfg.strategies.shape == (3, 3)
    assert cfg.count(1) == 5
    assert cfg.swapped().count(1) == 4
    assert cfg[(0, 1)] == 2


def test_neighbor_counts():
    top = LatticeTopology(1, 1, 6)
    cfg = Configuration(top, [1, 1, 2, 2, 1, 2])
    assert cfg.neighbor_counts(1) == (1, 1)
    assert cfg.neighbor_counts(0) == (1, 1)
    assert cfg.neighbor_counts(3) == (1, 1)
    assert cfg.neighbor_counts(4) == (0, 2)
