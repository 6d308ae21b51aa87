"""Torus lattices, box neighborhoods and strategy configurations.

Sites are coordinate tuples in row-major order; a plain ``int`` is accepted
as shorthand for a site of a one-dimensional ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Union

import numpy as np

Site = Union[int, Sequence[int]]


@dataclass(frozen=True)
class LatticeTopology:
    """Torus ``(Z/LZ)^d`` with box interaction range ``M``."""

    d: int
    M: int
    L: int

    def __post_init__(self):
        for name in ("d", "M", "L"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if self.L <= 2 * self.M:
            raise ValueError(
                f"torus side L={self.L} must exceed 2M={2 * self.M} "
                "so that no site neighbors itself"
            )

    @property
    def N(self) -> int:
        """Neighborhood size ``(2M+1)^d - 1``."""
        return (2 * self.M + 1) ** self.d - 1

    @property
    def n_sites(self) -> int:
        return self.L**self.d

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.L,) * self.d

    @property
    def is_1d_nearest_neighbor(self) -> bool:
        return self.d == 1 and self.M == 1

    def sites(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.L), repeat=self.d)

    def normalize(self, x: Site) -> tuple[int, ...]:
        coords = (x,) if np.ndim(x) == 0 else tuple(x)
        if len(coords) != self.d:
            raise ValueError(f"site {x!r} does not have {self.d} coordinates")
        return tuple(int(c) % self.L for c in coords)

    def index(self, x: Site) -> int:
        """Row-major flat index of a site."""
        return int(np.ravel_multi_index(self.normalize(x), self.shape))

    def site(self, index: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.unravel_index(index, self.shape))


def _offsets(d: int, M: int) -> list[tuple[int, ...]]:
    return [
        off
        for off in itertools.product(range(-M, M + 1), repeat=d)
        if any(off)
    ]


def neighborhood(top: LatticeTopology, x: Site) -> list[tuple[int, ...]]:
    """All sites within sup-distance ``M`` of ``x`` on the torus, ``x`` excluded."""
    base = top.normalize(x)
    return [
        tuple((b + o) % top.L for b, o in zip(base, off))
        for off in _offsets(top.d, top.M)
    ]


@lru_cache(maxsize=32)
def neighbor_table(top: LatticeTopology) -> np.ndarray:
    """``(n_sites, N)`` array of flat neighbor indices; read-only, cached."""
    grid = np.arange(top.n_sites).reshape(top.shape)
    cols = [np.roll(grid, shift=[-o for o in off], axis=tuple(range(top.d))).ravel()
            for off in _offsets(top.d, top.M)]
    table = np.stack(cols, axis=1).astype(np.int64)
    table.setflags(write=False)
    return table


class Configuration:
    """Strategy label (1 or 2) at every site of a torus.

    ``strategies`` is stored as an ``int8`` array of shape ``top.shape``.
    """

    def __init__(self, topology: LatticeTopology, strategies):
        arr = np.array(strategies, dtype=np.int8)
        if arr.size != topology.n_sites:
            raise ValueError(
                f"expected {topology.n_sites} strategies, got {arr.size}"
            )
        arr = arr.reshape(topology.shape)
        if not np.isin(arr, (1, 2)).all():
            raise ValueError("strategy labels must be 1 or 2")
        self.topology = topology
        self.strategies = arr

    @classmethod
    def uniform(cls, topology: LatticeTopology, strategy: int) -> "Configuration":
        return cls(topology, np.full(topology.shape, strategy, dtype=np.int8))

    @property
    def flat(self) -> np.ndarray:
        return self.strategies.reshape(-1)

    def __getitem__(self, x: Site) -> int:
        return int(self.strategies[self.topology.normalize(x)])

    def __setitem__(self, x: Site, value: int):
        if value not in (1, 2):
            raise ValueError("strategy labels must be 1 or 2")
        self.strategies[self.topology.normalize(x)] = value

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.topology == other.topology and np.array_equal(
            self.strategies, other.strategies
        )

    def __repr__(self):
        return f"Configuration({self.topology}, density1={self.density1():.4f})"

    def copy(self) -> "Configuration":
        return Configuration(self.topology, self.strategies.copy())

    def swapped(self) -> "Configuration":
        """Same configuration with labels 1 and 2 exchanged."""
        return Configuration(self.topology, 3 - self.strategies)

    def count(self, strategy: int) -> int:
        return int(np.count_nonzero(self.strategies == strategy))

    def density1(self) -> float:
        return self.count(1) / self.topology.n_sites

    def is_fixated(self) -> bool:
        c1 = self.count(1)
        return c1 == 0 or c1 == self.topology.n_sites

    def neighbor_counts(self, x: Site) -> tuple[int, int]:
        """``(N_1, N_2)``: number of neighbors of ``x`` following each strategy."""
        nbrs = neighbor_table(self.topology)[self.topology.index(x)]
        n1 = int(np.count_nonzero(self.flat[nbrs] == 1))
        return n1, self.topology.N - n1
