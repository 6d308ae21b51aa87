"""Payoffs, death-birth switch probabilities and one-dimensional interface rates.

Everything here is plain arithmetic on the payoff entries, so the functions
accept ``fractions.Fraction`` entries as well as floats and then return exact
rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real

from .lattice import Configuration, Site, neighbor_table


@dataclass(frozen=True)
class PayoffMatrix:
    """2x2 game; ``aij`` is what a type-i player gets from each type-j neighbor."""

    a11: Real
    a12: Real
    a21: Real
    a22: Real

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"payoff {name} must be positive, got {value!r}")

    @property
    def a1(self):
        """Selfishness of strategy 1, ``a11 - a21``."""
        return self.a11 - self.a21

    @property
    def a2(self):
        """Selfishness of strategy 2, ``a22 - a12``."""
        return self.a22 - self.a12

    def entry(self, i: int, j: int):
        return ((self.a11, self.a12), (self.a21, self.a22))[i - 1][j - 1]

    def swapped(self) -> "PayoffMatrix":
        """The same game with the strategy labels exchanged."""
        return PayoffMatrix(self.a22, self.a21, self.a12, self.a11)

    def as_tuple(self) -> tuple:
        return (self.a11, self.a12, self.a21, self.a22)


def make_payoff_matrix(a11, a12, a21, a22) -> PayoffMatrix:
    return PayoffMatrix(a11, a12, a21, a22)


def payoff(cfg: Configuration, pm: PayoffMatrix, x: Site):
    """Payoff of the player at ``x``: ``sum_j a_ij N_j(x)`` with ``i`` her strategy."""
    i = cfg[x]
    n1, n2 = cfg.neighbor_counts(x)
    return pm.entry(i, 1) * n1 + pm.entry(i, 2) * n2


def switch_probability(cfg: Configuration, pm: PayoffMatrix, x: Site, epsilon=1):
    """Probability that the player at ``x`` adopts the other strategy when updated.

    With probability ``epsilon`` she copies a neighbor picked proportionally
    to payoff, otherwise a uniformly random neighbor. ``epsilon=1`` is the
    pure death-birth process, ``epsilon=0`` the voter model.
    """
    if not 0 <= epsilon <= 1:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon!r}")
    top = cfg.topology
    table = neighbor_table(top)
    flat = cfg.flat
    i = int(flat[top.index(x)])
    nbrs = table[top.index(x)]

    num = den = 0
    n_other = 0
    for y in nbrs:
        sy = int(flat[y])
        n1 = int((flat[table[y]] == 1).sum())
        phi = pm.entry(sy, 1) * n1 + pm.entry(sy, 2) * (top.N - n1)
        den += phi
        if sy != i:
            num += phi
            n_other += 1

    if epsilon == 0:
        return n_other / top.N
    weighted = num / den
    if epsilon == 1:
        return weighted
    return (1 - epsilon) * (n_other / top.N) + epsilon * weighted


def interface_rate(pm: PayoffMatrix, i: int, n1: int, n2: int):
    """Flip rate of a type-``i`` player on a nearest-neighbor ring.

    Her type-1 neighbor has ``n1`` type-1 neighbors and her type-2 neighbor
    has ``n2`` type-2 neighbors.
    """
    if i not in (1, 2):
        raise ValueError(f"strategy must be 1 or 2, got {i!r}")
    if n1 not in (0, 1, 2) or n2 not in (0, 1, 2):
        raise ValueError("n1 and n2 must be in {0, 1, 2}")
    from_1 = n1 * pm.a11 + (2 - n1) * pm.a12
    from_2 = (2 - n2) * pm.a21 + n2 * pm.a22
    den = from_1 + from_2
    return from_2 / den if i == 1 else from_1 / den


@dataclass(frozen=True)
class DriftTable:
    """Interface drifts and the full ``p_i(n1, n2)`` tables, keyed by ``(n1, n2)``."""

    D2: Real
    D3: Real
    D4: Real
    p1: dict = field(repr=False)
    p2: dict = field(repr=False)


def drift_table(pm: PayoffMatrix) -> DriftTable:
    keys = [(n1, n2) for n1 in range(3) for n2 in range(3)]
    p1 = {k: interface_rate(pm, 1, *k) for k in keys}
    p2 = {k: interface_rate(pm, 2, *k) for k in keys}
    return DriftTable(
        D2=2 - p1[2, 0],
        D3=p2[1, 1] - p1[2, 1],
        D4=p2[1, 2] - p1[2, 1],
        p1=p1,
        p2=p2,
    )


def drift_closed_form(pm: PayoffMatrix) -> tuple:
    """``(D3, D4)`` written directly in terms of the payoffs."""
    a11, a12, a21, a22 = pm.as_tuple()
    retreat = (a21 + a22) / (2 * a11 + a21 + a22)
    d3 = (a11 + a12) / (a11 + a12 + a21 + a22) - retreat
    d4 = (a11 + a12) / (a11 + a12 + 2 * a22) - retreat
    return d3, d4


@dataclass(frozen=True)
class PayoffExtrema:
    Mplus: Real
    Mminus: Real
    mminus: Real
    mplus: Real


def payoff_extrema(pm: PayoffMatrix, N: int) -> PayoffExtrema:
    """Extremes of the linear payoff profiles over ``z = 0..N`` type-1 neighbors.

    ``phi1(z) = a11 z/N + a12 (1 - z/N)`` and ``phi2(z) = a22 z/N + a21 (1 - z/N)``.
    Linear in ``z``, so only ``z`` in ``{0, N-1, N}`` needs evaluating.
    """
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")

    def phi1(z):
        return pm.a11 * Fraction(z, N) + pm.a12 * Fraction(N - z, N)

    def phi2(z):
        return pm.a22 * Fraction(z, N) + pm.a21 * Fraction(N - z, N)

    return PayoffExtrema(
        Mplus=max(phi1(0), phi1(N - 1), phi1(N)),
        Mminus=max(phi1(0), phi1(N - 1)),
        mminus=min(phi2(0), phi2(N - 1), phi2(N)),
        mplus=min(phi2(0), phi2(N - 1)),
    )
