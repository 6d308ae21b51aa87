"""Parameter-region predicates for the spatial game and phase-diagram sweeps.

Conventions: strategy 2 is the one with the larger off-diagonal payoff,
``a21 > a12``; the predicates that need it reject other inputs instead of
silently relabelling. Pass ``pm.swapped()`` to study the mirrored game.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .mean_field import RegimeReport, classify_regime
from .payoff import PayoffMatrix, drift_table, payoff_extrema

LARGE_RANGE_CAVEAT = "coexistence additionally needs the interaction range M to be large"

SWEEP_COLUMNS = (
    "a11", "a22", "a12", "a21", "N", "regime", "a1", "a2", "u_star",
    "thm1", "thm2a", "thm2b", "lemma2wins", "thm4", "pd_triangle",
)


class PreconditionError(ValueError):
    pass


def _require_a21_above_a12(pm: PayoffMatrix):
    if not pm.a21 > pm.a12:
        raise PreconditionError(
            f"needs a21 > a12 (got a12={pm.a12}, a21={pm.a21}); "
            "apply the label swap pm.swapped() first"
        )


def _exact(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Theorem1Constants:
    """Exact rational constants for the small-payoff coexistence condition."""

    c_minus: Fraction
    c_plus: Fraction
    threshold: Fraction
    threshold_via_c_plus: Fraction


def theorem1_constants(pm: PayoffMatrix) -> Theorem1Constants:
    a12, a21 = _exact(pm.a12), _exact(pm.a21)
    c_minus = Fraction(1, 2**17) * min(a12 / a21, a21 / a12)
    c_plus = 5**2 * 2**7 / c_minus**5
    base = min(a12, a21)
    return Theorem1Constants(
        c_minus=c_minus,
        c_plus=c_plus,
        threshold=Fraction(1, 5**2 * 2**21) * c_minus**5 * base,
        threshold_via_c_plus=Fraction(1, 2**14) / c_plus * base,
    )


def theorem1_condition(pm: PayoffMatrix) -> bool:
    """``max(a11, a22)`` below the coexistence threshold (exact comparison).

    Only the payoff inequality is tested; see ``LARGE_RANGE_CAVEAT``.
    """
    consts = theorem1_constants(pm)
    return max(_exact(pm.a11), _exact(pm.a22)) <= consts.threshold


def theorem2a_condition(pm: PayoffMatrix, N: int) -> bool:
    """Strategy 1 wins: ``min(a12-a22, a11-a21) > (N-1)(a21-a12)``."""
    _require_a21_above_a12(pm)
    return min(pm.a12 - pm.a22, pm.a11 - pm.a21) > (N - 1) * (pm.a21 - pm.a12)


def theorem2a_region_nonempty(a12, a21, N: int) -> bool:
    return a12 > (1 - Fraction(1, N)) * a21


def region0_inequality(pm: PayoffMatrix, N: int) -> bool:
    """``(N^2-N-1) max(a11-a21, a12-a22, a11-a22) < a21-a12``, without topology checks."""
    worst = max(pm.a11 - pm.a21, pm.a12 - pm.a22, pm.a11 - pm.a22)
    return (N * N - N - 1) * worst < pm.a21 - pm.a12


def theorem2b_condition(pm: PayoffMatrix, N: int,
                        topology_is_1d_nn: Optional[bool] = None) -> bool:
    """Strategy 2 wins; never on the nearest-neighbor ring.

    ``topology_is_1d_nn`` defaults to ``N == 2``, which only the
    one-dimensional nearest-neighbor lattice produces.
    """
    _require_a21_above_a12(pm)
    if topology_is_1d_nn is None:
        topology_is_1d_nn = N == 2
    return not topology_is_1d_nn and region0_inequality(pm, N)


def lemma_2wins_condition(pm: PayoffMatrix, N: int) -> bool:
    ext = payoff_extrema(pm, N)
    first = (N - 1) * ext.mplus > (N - 2) * ext.Mplus + ext.Mminus
    second = (N - 1) * ext.Mminus < (N - 2) * ext.mminus + ext.mplus
    return first and second


def region_corner_points(pm: PayoffMatrix, N: int):
    """Corners ``(p_minus, p_plus)`` of the strategy-2 triangle in the (a11, a22) plane."""
    _require_a21_above_a12(pm)
    shift = (pm.a21 - pm.a12) / (N * N - N - 1)
    p_plus = (pm.a21 + shift, pm.a21)
    p_minus = (pm.a12, pm.a12 - shift)
    return p_minus, p_plus


def _theorem4_strategy1(pm: PayoffMatrix) -> bool:
    dt = drift_table(pm)
    return (pm.a22 < pm.a21 and dt.D3 + dt.D4 > 0) or (pm.a22 > pm.a21 and dt.D4 > 0)


def theorem4_verdict(pm: PayoffMatrix) -> Optional[int]:
    """Winner on the nearest-neighbor ring from the interface-drift conditions.

    Strategy 2 is read off the label-swapped game. Boundary cases
    (``a22 == a21`` or a vanishing drift) give ``None``.
    """
    one = _theorem4_strategy1(pm)
    two = _theorem4_strategy1(pm.swapped())
    if one and two:
        raise AssertionError(f"both strategies satisfy the drift condition for {pm}")
    if one:
        return 1
    if two:
        return 2
    return None


def theorem4_curves(pm: PayoffMatrix) -> dict:
    """Signed quantities whose zero sets bound the ring winning regions."""
    dt, sw = drift_table(pm), drift_table(pm.swapped())
    return {
        "D3+D4": dt.D3 + dt.D4,
        "D4": dt.D4,
        "swapped D3+D4": sw.D3 + sw.D4,
        "swapped D4": sw.D4,
    }


def pd_triangle_membership(pm: PayoffMatrix) -> bool:
    """Prisoner's dilemma ordering: sucker < punishment < reward < temptation."""
    return pm.a12 < pm.a22 < pm.a11 < pm.a21


@dataclass(frozen=True)
class RegionVerdict:
    a11: float
    a22: float
    a12: float
    a21: float
    N: int
    replicator_regime: RegimeReport
    thm1_coexists: bool
    thm2a_strategy1_wins: Optional[bool]
    thm2b_strategy2_wins: Optional[bool]
    thm4_winner: Optional[int]
    pd_triangle: bool
    lemma_2wins: bool
    thm1_caveat: str = LARGE_RANGE_CAVEAT

    def row(self) -> dict:
        """Flat record keyed by ``SWEEP_COLUMNS``."""
        reg = self.replicator_regime
        return {
            "a11": self.a11, "a22": self.a22, "a12": self.a12, "a21": self.a21,
            "N": self.N, "regime": reg.regime, "a1": reg.a1, "a2": reg.a2,
            "u_star": reg.interior_fixed_point, "thm1": self.thm1_coexists,
            "thm2a": self.thm2a_strategy1_wins, "thm2b": self.thm2b_strategy2_wins,
            "lemma2wins": self.lemma_2wins, "thm4": self.thm4_winner,
            "pd_triangle": self.pd_triangle,
        }

    def to_dict(self) -> dict:
        out = asdict(self)
        out["replicator_regime"] = self.replicator_regime.to_dict()
        return out


def classify_point(pm: PayoffMatrix, N: int,
                   topology_is_1d_nn: Optional[bool] = None) -> RegionVerdict:
    """All predicates at one payoff matrix.

    The ring drift verdict is filled only on the nearest-neighbor ring; the
    coupling predicates only when ``a21 > a12``.
    """
    if topology_is_1d_nn is None:
        topology_is_1d_nn = N == 2
    ordered = pm.a21 > pm.a12
    return RegionVerdict(
        a11=pm.a11, a22=pm.a22, a12=pm.a12, a21=pm.a21, N=N,
        replicator_regime=classify_regime(pm),
        thm1_coexists=theorem1_condition(pm),
        thm2a_strategy1_wins=theorem2a_condition(pm, N) if ordered else None,
        thm2b_strategy2_wins=(theorem2b_condition(pm, N, topology_is_1d_nn)
                              if ordered else None),
        thm4_winner=theorem4_verdict(pm) if topology_is_1d_nn else None,
        pd_triangle=pd_triangle_membership(pm),
        lemma_2wins=lemma_2wins_condition(pm, N),
    )


def sweep_phase_diagram(a12, a21, a11_grid: Iterable, a22_grid: Iterable,
                        N: int) -> list[RegionVerdict]:
    """One verdict per ``(a11, a22)`` cell, ``a11`` varying slowest."""
    a11_grid, a22_grid = list(a11_grid), list(a22_grid)
    if not a11_grid or not a22_grid:
        raise ValueError("grids must be nonempty")
    if not a21 > a12:
        raise PreconditionError("sweeps are laid out with a21 > a12")
    return [
        classify_point(PayoffMatrix(a11, a12, a21, a22), N)
        for a11 in a11_grid
        for a22 in a22_grid
    ]


def bisect_boundary(predicate: Callable[[float], object], lo: float, hi: float,
                    tol: float = 1e-12, max_iter: int = 200) -> float:
    """Locate where ``predicate`` changes value on ``[lo, hi]`` by bisection."""
    left = predicate(lo)
    if predicate(hi) == left:
        raise ValueError("predicate takes the same value at both ends")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if predicate(mid) == left:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
