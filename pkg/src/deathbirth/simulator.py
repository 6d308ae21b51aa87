"""Continuous-time Monte Carlo for the death-birth process on a torus.

Every player updates at rate one, so the chain is simulated by uniformization:
events arrive at total rate ``L^d``, each picks a site uniformly and flips it
with the site's switch probability. This is exact, not an approximation.

On a finite torus every run eventually fixates; fixation frequencies are the
finite-size stand-in for one strategy winning on the infinite lattice.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from . import _kernels as K
from .lattice import Configuration, LatticeTopology, Site, neighbor_table
from .payoff import PayoffMatrix, switch_probability
from .seeding import (DYNAMICS_STREAM, INIT_STREAM, PATTERN_STREAM,
                      derive_replica_seed, make_rng)

log = logging.getLogger(__name__)

BATCH = 1 << 14


@dataclass(frozen=True)
class SimulationParams:
    t_end: float
    max_events: int = 10**12
    seed: int = 0
    sample_interval: float = 1.0
    epsilon: float = 1.0

    def __post_init__(self):
        if not self.t_end > 0:
            raise ValueError("t_end must be positive")
        if not self.max_events > 0:
            raise ValueError("max_events must be positive")
        if not self.sample_interval > 0:
            raise ValueError("sample_interval must be positive")
        if not 0 <= self.epsilon <= 1:
            raise ValueError("epsilon must lie in [0, 1]")


@dataclass
class SimulationRecord:
    times: np.ndarray
    density1: np.ndarray
    fixation: Optional[tuple[int, float]]
    event_count: int
    final_configuration: Configuration

    @property
    def winner(self) -> Optional[int]:
        return self.fixation[0] if self.fixation else None


def _payoff_array(pm: PayoffMatrix) -> np.ndarray:
    return np.array([[pm.a11, pm.a12], [pm.a21, pm.a22]], dtype=np.float64)


def _product(top: LatticeTopology, density1: float, rng) -> Configuration:
    draws = rng.random(top.shape)
    return Configuration(top, np.where(draws < density1, 1, 2))


def init_product_measure(top: LatticeTopology, density1: float, seed: int) -> Configuration:
    """Independent labels, strategy 1 with probability ``density1``."""
    if not 0 <= density1 <= 1:
        raise ValueError("density1 must lie in [0, 1]")
    return _product(top, density1, make_rng(seed, INIT_STREAM))


def init_pattern_1d(top: LatticeTopology, pattern: Union[str, Sequence[int]],
                    fill: int) -> Configuration:
    """Write ``pattern`` (e.g. ``"11222"``) from site 0 and fill the rest of the ring."""
    if top.d != 1:
        raise ValueError("patterns are one-dimensional")
    labels = [int(c) for c in pattern]
    if len(labels) > top.L:
        raise ValueError(f"pattern of length {len(labels)} exceeds L={top.L}")
    arr = np.full(top.L, fill, dtype=np.int8)
    arr[: len(labels)] = labels
    return Configuration(top, arr)


def step_event(cfg: Configuration, pm: PayoffMatrix, epsilon: float,
               rng: np.random.Generator):
    """One uniformized event, applied to ``cfg`` in place.

    Returns ``(cfg, elapsed, flipped)``.
    """
    n = cfg.topology.n_sites
    elapsed = rng.exponential(1.0 / n)
    index = int(rng.integers(n))
    u = rng.random()
    site = cfg.topology.site(index)
    flipped = bool(u < switch_probability(cfg, pm, site, epsilon))
    if flipped:
        cfg.flat[index] = 3 - cfg.flat[index]
    return cfg, elapsed, flipped


def engine_flip_probability(cfg: Configuration, pm: PayoffMatrix, x: Site,
                            epsilon: float = 1.0) -> float:
    """The flip probability exactly as the compiled event loop computes it."""
    s = cfg.flat.copy()
    nbr = neighbor_table(cfg.topology)
    n1 = K.count_type1_neighbors(s, nbr)
    return K.flip_probability(s, nbr, n1, _payoff_array(pm), float(epsilon),
                              cfg.topology.index(x))


class _Chain:
    """Mutable flat state shared by the run loops."""

    def __init__(self, cfg: Configuration, pm: PayoffMatrix, epsilon: float, seed: int):
        self.top = cfg.topology
        self.s = cfg.flat.copy()
        self.nbr = neighbor_table(self.top)
        self.n1 = K.count_type1_neighbors(self.s, self.nbr)
        self.A = _payoff_array(pm)
        self.eps = float(epsilon)
        self.count1 = int(np.count_nonzero(self.s == 1))
        self.rng = make_rng(seed, DYNAMICS_STREAM)
        self.t = 0.0
        self.events = 0
        self.pos = BATCH
        self.waits = self.sites = self.us = None

    @property
    def n(self) -> int:
        return self.s.shape[0]

    def refill(self):
        self.waits = self.rng.exponential(1.0 / self.n, BATCH)
        self.sites = self.rng.integers(0, self.n, BATCH)
        self.us = self.rng.random(BATCH)
        self.pos = 0

    def advance(self, t_stop: float, max_events: int) -> int:
        while True:
            if self.pos >= BATCH:
                self.refill()
            self.pos, self.t, self.events, self.count1, code = K.run_batch(
                self.s, self.nbr, self.n1, self.A, self.eps, self.count1,
                self.t, t_stop, self.events, max_events,
                self.waits, self.sites, self.us, self.pos)
            if code != K.STOP_BATCH:
                return code

    def configuration(self) -> Configuration:
        return Configuration(self.top, self.s.reshape(self.top.shape).copy())


def run(cfg: Configuration, pm: PayoffMatrix, params: SimulationParams) -> SimulationRecord:
    """Simulate until ``t_end``, ``max_events`` or fixation, sampling the density.

    Samples are taken at multiples of ``sample_interval``; a final sample is
    added at the stopping time. Deterministic given ``params.seed``.
    """
    chain = _Chain(cfg, pm, params.epsilon, params.seed)
    n = chain.n
    times, dens = [0.0], [chain.count1 / n]
    fixation = None
    if chain.count1 in (0, n):
        fixation = (1 if chain.count1 else 2, 0.0)
    else:
        k = 1
        while True:
            next_sample = k * params.sample_interval
            t_stop = min(next_sample, params.t_end)
            code = chain.advance(t_stop, params.max_events)
            if code == K.STOP_TIME:
                times.append(t_stop)
                dens.append(chain.count1 / n)
                if t_stop >= params.t_end:
                    break
                k += 1
                continue
            times.append(chain.t)
            dens.append(chain.count1 / n)
            if code == K.STOP_FIXATED:
                fixation = (1 if chain.count1 else 2, chain.t)
            break
    return SimulationRecord(
        times=np.array(times),
        density1=np.array(dens),
        fixation=fixation,
        event_count=chain.events,
        final_configuration=chain.configuration(),
    )


@dataclass(frozen=True)
class ReplicaSummary:
    replica: int
    seed: int
    winner: Optional[int]
    fixation_time: Optional[float]
    event_count: int
    final_density1: float


def _replica_job(args):
    index, base_seed, top, density1, pm, params, keep_record = args
    seed = derive_replica_seed(base_seed, index)
    cfg = init_product_measure(top, density1, seed)
    rec = run(cfg, pm, SimulationParams(
        t_end=params.t_end, max_events=params.max_events, seed=seed,
        sample_interval=params.sample_interval, epsilon=params.epsilon))
    summary = ReplicaSummary(
        replica=index, seed=seed, winner=rec.winner,
        fixation_time=rec.fixation[1] if rec.fixation else None,
        event_count=rec.event_count, final_density1=float(rec.density1[-1]))
    return summary, (rec if keep_record else None)


def run_replicas(top: LatticeTopology, pm: PayoffMatrix, params: SimulationParams,
                 replicas: int, density1: float = 0.5, parallel: int = 1,
                 keep_records: bool = False):
    """Independent runs from product measures, replica ``r`` seeded with
    ``derive_replica_seed(params.seed, r)``.

    Returns ``(summaries, records)`` ordered by replica index; ``parallel``
    changes wall-clock time only.
    """
    jobs = [(r, params.seed, top, density1, pm, params, keep_records)
            for r in range(replicas)]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(_replica_job, jobs))
    else:
        results = [_replica_job(job) for job in jobs]
    return [r[0] for r in results], [r[1] for r in results]


def winner_frequency(summaries: Sequence[ReplicaSummary], strategy: int = 1) -> float:
    return sum(s.winner == strategy for s in summaries) / len(summaries)


# --- one-dimensional interface observables ---------------------------------

class ObservableUndefined(ValueError):
    pass


@dataclass(frozen=True)
class InterfaceSnapshot:
    """Ring-relative interface quantities around a tracked component.

    ``l <= r`` are the component bounds in unwrapped coordinates with
    ``0 <= l < L``; ``X = l - 1`` is the opposite-type site bordering it on
    the left, ``K`` the distance from ``X`` to the next opposite-type site on
    its right; ``M_minus``/``M_plus`` the distances from ``l``/``r`` to the
    nearest tracked-type site outside on either side.
    """

    X: int
    K: int
    l: int
    r: int
    M_minus: int
    M_plus: int


def _default_component(s: np.ndarray, origin: int, track: int) -> np.ndarray:
    L = s.shape[0]
    start = next(((origin + k) % L for k in range(L) if s[(origin + k) % L] == track))
    mask = np.zeros(L, dtype=bool)
    mask[start] = True
    for step in (1, -1):
        x = (start + step) % L
        while s[x] == track and not mask[x]:
            mask[x] = True
            x = (x + step) % L
    return mask


def interface_observables(cfg: Configuration, origin: int = 0, track: int = 2,
                          component: Optional[np.ndarray] = None) -> InterfaceSnapshot:
    """Interface read-off on a ring.

    The tracked component defaults to the run of ``track`` sites containing
    ``origin`` (or the first such run to its right).
    """
    top = cfg.topology
    if top.d != 1:
        raise ValueError("interface observables are defined on rings only")
    s = cfg.flat
    L = top.L
    other = 3 - track
    if not (s == 1).any() or not (s == 2).any():
        raise ObservableUndefined("configuration holds a single strategy")
    mask = (_default_component(s, origin % L, track) if component is None
            else np.asarray(component, dtype=bool))
    if not mask.any() or mask.all():
        raise ObservableUndefined("tracked component is empty or covers the ring")

    # cut the ring at the widest stretch outside the component
    members = np.flatnonzero(mask)
    gaps = np.diff(np.append(members, members[0] + L))
    cut = int(np.argmax(gaps))
    l = int(members[(cut + 1) % len(members)])
    span = int(L - gaps[cut])
    r = l + span

    X = l - 1
    K_gap = next(k for k in range(1, L + 1) if s[(X + k) % L] == other)
    M_minus = next(k for k in range(1, L + 1) if s[(l - k) % L] == track)
    M_plus = next(k for k in range(1, L + 1) if s[(r + k) % L] == track)
    return InterfaceSnapshot(X=X, K=K_gap, l=l, r=r, M_minus=M_minus, M_plus=M_plus)


# --- interface drift -----------------------------------------------------

@dataclass(frozen=True)
class DriftEstimate:
    gap_class: int
    mean_drift: float
    std_error: float
    events_used: int
    replicas: int


GAP_CLASSES = (2, 3, 4)
WILDCARD_SITES = 2


def _parse_gap_class(gap_class) -> int:
    if isinstance(gap_class, str):
        gap_class = gap_class.strip().lstrip(">=≥")
    g = int(gap_class)
    if g < 2:
        raise ValueError(f"gap class must be 2, 3 or >=4, got {gap_class!r}")
    return min(g, 4)


def min_drift_ring(events_per_replica: int) -> int:
    return 50 + -(-events_per_replica // 10)


def _drift_pattern(L: int, gap: int, rng) -> tuple[np.ndarray, int]:
    """1s up to the interface ``X``, ``gap - 1`` twos, then (gap < 4) one 1,
    two fair-coin wildcard sites and 2s up to the end of the ring."""
    x0 = L // 2
    s = np.full(L, 2, dtype=np.int8)
    s[: x0 + 1] = 1
    pos = x0 + gap
    if gap < 4:
        s[pos] = 1
        pos += 1
    s[pos: pos + WILDCARD_SITES] = np.where(rng.random(WILDCARD_SITES) < 0.5, 1, 2)
    return s, x0


def _interface_position(s: np.ndarray, x0: int) -> int:
    """First type-2 site right of the all-1 stretch around ``x0 - 10``, minus one."""
    x = x0 - 10
    while s[x] != 2:
        x += 1
    return x - 1


def estimate_drift(pm: PayoffMatrix, gap_class, replicas: int,
                   events_per_replica: int, seed: int,
                   L: Optional[int] = None, epsilon: float = 1.0) -> DriftEstimate:
    """Monte Carlo estimate of the interface drift for one gap class.

    Each measurement is one uniformized event restricted to the window
    ``X-1 .. X+2`` (the only sites whose flip can move ``X``), scored
    ``window_size * displacement``. The local pattern, wildcards included, is
    drawn afresh for every measurement, so measurements are independent and
    identically distributed. Rebuilding only after flips would not do: the
    wildcard next to the window changes the total flip rate, and slower
    patterns would then be over-sampled. Gap class 2 includes wildcard sites
    beyond the isolated 2, which makes its drift ``2.75 - p1(2, 0)`` rather
    than ``2 - p1(2, 0)``.
    """
    gap = _parse_gap_class(gap_class)
    need = min_drift_ring(events_per_replica)
    if L is None:
        L = need
    elif L < need:
        raise ValueError(f"insufficient ring size: L={L} < {need}")
    nbr = neighbor_table(LatticeTopology(1, 1, L))
    A = _payoff_array(pm)
    eps = float(epsilon)

    values = np.empty(replicas * events_per_replica)
    k = 0
    for r in range(replicas):
        rep_seed = derive_replica_seed(seed, r)
        pattern_rng = make_rng(rep_seed, PATTERN_STREAM)
        rng = make_rng(rep_seed, DYNAMICS_STREAM)
        window = np.arange(L // 2 - 1, L // 2 + 3)
        picks = rng.integers(0, len(window), events_per_replica)
        us = rng.random(events_per_replica)
        for j in range(events_per_replica):
            s, x0 = _drift_pattern(L, gap, pattern_rng)
            n1 = K.count_type1_neighbors(s, nbr)
            x = int(window[picks[j]])
            if us[j] < K.flip_probability(s, nbr, n1, A, eps, x):
                K.apply_flip(s, nbr, n1, x)
                values[k] = len(window) * (_interface_position(s, x0) - x0)
            else:
                values[k] = 0.0
            k += 1
    return DriftEstimate(
        gap_class=gap,
        mean_drift=float(values.mean()),
        std_error=float(values.std(ddof=1) / np.sqrt(len(values))) if len(values) > 1 else 0.0,
        events_used=len(values),
        replicas=replicas,
    )


# --- type-2 space-time component ----------------------------------------

def component_extinction(pm: PayoffMatrix, top: LatticeTopology, params: SimulationParams,
                         initial: Optional[Configuration] = None,
                         density1: float = 0.5, origin: Site = 0) -> Optional[float]:
    """Time at which the type-2 component grown from ``origin`` dies out.

    Without ``initial`` the start is a product measure (seeded by
    ``params.seed``) conditioned on a type-2 player at the origin. Returns
    ``None`` when the budget runs out or strategy 2 takes over the torus.
    """
    if initial is None:
        initial = init_product_measure(top, density1, params.seed)
        initial[origin] = 2
    if initial.topology != top:
        raise ValueError("initial configuration lives on a different torus")
    if initial[origin] != 2:
        raise ValueError("the origin must hold a type-2 player")

    chain = _Chain(initial, pm, params.epsilon, params.seed)
    in_comp = np.zeros(chain.n, dtype=bool)
    comp_size = K.absorb_component(chain.s, chain.nbr, in_comp, top.index(origin))
    if chain.count1 == 0:
        return None
    while True:
        if chain.pos >= BATCH:
            chain.refill()
        chain.pos, chain.t, chain.events, chain.count1, comp_size, code = \
            K.run_component_batch(
                chain.s, chain.nbr, chain.n1, chain.A, chain.eps, chain.count1,
                in_comp, comp_size, chain.t, params.t_end, chain.events,
                params.max_events, chain.waits, chain.sites, chain.us, chain.pos)
        if code == K.STOP_EXTINCT:
            return chain.t
        if code != K.STOP_BATCH:
            return None
