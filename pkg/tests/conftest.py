import numpy as np
import pytest

from deathbirth import Configuration, LatticeTopology


def random_configuration(top: LatticeTopology, rng: np.random.Generator) -> Configuration:
    # vary the density so that sparse and crowded neighborhoods both show up
    rho = rng.uniform(0.05, 0.95)
    return Configuration(top, np.where(rng.random(top.shape) < rho, 1, 2))


def brute_force_switch(cfg, pm, x):
    """Payoff-weighted flip probability from explicit neighbor enumeration."""
    from deathbirth import neighborhood

    top = cfg.topology
    here = cfg[x]
    total = other = 0.0
    for y in neighborhood(top, x):
        counts = {1: 0, 2: 0}
        for z in neighborhood(top, y):
            counts[cfg[z]] += 1
        sy = cfg[y]
        phi = sum(pm.entry(sy, j) * counts[j] for j in (1, 2))
        total += phi
        if sy != here:
            other += phi
    return other / total


@pytest.fixture
def rng():
    return np.random.default_rng(20241016)


# criterion number -> (status, title, detail); filled by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, title, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{status} [{number:2d}] {title}: {detail}")
