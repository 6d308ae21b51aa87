"""Flip rates of the comparison spin systems used to bound the death-birth process.

In every model the site at ``x`` holds label 1 or 2 and ``f_j`` is the
fraction of its neighbors with label ``j``. For the Richardson model label 1
is an occupied site and label 2 an empty one.
"""

from __future__ import annotations

from .lattice import Configuration, Site

KINDS = ("voter", "modified_voter_1", "modified_voter_2", "biased_voter", "richardson")


def _fractions(cfg: Configuration, x: Site) -> dict:
    n1, n2 = cfg.neighbor_counts(x)
    N = cfg.topology.N
    return {1: n1 / N, 2: n2 / N}


def reference_rate(kind: str, cfg: Configuration, x: Site, *, epsilon: float = 0.0,
                   mu: float = 1.0, lambdas: tuple = (1.0, 1.0)) -> float:
    """Rate at which the site at ``x`` switches to the other label."""
    f = _fractions(cfg, x)
    here = cfg[x]
    there = 3 - here

    if kind == "voter":
        return f[there]
    if kind in ("modified_voter_1", "modified_voter_2"):
        # label i is the favoured type: it takes over unless surrounded by the other
        i = 1 if kind == "modified_voter_1" else 2
        if here == i:
            return (1 - epsilon) * f[there] + epsilon * (f[i] == 0)
        return (1 - epsilon) * f[i] + epsilon * (f[i] != 0)
    if kind == "biased_voter":
        return lambdas[there - 1] * f[there]
    if kind == "richardson":
        return mu * f[1] if here == 2 else 0.0
    raise ValueError(f"unknown reference model {kind!r}; expected one of {KINDS}")
