"""Replica seeds and random streams.

``derive_replica_seed`` is SplitMix64 applied to ``base + (index + 1) * GOLDEN``
modulo 2**64. The finalizer is a bijection of 64-bit words and ``GOLDEN`` is
odd, so distinct replica indices below 2**64 always receive distinct seeds.
Frozen test vectors live in ``tests/test_seeding.py``.

Random streams are numpy ``PCG64`` generators fed by ``SeedSequence(seed,
spawn_key=(stream,))``; initial configurations and dynamics use different
streams of the same seed.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

DYNAMICS_STREAM = 0
INIT_STREAM = 1
PATTERN_STREAM = 2


def splitmix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_replica_seed(base_seed: int, replica_index: int) -> int:
    if base_seed < 0 or replica_index < 0:
        raise ValueError("seeds and replica indices are non-negative")
    return splitmix64(base_seed + (replica_index + 1) * GOLDEN)


def make_rng(seed: int, stream: int = DYNAMICS_STREAM) -> np.random.Generator:
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,)))
    )
