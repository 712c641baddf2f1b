"""Seeded, counter-based random streams.

Every run owns a Philox generator keyed by its seed, so runs are reproducible
individually and can execute in parallel without shared state.
"""

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def derive_seed(seed: int, *keys: int) -> int:
    """A 64-bit child seed for the stream ``(seed, *keys)``."""
    ss = np.random.SeedSequence([int(seed), *map(int, keys)])
    return int(ss.generate_state(1, np.uint64)[0])
