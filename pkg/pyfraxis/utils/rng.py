"""Seed derivation: trial ``i`` of a run seeded ``s`` is reproducible on its own."""

from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    """Fixed sub-stream ids within one trial."""

    INIT = 0
    SHOTS = 1


def stream_rng(seed: int, trial: int, stream: Stream) -> np.random.Generator:
    """Generator for one named stream of one trial."""
    return np.random.default_rng(
        np.random.SeedSequence(seed + trial, spawn_key=(int(stream),))
    )


def as_generator(seed: int | np.random.Generator | None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
