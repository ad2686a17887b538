"""Seeded, splittable random streams.

Every stream is a Philox (counter-based) generator keyed by a
``SeedSequence`` built from the master seed plus a spawn key. Distinct
spawn keys give statistically independent, non-overlapping streams, so
checks and parallel chunks can each own a stream derived from one master
seed without coordination.
"""

from __future__ import annotations

import zlib

import numpy as np

DEFAULT_SEED = 20120501
SEED_ENV_VAR = "RWAST_SEED"


def stream_key(label: str) -> int:
    """Stable 32-bit key for a named stream (independent of PYTHONHASHSEED)."""
    return zlib.crc32(label.encode("utf-8"))


def make_rng(seed: int, *key: int | str) -> np.random.Generator:
    spawn_key = tuple(stream_key(k) if isinstance(k, str) else int(k) for k in key)
    ss = np.random.SeedSequence(int(seed), spawn_key=spawn_key)
    return np.random.Generator(np.random.Philox(ss))


def as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return make_rng(int(seed))
