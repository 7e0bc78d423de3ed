"""Seeded random streams.

Every random draw in the package comes from a Philox (counter-based)
generator keyed by ``(seed, purpose, index)``, so replicates can run in any
order or in parallel and still reproduce.
"""
from __future__ import annotations

import zlib

import numpy as np


def purpose_key(purpose: str) -> int:
    return zlib.crc32(purpose.encode("utf-8"))


def substream(seed: int, purpose: str = "default", index: int = 0) -> np.random.Generator:
    """Independent generator for one (seed, purpose, replicate) triple."""
    if seed is None:
        raise ValueError("an explicit seed is required")
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, purpose_key(purpose), int(index)])
    return np.random.Generator(np.random.Philox(ss))


def as_generator(seed_or_rng, purpose: str = "default") -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return substream(seed_or_rng, purpose)
