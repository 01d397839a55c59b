"""Seeded randomness.

Every run uses numpy's PCG64. A run seed is split into named substreams, one
per phase (``generator``, ``center``, ``partition``, ``approx``), by seeding a
``SeedSequence`` with the run seed and a 64-bit digest of the stream name.
Benchmark row seeds are the first 8 bytes of blake2b("master:n:rep").
"""

import hashlib

import numpy as np

SEED_BITS = 64


def _digest64(text: str) -> int:
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "little")


def make_rng(seed: int, stream: str) -> np.random.Generator:
    """Independent generator for one phase of a run."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, _digest64(stream)])))


def derive_seed(master: int, n: int, rep: int) -> int:
    """Per-row seed for benchmark sweeps; independent of row order."""
    return _digest64(f"{master}:{n}:{rep}")
