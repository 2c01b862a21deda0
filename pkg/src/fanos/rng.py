"""Deterministic, platform-stable random streams.

Every random draw in the package goes through :func:`seeded_rng`, keyed by a
tuple of plain values (benchmark name, seed, purpose, ...). The key is hashed
with SHA-256 -- not Python's ``hash()``, which is salted per process -- and
feeds a counter-based Philox generator, so identical keys give identical
streams across runs, processes and platforms.
"""

import hashlib

import numpy as np


def stream_key(*parts) -> list[int]:
    """Hash arbitrary key parts into SeedSequence entropy words."""
    h = hashlib.sha256()
    for part in parts:
        h.update(repr(part).encode("utf-8"))
        h.update(b"\x00")
    digest = h.digest()
    return [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4)]


def seeded_rng(*parts) -> np.random.Generator:
    """Return a Philox generator deterministically keyed by ``parts``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(stream_key(*parts))))
