"""
Seeded random streams.

Every consumer of randomness asks for its own stream by label, e.g. ``"env/3"`` for the
environment of replication 3 or ``"attacker/3"`` for the attacker's coins. Streams with
different labels are independent, so attaching or removing an attacker never shifts the
environment's draws.
"""
import hashlib

import numpy as np

_SEED_MASK = (1 << 64) - 1


def stream_key(stream_id: str) -> int:
    """Stable 64-bit key of a stream label (independent of PYTHONHASHSEED)."""
    digest = hashlib.sha256(stream_id.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def rng_stream(seed: int, stream_id: str) -> np.random.Generator:
    """Deterministic generator for ``(seed, stream_id)``."""
    sequence = np.random.SeedSequence(entropy=seed & _SEED_MASK, spawn_key=(stream_key(stream_id),))
    return np.random.Generator(np.random.PCG64(sequence))


def bernoulli(rng: np.random.Generator, p: np.ndarray) -> np.ndarray:
    """One Bernoulli draw per entry of ``p`` as int8; always consumes len(p) uniforms."""
    p = np.asarray(p, dtype=np.float64)
    return (rng.random(p.shape) < p).astype(np.int8)
