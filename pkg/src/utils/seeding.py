"""
Named Random Streams
====================
Every command draws its randomness from one 64-bit seed. Consumers ask for
a stream by name ("split", "inner-split", "neg-sample", "synth-topology",
"synth-partition", ...), so adding a consumer never perturbs the others.
"""

import hashlib

import numpy as np

from src.utils.exceptions import InvalidInputError

STREAMS = (
    "split",
    "inner-split",
    "neg-sample",
    "feature-sample",
    "synth-topology",
    "synth-partition",
)


def _stream_key(name: str) -> int:
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def stream_rng(seed: int, name: str, *salt: int) -> np.random.Generator:
    """
    Return an independent generator for the named stream.

    Args:
        seed: The per-command seed (any non-negative integer < 2**64)
        name: Stream name
        salt: Optional extra integers, e.g. a retry counter

    Returns:
        numpy Generator seeded from (seed, name, *salt)
    """
    if seed < 0:
        raise InvalidInputError(f"Seed must be non-negative, got {seed}")
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF, _stream_key(name), *[int(s) for s in salt]]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def stream_seed(seed: int, name: str, *salt: int) -> int:
    """A 32-bit integer seed for libraries that do not accept a Generator (networkx)."""
    return int(stream_rng(seed, name, *salt).integers(0, 2**32 - 1))
