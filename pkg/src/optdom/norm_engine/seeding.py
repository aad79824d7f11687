"""Per-task seed derivation from the single global seed."""

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(seed: int, task: str, index: int = 0) -> int:
    """Hash (seed, task, index) into a 64-bit seed."""
    payload = f"{int(seed) & _MASK64}:{task}:{int(index)}".encode("utf-8")
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "little")


def task_rng(seed: int, task: str, index: int = 0) -> np.random.Generator:
    """Return a numpy Generator seeded for one named task."""
    return np.random.default_rng(derive_seed(seed, task, index))
