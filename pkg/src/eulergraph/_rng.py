"""Counter-based randomness helpers.

Every random draw in the package is keyed by explicit integers so that
parallel and serial runs produce identical results.
"""

from __future__ import annotations

import hashlib
import struct
from fractions import Fraction

import numpy as np

_MASK64 = (1 << 64) - 1


def _seed_bytes(seed: int) -> bytes:
    return (int(seed) & _MASK64).to_bytes(8, "little")


def derive_seed(*parts: int) -> int:
    """Hash a tuple of integers to a 64-bit seed."""
    h = hashlib.blake2b(digest_size=8)
    for part in parts:
        h.update(_seed_bytes(part))
    return int.from_bytes(h.digest(), "little")


class PairCoins:
    """Independent Bernoulli coins keyed by ``(seed, u, v)``.

    A coin compares a 64-bit hash word ``k`` against ``p`` exactly:
    heads iff ``k / 2**64 < p``.
    """

    def __init__(self, seed: int, p: Fraction):
        self._base = hashlib.blake2b(digest_size=8, key=_seed_bytes(seed))
        self._num = p.numerator << 64
        self._den = p.denominator

    def __call__(self, u: int, v: int) -> bool:
        h = self._base.copy()
        h.update(struct.pack("<II", u, v))
        return int.from_bytes(h.digest(), "little") * self._den < self._num


def generator(seed: int, *counter: int) -> np.random.Generator:
    """A numpy generator keyed by ``(seed, *counter)``."""
    return np.random.default_rng([int(seed) & _MASK64, *(int(c) & _MASK64 for c in counter)])
