"""SplitMix64: the portable generator behind every bootstrap draw.

The sequence is fully specified here so other implementations can reproduce
it bit for bit:

* state and arithmetic are unsigned 64-bit, wrapping modulo 2**64;
* output ``k`` (0-based) of the stream seeded with ``s`` is
  ``mix(s + (k + 1) * 0x9E3779B97F4A7C15)`` where::

      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
      z = (z ^ (z >> 27)) * 0x94D049BB133111EB
      z =  z ^ (z >> 31)

* a uniform double in [0, 1) is ``(x >> 11) * 2**-53``;
* an index in ``range(n)`` is ``floor(u * n)`` in IEEE double arithmetic.

Because the output depends only on ``(s, k)``, any block of the stream can be
generated independently.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Scalar reference generator (pure Python integers)."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def next_double(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def next_index(self, n: int) -> int:
        return int(self.next_double() * n)


def derive_seed(seed: int, stream: int) -> int:
    """Seed of an independent sub-stream: output ``stream`` of the stream seeded with ``seed``."""
    return mix64((seed & MASK64) + (stream + 1) * GAMMA)


def u64_block(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start+count-1`` of the stream, vectorized."""
    k = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & MASK64) + k * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def uniform_block(seed: int, start: int, count: int) -> np.ndarray:
    return (u64_block(seed, start, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def index_block(seed: int, start: int, count: int, n: int) -> np.ndarray:
    return (uniform_block(seed, start, count) * n).astype(np.int64)
