"""SplitMix64, vectorized.

The generator state advances by the golden-ratio increment
``0x9E3779B97F4A7C15`` and each output is the finalizer

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

(all arithmetic mod 2**64), so output ``n`` (0-based) of the stream seeded
with ``s`` is ``mix(s + (n + 1) * GAMMA)``. Doubles in [0, 1) are
``(u64 >> 11) * 2**-53``. Streams for independent purposes are keyed with
:func:`derive_seed`, which folds each key in as ``s = mix(s ^ key)``.
"""
from __future__ import annotations

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1


def mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(seed: int, *keys: int) -> int:
    s = seed & _MASK
    for k in keys:
        s = mix64(s ^ (k & _MASK))
    return s


def _mix64_array(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def u64_block(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start + count - 1`` of the stream seeded with ``seed``."""
    n = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        state = np.uint64(seed & _MASK) + n * np.uint64(GAMMA)
    return _mix64_array(state)


def uniform_block(seed: int, start: int, count: int, low: float = -1.0, high: float = 1.0):
    u = (u64_block(seed, start, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53
    return low + (high - low) * u


class SplitMix64:
    """Sequential interface over the same stream."""

    def __init__(self, seed: int):
        self.seed = seed & _MASK
        self.position = 0

    def next_u64(self) -> int:
        out = int(u64_block(self.seed, self.position, 1)[0])
        self.position += 1
        return out

    def uniform(self, shape, low: float = -1.0, high: float = 1.0) -> np.ndarray:
        count = int(np.prod(shape))
        out = uniform_block(self.seed, self.position, count, low, high)
        self.position += count
        return out.reshape(shape)
