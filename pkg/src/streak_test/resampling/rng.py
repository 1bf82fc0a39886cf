"""
Counter-based random streams.

uniform(seed, c) is the c-th output of a SplitMix64 generator keyed by seed,
computed directly from the counter rather than by stepping state. Draw i of
width L reads counters i*L .. i*L+L-1, so any partition of the draw range
reproduces the same values.
"""

from __future__ import annotations

import hashlib
from typing import Union

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    # uint64 array arithmetic wraps modulo 2**64
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def stream_key(seed: int) -> int:
    return _mix64(int(seed) ^ 0x5851F42D4C957F2D)


def uniforms(seed: int, start_draw: int, stop_draw: int, width: int) -> np.ndarray:
    """Uniform [0, 1) variates for draws [start_draw, stop_draw), `width` per draw."""
    n = max(stop_draw - start_draw, 0)
    if n == 0 or width == 0:
        return np.zeros((n, width), dtype=np.float64)
    counters = np.arange(start_draw * width, stop_draw * width, dtype=np.uint64)
    z = np.uint64(stream_key(seed)) + (counters + np.uint64(1)) * np.uint64(_GOLDEN)
    bits = _mix64_array(z) >> np.uint64(11)
    return (bits.astype(np.float64) * (1.0 / (1 << 53))).reshape(n, width)


def derive_seed(master_seed: int, *parts: Union[str, int]) -> int:
    """Stable 64-bit seed for a sub-stream named by `parts`.

    Never uses hash(), which is salted per process.
    """
    h = hashlib.blake2b(digest_size=8)
    h.update(int(master_seed).to_bytes(8, "little", signed=False))
    for part in parts:
        h.update(b"\x1f")
        h.update(str(part).encode("utf-8"))
    return int.from_bytes(h.digest(), "little", signed=False)
