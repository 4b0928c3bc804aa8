"""
RelSpin EPR - Deterministic PRNG

SplitMix64 counter/mix generator. Specified bit-for-bit so every platform
reproduces the same sequence for the same seed:

    state  <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z      <- state
    z      <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9  mod 2^64
    z      <- (z XOR (z >> 27)) * 0x94D049BB133111EB  mod 2^64
    output <- z XOR (z >> 31)

A uniform double in [0, 1) is (output >> 11) * 2^-53. The k-th output only
depends on seed + k * gamma, which lets ``uniforms`` produce whole blocks
with numpy that match the scalar path exactly.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB
UNIT_53 = 2.0 ** -53


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * MIX_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_2) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    # uint64 array arithmetic wraps modulo 2^64
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX_1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX_2)
    return z ^ (z >> np.uint64(31))


class RngStream:
    """Seeded SplitMix64 stream. Only the stream itself is mutated."""

    def __init__(self, seed: int):
        self._seed = int(seed)
        self._state = self._seed & MASK64

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def state(self) -> int:
        return self._state

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return _mix64(self._state)

    def next_uniform(self) -> float:
        return (self.next_u64() >> 11) * UNIT_53

    def u64s(self, count: int) -> np.ndarray:
        """Next ``count`` raw outputs as a uint64 array."""
        if count < 0:
            raise ValueError("count must be non-negative")
        steps = np.arange(1, count + 1, dtype=np.uint64) * np.uint64(GOLDEN_GAMMA)
        out = _mix64_array(steps + np.uint64(self._state))
        self._state = (self._state + count * GOLDEN_GAMMA) & MASK64
        return out

    def uniforms(self, count: int) -> np.ndarray:
        """Next ``count`` uniforms; identical to ``count`` calls of next_uniform."""
        return (self.u64s(count) >> np.uint64(11)).astype(np.float64) * UNIT_53

    def spawn(self) -> RngStream:
        """Child stream seeded from the next output."""
        return RngStream(self.next_u64())

    def __repr__(self) -> str:
        return f"RngStream(seed={self._seed}, state=0x{self._state:016x})"


def next_uniform(stream: RngStream) -> float:
    """Advance ``stream`` and return a uniform double in [0, 1)."""
    return stream.next_uniform()
