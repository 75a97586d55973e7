"""Pinned portable PRNG: xoshiro256++ seeded through splitmix64.

Disorder realizations must be reproducible bit for bit across platforms
and library versions, so the generator is spelled out here instead of
delegating to ``numpy.random``.  The stream layout used by
:func:`fluxlattice.network.sample_disorder` is documented there:
``lambda_1 .. lambda_n`` first, then ``mu_1 .. mu_n``.

Reference algorithms: Blackman & Vigna, https://prng.di.unimi.it/.
"""

from __future__ import annotations

_MASK = 0xFFFFFFFFFFFFFFFF


def _splitmix64_stream(seed: int):
    state = seed & _MASK
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        yield (z ^ (z >> 31)) & _MASK


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


class Xoshiro256PlusPlus:
    """xoshiro256++ with the four state words drawn from splitmix64(seed)."""

    def __init__(self, seed: int):
        sm = _splitmix64_stream(int(seed))
        self._s = [next(sm) for _ in range(4)]

    def next_uint64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s0 + s3) & _MASK, 23) + s0) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def uniform01(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        """Uniform double in [lo, hi)."""
        return lo + (hi - lo) * self.uniform01()
