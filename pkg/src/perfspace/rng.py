"""Deterministic 64-bit generator for bootstrap resampling.

SplitMix64 is used instead of numpy's Generator because the resampling
streams must be reproducible outside this package (the browser client
re-runs the same bootstrap): the algorithm is a handful of integer ops,
trivially portable to any language with 64-bit unsigned arithmetic, and
fully specified by its seed.
"""

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """SplitMix64 sequence (Steele, Lea & Flood 2014), 64-bit output."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def next_below(self, n: int) -> int:
        """Uniform-ish draw in [0, n). Modulo bias is negligible for the
        small n used here (column counts) and keeping the reduction to a
        single mod is what makes the stream portable."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n
