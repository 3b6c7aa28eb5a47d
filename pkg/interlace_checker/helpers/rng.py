"""
SplitMix64, the generator behind every seeded instance.

The algorithm is fixed so that any language reproduces the same instances
from the same seed:

    state = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output z ^ (z >> 31)

randint(lo, hi) draws with rejection: with span = hi - lo + 1 it rejects
outputs >= 2^64 - (2^64 mod span) and returns lo + output mod span.
"""
from fractions import Fraction

MASK_64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed=0):
        self.state = seed & MASK_64

    def next_u64(self):
        self.state = (self.state + GOLDEN_GAMMA) & MASK_64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK_64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK_64
        return z ^ (z >> 31)

    def randint(self, lo, hi):
        """Uniform integer in [lo, hi]."""
        if hi < lo:
            raise ValueError(f'Empty range [{lo}, {hi}]')
        span = hi - lo + 1
        limit = (1 << 64) - (1 << 64) % span
        while True:
            value = self.next_u64()
            if value < limit:
                return lo + value % span

    def rational(self, bound):
        """Numerator and denominator uniform in [-bound, bound], denominator nonzero."""
        numerator = self.randint(-bound, bound)
        denominator = 0
        while denominator == 0:
            denominator = self.randint(-bound, bound)
        return Fraction(numerator, denominator)


def derive_seed(seed, index):
    """Per-trial seed: first output of the generator seeded with seed XOR index."""
    return SplitMix64((seed ^ index) & MASK_64).next_u64()
