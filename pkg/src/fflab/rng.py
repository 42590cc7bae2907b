"""Portable 64-bit PRNG: xorshift64* seeded through splitmix64.

The stream depends only on the integer seed, so search trials can be replayed
in any language:

    seeding   z = seed + 0x9E3779B97F4A7C15 (mod 2^64)
              z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
              z = (z ^ (z >> 27)) * 0x94D049BB133111EB
              state = z ^ (z >> 31), replaced by 1 if zero
    step      x ^= x >> 12; x ^= x << 25; x ^= x >> 27  (all mod 2^64)
    output    x * 0x2545F4914F6CDD1D (mod 2^64)

randrange(n) draws 64-bit outputs and rejects values >= n * floor(2^64 / n).
"""

from __future__ import annotations

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
STAR = 0x2545F4914F6CDD1D


def splitmix64(seed: int) -> int:
    z = (seed + GOLDEN) & MASK
    z = ((z ^ (z >> 30)) * MIX1) & MASK
    z = ((z ^ (z >> 27)) * MIX2) & MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * STAR) & MASK

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        limit = ((1 << 64) // n) * n
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def randint(self, a: int, b: int) -> int:
        return a + self.randrange(b - a + 1)

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, seq: list) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.randrange(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def sample(self, seq, k: int) -> list:
        pool = list(seq)
        if k > len(pool):
            raise ValueError("sample larger than population")
        for i in range(k):
            j = i + self.randrange(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def trial_rng(seed: int, index: int) -> XorShift64Star:
    """Generator for trial ``index`` of a search seeded with ``seed``."""
    return XorShift64Star(seed + index)
