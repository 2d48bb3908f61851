"""Reproducible random presentations.

The generator is a plain 64-bit linear congruential generator so that other
implementations can reproduce the exact same sweep rows:

    state_0     = seed mod 2**64
    state_{k+1} = (6364136223846793005 * state_k + 1442695040888963407) mod 2**64

A random subset of [n] (n <= 32) is the top n bits of the next state read as
a bitmask (bit b <-> element b + 1); the all-zero mask is rejected and
redrawn, which makes every nonempty subset equally likely. A presentation
draws A_1, ..., A_n in that order.
"""

from __future__ import annotations

from .presentation import Presentation

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK64 = (1 << 64) - 1


class Lcg64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (MULTIPLIER * self.state + INCREMENT) & MASK64
        return self.state

    def nonempty_subset(self, n: int) -> int:
        if not 1 <= n <= 32:
            raise ValueError("subset draws support 1 <= n <= 32")
        while True:
            mask = self.next() >> (64 - n)
            if mask:
                return mask


def random_presentation(n: int, rng: Lcg64) -> Presentation:
    return Presentation(n, tuple(rng.nonempty_subset(n) for _ in range(n)))
