"""SplitMix64 pseudo-random stream shared by every randomized component.

All tie-breaking, shuffles and evolutionary operators draw from this
generator so that a given seed yields the same orderings on any platform.
Uniform indices are taken as ``value % k``; the modulo bias is negligible
for the small candidate counts involved.
"""

from __future__ import annotations

from typing import MutableSequence

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def next_random(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state by one step.

    Returns ``(value, new_state)``.
    """
    state = (state + GOLDEN_GAMMA) & MASK64
    return mix64(state), state


def derive_seed(base: int, *keys: int) -> int:
    """Derive an independent stream seed from a base seed and integer keys.

    Used to give every (technique, run) pair its own stream.
    """
    state = base & MASK64
    for key in keys:
        state = mix64((state + (key + 1) * GOLDEN_GAMMA) & MASK64)
    return state


class SplitMix64:
    """Stateful wrapper around :func:`next_random`."""

    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def next(self) -> int:
        value, self.state = next_random(self.state)
        return value

    def below(self, k: int) -> int:
        """Uniform index in ``range(k)``."""
        if k <= 0:
            raise ValueError(f"k must be positive, got {k}")
        return self.next() % k

    def random(self) -> float:
        """Uniform float in [0, 1) built from the top 53 bits."""
        return (self.next() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: MutableSequence) -> None:
        """In-place Fisher-Yates shuffle, last position first."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, n: int) -> list[int]:
        seq = list(range(n))
        self.shuffle(seq)
        return seq
