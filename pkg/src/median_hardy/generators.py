"""Seeded random inputs for the verification suites.

Values come from a mixture tuned to stress the median/mean gap: about 40%
exact zeros (half-zero inputs are where the inequality is tightest, as
the extremal family shows), the rest split between uniform [0,1] and a
heavy tail u^(-1/4) - 1.  In exact mode everything is quantized to small
denominators so the exact backend stays fast.

Each case derives its own generator as seed XOR case-index, so results do
not depend on how cases are distributed over workers.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import DomainError
from .stepfn import StepFunction

_MASK64 = (1 << 64) - 1


def rng_for_case(seed: int, index: int) -> random.Random:
    """Deterministic per-case RNG, independent of scheduling order."""
    return random.Random((seed ^ index) & _MASK64)


def mixture_value(rng: random.Random, exact: bool):
    """One draw from the zero/uniform/heavy-tail mixture."""
    u = rng.random()
    if u < 0.4:
        return Fraction(0) if exact else 0.0
    if u < 0.7:
        v = rng.random()
    else:
        v = (1.0 - rng.random()) ** -0.25 - 1.0
    return Fraction(round(v * 64), 64) if exact else v


def random_sequence(rng: random.Random, max_n: int, exact: bool) -> list:
    """Random nonnegative sequence of length 1..max_n."""
    if max_n < 1:
        raise DomainError(f"max_n must be >= 1, got {max_n}")
    n = rng.randint(1, max_n)
    return [mixture_value(rng, exact) for _ in range(n)]


def random_rational_sequence(rng: random.Random, max_n: int, hi: int = 10) -> list:
    """Uniform rationals in [0, hi] with denominator 64 (oracle-equivalence
    suites; the whole range matters more than the mixture shape here)."""
    n = rng.randint(1, max_n)
    return [Fraction(rng.randint(0, hi * 64), 64) for _ in range(n)]


def random_step_function(rng: random.Random, max_segments: int, exact: bool) -> StepFunction:
    """Random step function with 1..max_segments segments, lengths in
    [1/8, 2] (eighths), mixture values."""
    if max_segments < 1:
        raise DomainError(f"max_segments must be >= 1, got {max_segments}")
    n = rng.randint(1, max_segments)
    pairs = []
    for _ in range(n):
        length = Fraction(rng.randint(1, 16), 8)
        pairs.append((length if exact else float(length), mixture_value(rng, exact)))
    return StepFunction.from_pairs(pairs)


def random_sample_times(rng: random.Random, count: int, horizon) -> list:
    """Positive rational sample points up to `horizon` (for pointwise checks)."""
    hi = max(1, int(horizon * 16))
    return [Fraction(rng.randint(1, hi), 16) for _ in range(count)]
