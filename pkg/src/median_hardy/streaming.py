"""Incremental per-prefix statistics over a nonnegative stream.

After each push the stream exposes, for the current prefix x_1..x_i:

* the mean a_i,
* the lower median m_i (rank ceil(i/2) from below, i.e. the lower of the
  two middle values when i is even), and
* the top-half sum T_i, the sum of the floor(i/2) largest prefix values.

A single dual-heap partition serves all three: ``low`` holds the
ceil(i/2) smallest values as a max-heap, ``high`` the floor(i/2) largest
as a min-heap.  The lower median is then max(low) and T_i the maintained
sum of ``high``; each push costs O(log i) comparisons.

The quantity T_i/i dominates |m_i - a_i| for every prefix; that pointwise
bound is what the sequence-level verifiers in `discrete` build on.

Equal values may land on either side of the partition.  Every exposed
statistic depends only on the value multiset, so tie placement is
unobservable.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .core import DomainError, Scalar


@dataclass(frozen=True)
class PrefixStats:
    """Statistics of one prefix x_1..x_i."""

    i: int
    mean: Scalar
    lower_median: Scalar
    top_half_sum: Scalar


class PrefixStream:
    """Single-owner mutable stream state.

    Safe to move between threads, not to mutate concurrently.  Integer
    inputs are promoted to Fraction so their means stay exact; float and
    Fraction inputs keep their type.  In float mode the running mean is
    computed from a plain running total (never from heap-side sums, whose
    rebalancing subtractions would accumulate cancellation noise).
    """

    def __init__(self):
        self._low: list = []   # negated values: max-heap of the smallest ceil(i/2)
        self._high: list = []  # min-heap of the largest floor(i/2)
        self._high_sum: Scalar = 0
        self._total: Scalar = 0
        self._history: list[PrefixStats] = []

    def __len__(self) -> int:
        return len(self._low) + len(self._high)

    def push(self, x: Scalar) -> PrefixStats:
        if isinstance(x, bool) or not isinstance(x, (int, float, Fraction)):
            raise DomainError(f"stream values must be numbers, got {x!r}")
        if x < 0:
            raise DomainError(f"stream values must be nonnegative, got {x}")
        if isinstance(x, int):
            x = Fraction(x)

        self._total = self._total + x
        low, high = self._low, self._high
        if not low or x <= -low[0]:
            heapq.heappush(low, -x)
        else:
            heapq.heappush(high, x)
            self._high_sum += x

        # restore |low| = ceil(i/2), |high| = floor(i/2)
        if len(low) > len(high) + 1:
            moved = -heapq.heappop(low)
            heapq.heappush(high, moved)
            self._high_sum += moved
        elif len(high) > len(low):
            moved = heapq.heappop(high)
            self._high_sum -= moved
            heapq.heappush(low, -moved)

        i = len(self)
        stats = PrefixStats(
            i=i,
            mean=self._total / i,
            lower_median=-low[0],
            top_half_sum=self._high_sum if high else self._total * 0,
        )
        self._history.append(stats)
        return stats

    def finish(self) -> list[PrefixStats]:
        """Full per-prefix history in push order."""
        return list(self._history)


def prefix_stats(values) -> list[PrefixStats]:
    """Stream `values` through a fresh PrefixStream and return the history."""
    stream = PrefixStream()
    for v in values:
        stream.push(v)
    return stream.finish()
