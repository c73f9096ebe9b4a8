"""Step-function calculus on (0, inf).

The continuous input class is the finitely supported nonnegative step
function: a list of (length, value) segments laid end to end from 0, with
implicit value 0 beyond the last segment.  Everything downstream is exact
for rational data:

* the cumulative integral F(t) and running average A(t) = F(t)/t are
  piecewise linear / piecewise (alpha + beta*t)/t;
* the running lower median M(t) = inf{a : meas{s in (0,t): f(s) <= a} >= t/2}
  is piecewise constant, computed by an event scan (for each candidate
  level the half-measure condition is linear in t, so every point where M
  can change is the root of a linear equation);
* the decreasing rearrangement f* reorders segment values, preserving
  lengths and every integral of a function of f.

M can genuinely dip to a smaller value at isolated points where a
half-measure condition holds with equality on both sides (e.g. f = 1 on
(0,1), 0 on (1,2), 2 on (2,3) at t = 2).  The piecewise representation is
right-continuous and cannot carry isolated points; `median_at_oracle`
evaluates the true definition at any single t, and the verifiers check
sample points through the oracle as well as through both one-sided values
of the representation.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .core import DomainError, Scalar


def _coerce(x) -> Scalar:
    if isinstance(x, bool) or not isinstance(x, (int, float, Fraction)):
        raise DomainError(f"expected a number, got {x!r}")
    return Fraction(x) if isinstance(x, int) else x


@dataclass(frozen=True)
class Segment:
    length: Scalar
    value: Scalar


class StepFunction:
    """Canonical finitely supported step function.

    Canonical form: positive lengths, nonnegative values, adjacent equal
    values merged, trailing zero-value segments dropped (they are
    indistinguishable from the implicit tail).  The zero function is the
    empty segment list.
    """

    __slots__ = ("segments", "_bps", "_cums", "_vals")

    def __init__(self, segments):
        merged: list[Segment] = []
        for seg in segments:
            if isinstance(seg, (tuple, list)):
                seg = Segment(*seg)
            length, value = _coerce(seg.length), _coerce(seg.value)
            if length <= 0:
                raise DomainError(f"segment lengths must be positive, got {length}")
            if value < 0:
                raise DomainError(f"segment values must be nonnegative, got {value}")
            if merged and merged[-1].value == value:
                merged[-1] = Segment(merged[-1].length + length, value)
            else:
                merged.append(Segment(length, value))
        while merged and merged[-1].value == 0:
            merged.pop()
        self.segments = tuple(merged)
        bps = [Fraction(0)]
        cums = [Fraction(0)]
        for seg in merged:
            bps.append(bps[-1] + seg.length)
            cums.append(cums[-1] + seg.length * seg.value)
        self._bps = bps
        self._cums = cums
        self._vals = [seg.value for seg in merged]

    @classmethod
    def from_pairs(cls, pairs) -> "StepFunction":
        return cls([Segment(ln, v) for ln, v in pairs])

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls([])

    def __eq__(self, other):
        return isinstance(other, StepFunction) and self.segments == other.segments

    def __hash__(self):
        return hash(self.segments)

    def __repr__(self):
        body = ", ".join(f"({s.length}, {s.value})" for s in self.segments)
        return f"StepFunction([{body}])"

    @property
    def is_zero(self) -> bool:
        return not self.segments

    @property
    def total_length(self) -> Scalar:
        """Length of the explicit support (last breakpoint)."""
        return self._bps[-1]

    @property
    def breakpoints(self) -> list:
        """Segment boundaries including 0 and the support end."""
        return list(self._bps)

    @property
    def total_integral(self) -> Scalar:
        return self._cums[-1]

    @property
    def positive_measure(self) -> Scalar:
        """meas{f > 0}."""
        return sum((s.length for s in self.segments if s.value > 0), Fraction(0))

    def value_at(self, t) -> Scalar:
        """f(t) with segments half-open [b_k, b_{k+1}); 0 beyond support."""
        if t <= 0:
            raise DomainError(f"step functions live on (0, inf), got t={t}")
        j = bisect_right(self._bps, t) - 1
        if j >= len(self._vals):
            return Fraction(0)
        return self._vals[j]

    def cumulative(self, t) -> Scalar:
        """F(t) = integral of f over (0, t); continuous, saturating at the
        total integral for t beyond the support."""
        if t < 0:
            raise DomainError(f"cumulative requires t >= 0, got {t}")
        if t >= self._bps[-1]:
            return self.total_integral
        j = bisect_right(self._bps, t) - 1
        return self._cums[j] + (t - self._bps[j]) * self._vals[j]

    def power_integral(self, powf) -> Scalar:
        """integral of powf(f) over the support, exact segment sum."""
        return sum((seg.length * powf(seg.value) for seg in self.segments), Fraction(0))


def average_at(f: StepFunction, t) -> Scalar:
    """A(t) = F(t)/t, the running average; exact for rational data."""
    if t <= 0:
        raise DomainError(f"average requires t > 0, got {t}")
    return f.cumulative(t) / t


@dataclass(frozen=True)
class AveragePiece:
    """On [t0, t1), A(t) = (alpha + beta*t)/t; the final piece has
    t1 = None and extends to infinity with beta = 0."""

    t0: Scalar
    t1: Scalar | None
    alpha: Scalar
    beta: Scalar


class PiecewiseAverage:
    """The running average A(t) of a step function, piece by piece."""

    def __init__(self, f: StepFunction):
        self.pieces: list[AveragePiece] = []
        bps = f.breakpoints
        for j, seg in enumerate(f.segments):
            alpha = f._cums[j] - seg.value * bps[j]
            self.pieces.append(AveragePiece(bps[j], bps[j + 1], alpha, seg.value))
        self.pieces.append(AveragePiece(bps[-1], None, f.total_integral, Fraction(0)))

    def at(self, t) -> Scalar:
        if t <= 0:
            raise DomainError(f"average requires t > 0, got {t}")
        for piece in self.pieces:
            if piece.t1 is None or t < piece.t1:
                return (piece.alpha + piece.beta * t) / t
        raise AssertionError("unreachable")


class PiecewiseConstant:
    """Right-continuous piecewise-constant function on (0, inf).

    values[k] holds on [breakpoints[k], breakpoints[k+1]); the last value
    extends to infinity.  breakpoints[0] is always 0.
    """

    def __init__(self, breakpoints, values):
        if len(breakpoints) != len(values) or not breakpoints:
            raise DomainError("breakpoints and values must align and be nonempty")
        if breakpoints[0] != 0:
            raise DomainError("breakpoints must start at 0")
        if any(not a < b for a, b in zip(breakpoints, breakpoints[1:])):
            raise DomainError("breakpoints must be strictly increasing")
        self.breakpoints = list(breakpoints)
        self.values = list(values)

    def __repr__(self):
        pairs = ", ".join(f"{b}: {v}" for b, v in zip(self.breakpoints, self.values))
        return f"PiecewiseConstant({{{pairs}}})"

    def value_at(self, t) -> Scalar:
        """Right-continuous value at t > 0."""
        if t <= 0:
            raise DomainError(f"defined on (0, inf), got t={t}")
        return self.values[bisect_right(self.breakpoints, t) - 1]

    def value_left(self, t) -> Scalar:
        """Left limit at t > 0 (differs from value_at only at breakpoints)."""
        if t <= 0:
            raise DomainError(f"defined on (0, inf), got t={t}")
        j = bisect_right(self.breakpoints, t) - 1
        if j > 0 and self.breakpoints[j] == t:
            j -= 1
        return self.values[j]


def median_at_oracle(f: StepFunction, t) -> Scalar:
    """The lower median of f on (0, t) straight from the definition.

    Clips the segments to (0, t), appends the implicit zero tail, sorts
    the pieces by value and accumulates measure until it reaches t/2.
    Single-point ground truth for `lower_median_fn`.
    """
    t = _coerce(t)
    if t <= 0:
        raise DomainError(f"median requires t > 0, got {t}")
    pieces = []
    remaining = t
    for seg in f.segments:
        if remaining <= 0:
            break
        take = seg.length if seg.length <= remaining else remaining
        pieces.append((seg.value, take))
        remaining -= take
    if remaining > 0:
        pieces.append((Fraction(0), remaining))
    pieces.sort(key=lambda pv: pv[0])
    half = t / 2
    acc = t - t  # zero of t's type
    for value, length in pieces:
        acc += length
        if acc >= half:
            return value
    raise AssertionError("accumulated measure t cannot be below t/2")


def _half_measure_roots(f: StepFunction, level) -> list:
    """All t > 0 where meas{s in (0,t): f(s) <= level} equals t/2.

    The measure is piecewise linear in t with slopes 0/1, so each linear
    piece contributes at most one root.
    """
    roots = []
    bps = f.breakpoints
    acc = Fraction(0)
    for j, seg in enumerate(f.segments):
        t0, t1 = bps[j], bps[j + 1]
        if seg.value <= level:
            root = 2 * (t0 - acc)  # acc + (t - t0) = t/2
            acc += seg.length
        else:
            root = 2 * acc  # acc = t/2
        if t0 <= root <= t1 and root > 0:
            roots.append(root)
    root = 2 * (bps[-1] - acc)  # zero tail: slope 1 for every level >= 0
    if root >= bps[-1] and root > 0:
        roots.append(root)
    return roots


def lower_median_fn(f: StepFunction) -> PiecewiseConstant:
    """The running lower median M(t) as a right-continuous piecewise
    representation.

    Event scan: M can only change at a segment boundary or where some
    candidate level's half-measure condition crosses t/2.  Between
    consecutive events M is constant, so evaluating the defining oracle at
    interval midpoints recovers it exactly (for rational data).
    """
    if f.is_zero:
        return PiecewiseConstant([Fraction(0)], [Fraction(0)])
    levels = sorted({seg.value for seg in f.segments} | {Fraction(0)})
    events = {bp for bp in f.breakpoints if bp > 0}
    events.add(2 * f.positive_measure)
    for level in levels:
        events.update(_half_measure_roots(f, level))
    events = sorted(events)

    breakpoints = [Fraction(0)]
    values = [median_at_oracle(f, events[0] / 2)]
    for j, e in enumerate(events):
        probe = (e + events[j + 1]) / 2 if j + 1 < len(events) else e + 1
        v = median_at_oracle(f, probe)
        if v != values[-1]:
            breakpoints.append(e)
            values.append(v)
    return PiecewiseConstant(breakpoints, values)


def decreasing_rearrangement_fn(f: StepFunction) -> StepFunction:
    """f*: same lengths, values sorted nonincreasing."""
    segs = sorted(f.segments, key=lambda s: s.value, reverse=True)
    return StepFunction(segs)


def rearranged_prefix_integral(f: StepFunction, r) -> Scalar:
    """integral of f* over (0, r): the largest possible integral of f over
    any set of measure r."""
    if r < 0:
        raise DomainError(f"measure must be nonnegative, got {r}")
    return decreasing_rearrangement_fn(f).cumulative(r)
