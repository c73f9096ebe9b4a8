"""Extremal families and convergence of the deviation ratio to the sharp
constant.

The zero-interleaved inputs (0, 1, 0, 2^(-1/p), 0, 3^(-1/p), ...) and
their continuous counterpart keep the running lower median pinned at 0
while the positive blocks drive the mean toward extremal Hardy behavior;
their deviation-to-input ratio climbs toward 2^(1-p) (p/(p-1))^p, but
only logarithmically in the block count N, so experiments report the
finite-N trend and an extrapolated limit rather than the limit itself.

Large-N float sums of k^(-1/p) terms lose digits under naive
accumulation, so every running sum here is Neumaier-compensated.  The
O(N) fast path for the discrete family performs, value for value, the
same float operations as pushing the generated sequence through a
PrefixStream, so the two agree bit for bit (a tested invariant).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DomainError, as_exponent, safe_ratio, sharp_constant
from .stepfn import StepFunction
from .streaming import PrefixStream


class NeumaierSum:
    """Compensated accumulator: tracks the rounding error of each add."""

    __slots__ = ("_s", "_c")

    def __init__(self):
        self._s = 0.0
        self._c = 0.0

    def add(self, x: float) -> None:
        s = self._s + x
        if abs(self._s) >= abs(x):
            self._c += (self._s - s) + x
        else:
            self._c += (x - s) + self._s
        self._s = s

    @property
    def value(self) -> float:
        return self._s + self._c


def block_value(k: int, p) -> float:
    """The k-th positive block height k^(-1/p)."""
    return k ** (-1.0 / as_exponent(p).as_float())


def gen_discrete_extremal(n_blocks: int, p) -> list[float]:
    """[0, 1, 0, 2^(-1/p), ..., 0, N^(-1/p)], length 2N."""
    if not isinstance(n_blocks, int) or isinstance(n_blocks, bool) or n_blocks < 1:
        raise DomainError(f"need an integer N >= 1, got {n_blocks!r}")
    seq = []
    for k in range(1, n_blocks + 1):
        seq.append(0.0)
        seq.append(block_value(k, p))
    return seq


def gen_continuous_extremal(n_blocks: int, p) -> StepFunction:
    """2N unit segments alternating 0 and k^(-1/p); support length 2N."""
    if not isinstance(n_blocks, int) or isinstance(n_blocks, bool) or n_blocks < 1:
        raise DomainError(f"need an integer N >= 1, got {n_blocks!r}")
    pairs = []
    for k in range(1, n_blocks + 1):
        pairs.append((1, 0.0))
        pairs.append((1, block_value(k, p)))
    return StepFunction.from_pairs(pairs)


def partial_power_sum(k: int, p) -> float:
    """S_k = sum_{j<=k} j^(-1/p), fully compensated (math.fsum)."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise DomainError(f"need an integer k >= 0, got {k!r}")
    inv = -1.0 / as_exponent(p).as_float()
    return math.fsum(j ** inv for j in range(1, k + 1))


@dataclass(frozen=True)
class ConvergencePoint:
    n_blocks: int
    lhs: float   # deviation sum / deviation integral
    rhs: float   # sum x_i^p / integral f^p
    ratio: float


def _snapshot(n, lhs_acc, rhs_acc, cap) -> ConvergencePoint:
    lhs, rhs = lhs_acc.value, rhs_acc.value
    ratio = safe_ratio(lhs, rhs)
    if ratio > cap * (1.0 + 1e-9):
        raise AssertionError(
            f"ratio {ratio} exceeds the sharp constant {cap} at N={n}; "
            "this contradicts the proven inequality and indicates a bug")
    return ConvergencePoint(n_blocks=n, lhs=lhs, rhs=rhs, ratio=ratio)


def discrete_ratio_curve(n_grid, p) -> list[ConvergencePoint]:
    """O(max N) evaluation of the discrete family along an increasing grid.

    The lower median of every prefix of the generated sequence is exactly
    0.0 and the means are running-total quotients, so the deviation terms
    are |total/i|^p; these are the identical float operations the
    streaming evaluator performs (see `ratio_point_streaming`).
    """
    grid = _check_grid(n_grid)
    p = as_exponent(p)
    pf = p.as_float()
    cap = float(sharp_constant(p))
    lhs, rhs = NeumaierSum(), NeumaierSum()
    total = 0.0
    i = 0
    out = []
    gi = 0
    for k in range(1, grid[-1] + 1):
        i += 1
        total += 0.0
        lhs.add(math.pow(total / i, pf) if total else 0.0)
        x = block_value(k, p)
        i += 1
        total += x
        lhs.add(math.pow(total / i, pf) if total else 0.0)
        rhs.add(math.pow(x, pf) if x else 0.0)
        if k == grid[gi]:
            out.append(_snapshot(k, lhs, rhs, cap))
            gi += 1
    return out


def ratio_point_streaming(n_blocks: int, p) -> ConvergencePoint:
    """The same convergence point evaluated the slow way: generate the
    sequence, push it through a PrefixStream, and accumulate the deviation
    terms from the streamed medians and means.  Cross-check for the fast
    path; bit-for-bit identical by construction."""
    p = as_exponent(p)
    pf = p.as_float()
    cap = float(sharp_constant(p))
    lhs, rhs = NeumaierSum(), NeumaierSum()
    stream = PrefixStream()
    for x in gen_discrete_extremal(n_blocks, p):
        s = stream.push(x)
        d = abs(s.lower_median - s.mean)
        lhs.add(math.pow(d, pf) if d else 0.0)
        rhs.add(math.pow(x, pf) if x else 0.0)
    return _snapshot(n_blocks, lhs, rhs, cap)


def continuous_lower_bound(n_blocks: int, p) -> float:
    """Closed lower bound for the continuous deviation integral:
    sum_{k=2..N} (S_{k-1}/(2k))^p + sum_{k=1..N-1} (S_k/(2k+1))^p.
    The true integral must dominate it (cross-checked in the curve)."""
    p = as_exponent(p)
    pf = p.as_float()
    acc = NeumaierSum()
    s = 0.0
    for k in range(1, n_blocks + 1):
        if k >= 2:
            acc.add(math.pow(s / (2 * k), pf))       # s == S_{k-1}
        s += block_value(k, p)
        if k <= n_blocks - 1:
            acc.add(math.pow(s / (2 * k + 1), pf))   # s == S_k
    return acc.value


def continuous_ratio_curve(n_grid, p, tol=1e-9) -> list[ConvergencePoint]:
    """Continuous family: true deviation integral (the median function of
    the generator vanishes identically, so it equals int A^p) against
    int f^p, by per-piece quadrature plus the exact tail."""
    from .continuous import _average_power_integral

    grid = _check_grid(n_grid)
    p = as_exponent(p)
    pf = p.as_float()
    cap = float(sharp_constant(p))
    out = []
    for n in grid:
        f = gen_continuous_extremal(n, p)
        lhs = _average_power_integral(f, p, tol)
        bound = continuous_lower_bound(n, p)
        if lhs < bound - 2 * tol - 1e-9 * bound:
            raise AssertionError(
                f"integral {lhs} below its closed lower bound {bound} at N={n}")
        rhs_acc = NeumaierSum()
        for k in range(1, n + 1):
            rhs_acc.add(math.pow(block_value(k, p), pf))
        rhs = rhs_acc.value
        ratio = safe_ratio(lhs, rhs)
        if ratio > cap * (1.0 + 1e-9):
            raise AssertionError(f"ratio {ratio} exceeds {cap} at N={n}")
        out.append(ConvergencePoint(n_blocks=n, lhs=lhs, rhs=rhs, ratio=ratio))
    return out


def ratio_curve(family: str, n_grid, p, tol=1e-9) -> list[ConvergencePoint]:
    """Convergence curve for either extremal family over an increasing N grid."""
    if family == "discrete":
        return discrete_ratio_curve(n_grid, p)
    if family == "continuous":
        return continuous_ratio_curve(n_grid, p, tol)
    raise DomainError(f"family must be 'discrete' or 'continuous', got {family!r}")


def _check_grid(n_grid) -> list[int]:
    grid = list(n_grid)
    if not grid:
        raise DomainError("N grid must be nonempty")
    for n in grid:
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise DomainError(f"N grid entries must be integers >= 1, got {n!r}")
    if any(a >= b for a, b in zip(grid, grid[1:])):
        raise DomainError("N grid must be strictly increasing")
    return grid


@dataclass(frozen=True)
class LimitFit:
    """Least-squares fit ratio(N) ~ c_inf - c1 / ln N over the largest Ns."""

    c_inf: float
    slope: float       # the fitted -c1
    residual: float    # sum of squared fit errors
    points_used: int


def extrapolate_limit(curve) -> LimitFit:
    """Estimate the N -> inf ratio limit from a convergence curve.

    Fits ratio ~ c_inf + slope * (1/ln N) on the largest half of the
    points (at least 3); convergence is logarithmic, so the 1/ln N
    regressor linearizes the approach."""
    pts = sorted(curve, key=lambda c: c.n_blocks)
    if len(pts) < 3:
        raise DomainError(f"need at least 3 points to extrapolate, got {len(pts)}")
    used = pts[-max(3, (len(pts) + 1) // 2):]
    if used[0].n_blocks < 2:
        used = [c for c in pts if c.n_blocks >= 2][-3:]
        if len(used) < 3:
            raise DomainError("need at least 3 points with N >= 2")
    xs = [1.0 / math.log(c.n_blocks) for c in used]
    ys = [c.ratio for c in used]
    n = len(xs)
    sx, sy = math.fsum(xs), math.fsum(ys)
    sxx = math.fsum(x * x for x in xs)
    sxy = math.fsum(x * y for x, y in zip(xs, ys))
    denom = n * sxx - sx * sx
    if denom == 0:
        raise DomainError("degenerate grid: cannot fit")
    slope = (n * sxy - sx * sy) / denom
    c_inf = (sy - slope * sx) / n
    residual = math.fsum((y - (c_inf + slope * x)) ** 2 for x, y in zip(xs, ys))
    return LimitFit(c_inf=c_inf, slope=slope, residual=residual, points_used=n)
