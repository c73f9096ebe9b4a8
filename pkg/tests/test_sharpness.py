"""Extremal families, partial-sum asymptotics, and convergence curves."""

import math

import pytest

from median_hardy.core import DomainError, sharp_constant
from median_hardy.sharpness import (
    ConvergencePoint,
    continuous_lower_bound,
    continuous_ratio_curve,
    discrete_ratio_curve,
    extrapolate_limit,
    gen_continuous_extremal,
    gen_discrete_extremal,
    partial_power_sum,
    ratio_curve,
    ratio_point_streaming,
)
from median_hardy.stepfn import StepFunction, lower_median_fn

# independent direct-summation oracle (math.fsum over full term lists)
ORACLE_P2 = {
    10: 0.674928093,
    100: 1.045944515,
    1000: 1.288026345,
    10 ** 4: 1.442775718,
}
S_100_P2 = 18.589603824784152


def test_gen_discrete_extremal():
    assert gen_discrete_extremal(1, 2) == [0.0, 1.0]
    assert gen_discrete_extremal(2, 2) == [0.0, 1.0, 0.0, 2 ** -0.5]
    seq = gen_discrete_extremal(200, 3)
    assert len(seq) == 400
    power_sum = math.fsum(v ** 3 for v in seq)
    harmonic = math.fsum(1.0 / k for k in range(1, 201))
    assert power_sum == pytest.approx(harmonic, rel=1e-12)
    with pytest.raises(DomainError):
        gen_discrete_extremal(0, 2)


def test_gen_continuous_extremal():
    f1 = gen_continuous_extremal(1, 2)
    assert f1 == StepFunction.from_pairs([(1, 0), (1, 1)])
    f = gen_continuous_extremal(40, 2)
    assert f.total_length == 80
    norm = math.fsum(float(s.length) * s.value ** 2 for s in f.segments)
    assert norm == pytest.approx(math.fsum(1.0 / k for k in range(1, 41)), rel=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 12])
def test_extremal_median_vanishes(n):
    for p in (1.5, 2, 3):
        m = lower_median_fn(gen_continuous_extremal(n, p))
        assert m.breakpoints == [0] and m.values == [0]


def test_partial_sums():
    assert partial_power_sum(0, 2) == 0.0
    assert partial_power_sum(1, 2) == 1.0
    assert partial_power_sum(100, 2) == pytest.approx(S_100_P2, rel=1e-14)
    assert partial_power_sum(100, 2) / (2 * math.sqrt(100)) == pytest.approx(0.92948, abs=1e-5)
    with pytest.raises(DomainError):
        partial_power_sum(-1, 2)


def test_partial_sum_asymptotics_monotone_approach():
    # S_k / ((p/(p-1)) k^(1-1/p)) -> 1 from below
    r3 = partial_power_sum(10 ** 3, 2) / (2 * math.sqrt(10 ** 3))
    r5 = partial_power_sum(10 ** 5, 2) / (2 * math.sqrt(10 ** 5))
    assert r3 < 1 and r5 < 1 and r5 > r3


def test_discrete_curve_n1_hand_value():
    pt = discrete_ratio_curve([1], 2)[0]
    # a_1 = 0, a_2 = 1/2: lhs = 1/4 exactly in floats; rhs = 1
    assert pt.lhs == 0.25 and pt.rhs == 1.0 and pt.ratio == 0.25


def test_discrete_curve_n2_hand_value():
    pt = discrete_ratio_curve([2], 2)[0]
    s2 = 1 + 2 ** -0.5
    lhs = 0.25 + 1.0 / 9.0 + (s2 / 4) ** 2
    assert pt.lhs == pytest.approx(lhs, rel=1e-12)
    assert pt.rhs == pytest.approx(1.5, rel=1e-12)
    assert pt.ratio == pytest.approx(lhs / 1.5, rel=1e-12)


def test_discrete_curve_matches_direct_summation_oracle():
    grid = sorted(ORACLE_P2)
    for pt in discrete_ratio_curve(grid, 2):
        assert pt.ratio == pytest.approx(ORACLE_P2[pt.n_blocks], abs=1e-8)


@pytest.mark.parametrize("p", [1.5, 2, 3])
def test_fast_path_equals_streaming_path_bitwise(p):
    for n in (1, 2, 5, 17, 128, 1000):
        fast = discrete_ratio_curve([n], p)[0]
        slow = ratio_point_streaming(n, p)
        assert (fast.lhs, fast.rhs, fast.ratio) == (slow.lhs, slow.rhs, slow.ratio)


@pytest.mark.parametrize("p", [1.5, 2, 3])
def test_grid_monotone_and_capped(p):
    grid = [10, 100, 1000, 10 ** 4]
    pts = discrete_ratio_curve(grid, p)
    cap = float(sharp_constant(p))
    assert all(c.ratio <= cap for c in pts)
    assert all(a.ratio < b.ratio for a, b in zip(pts, pts[1:]))


def test_continuous_curve_values_and_bound():
    pts = continuous_ratio_curve([1, 2, 5, 50], 2)
    # closed-form oracle: per-piece antiderivative of (F/t)^2 (mpmath run)
    oracle = {1: 0.61370563888, 2: 0.771668873358, 5: 0.962019821073, 50: 1.30214194463}
    for pt in pts:
        assert pt.ratio == pytest.approx(oracle[pt.n_blocks], rel=1e-7)
        assert pt.lhs >= continuous_lower_bound(pt.n_blocks, 2)
    assert all(a.ratio < b.ratio for a, b in zip(pts, pts[1:]))


def test_ratio_curve_dispatch_and_grid_validation():
    assert ratio_curve("discrete", [1, 2], 2)[1].n_blocks == 2
    with pytest.raises(DomainError):
        ratio_curve("fancy", [1], 2)
    with pytest.raises(DomainError):
        ratio_curve("discrete", [2, 2], 2)
    with pytest.raises(DomainError):
        ratio_curve("discrete", [], 2)


def test_extrapolate_constant_curve():
    pts = [ConvergencePoint(n, 1.0, 1.0, 1.0) for n in (10, 100, 1000, 10000)]
    fit = extrapolate_limit(pts)
    assert fit.c_inf == pytest.approx(1.0, abs=1e-12)
    assert fit.residual == pytest.approx(0.0, abs=1e-20)


def test_extrapolate_recovers_exact_log_model():
    c_inf, c1 = 2.0, 5.0
    pts = [ConvergencePoint(n, 0.0, 1.0, c_inf - c1 / math.log(n))
           for n in (10, 100, 1000, 10 ** 4, 10 ** 5)]
    fit = extrapolate_limit(pts)
    assert fit.c_inf == pytest.approx(c_inf, abs=1e-10)
    assert fit.slope == pytest.approx(-c1, abs=1e-9)


def test_extrapolate_needs_three_points():
    pts = [ConvergencePoint(10, 1, 1, 1.0), ConvergencePoint(100, 1, 1, 1.1)]
    with pytest.raises(DomainError):
        extrapolate_limit(pts)


def test_discrete_extremal_medians_vanish_at_scale():
    from median_hardy.streaming import prefix_stats

    for p in (1.5, 2, 3):
        seq = gen_discrete_extremal(300, p)
        assert all(s.lower_median == 0.0 for s in prefix_stats(seq))
