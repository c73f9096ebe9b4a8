"""Step-function calculus and the continuous verifiers."""

import math
from fractions import Fraction

import pytest

from median_hardy.core import DomainError, pow_p, sharp_constant
from median_hardy.continuous import (
    deviation_integral,
    verify_median_rearrangement_bound,
    run_stepfn_checks,
    substitution_identity_check,
    verify_hardy_continuous,
    verify_median_hardy_continuous,
)
from median_hardy.generators import random_step_function, rng_for_case
from median_hardy.sharpness import gen_continuous_extremal
from median_hardy.stepfn import (
    StepFunction,
    average_at,
    decreasing_rearrangement_fn,
    lower_median_fn,
    median_at_oracle,
    rearranged_prefix_integral,
)

F1 = StepFunction.from_pairs([(1, 0), (1, 1)])
# closed forms: int_1^2 (1 - 1/t)^p dt + int_2^inf t^-p dt
F1_DEV_P2 = 2 - 2 * math.log(2)            # antiderivative t - 2 ln t - 1/t
F1_DEV_P3 = 2.125 - 3 * math.log(2) + 0.125


# ---------------------------------------------------------------------------
# representation

def test_canonicalization():
    f = StepFunction.from_pairs([(1, 2), (2, 2), (1, 0), (3, 0)])
    assert len(f.segments) == 1
    assert f.segments[0].length == 3 and f.segments[0].value == 2
    assert StepFunction.from_pairs([(5, 0)]).is_zero
    with pytest.raises(DomainError):
        StepFunction.from_pairs([(0, 1)])
    with pytest.raises(DomainError):
        StepFunction.from_pairs([(1, -1)])


def test_average_at():
    box = StepFunction.from_pairs([(1, 1)])
    assert average_at(box, Fraction(1, 2)) == 1
    assert average_at(box, 2) == Fraction(1, 2)
    assert average_at(F1, 3) == Fraction(1, 3)
    assert average_at(StepFunction.zero(), 5) == 0
    with pytest.raises(DomainError):
        average_at(box, 0)


# ---------------------------------------------------------------------------
# lower median

def test_lower_median_of_f1_vanishes():
    m = lower_median_fn(F1)
    assert m.breakpoints == [0] and m.values == [0]


def test_lower_median_of_constant_function():
    # c on (0, L): the zero tail reaches half measure at t = 2L
    c, L = Fraction(5, 2), Fraction(3)
    m = lower_median_fn(StepFunction.from_pairs([(L, c)]))
    assert m.breakpoints == [0, 2 * L]
    assert m.values == [c, 0]
    assert m.value_at(2 * L) == 0 and m.value_left(2 * L) == c


def test_lower_median_of_zero_function():
    m = lower_median_fn(StepFunction.zero())
    assert m.value_at(Fraction(7, 3)) == 0


def test_median_oracle_examples():
    assert median_at_oracle(F1, Fraction(3, 2)) == 0
    assert median_at_oracle(StepFunction.from_pairs([(1, 1)]), 1) == 1
    with pytest.raises(DomainError):
        median_at_oracle(F1, 0)


def test_median_isolated_dip():
    # half measure attained exactly at t=2 from both sides: M(2) = 0 while
    # M = 1 on a neighborhood minus {2}; the representation stays 1 there
    h = StepFunction.from_pairs([(1, 1), (1, 0), (1, 2)])
    m = lower_median_fn(h)
    assert median_at_oracle(h, 2) == 0
    assert m.value_at(2) == 1 and m.value_left(2) == 1
    assert median_at_oracle(h, Fraction(199, 100)) == 1
    assert median_at_oracle(h, Fraction(201, 100)) == 1
    # and the pointwise bound still holds through the dip
    assert verify_median_rearrangement_bound(h, [2, Fraction(199, 100), Fraction(201, 100)]).holds


def test_median_fn_matches_oracle_everywhere():
    for idx in range(50):
        rng = rng_for_case(7, idx)
        f = random_step_function(rng, 12, exact=True)
        m = lower_median_fn(f)
        bps = m.breakpoints
        gaps = [b - a for a, b in zip(bps, bps[1:])] or [Fraction(1)]
        delta = min(gaps) / 16
        # piece interiors agree with the pointwise definition
        probes = [a + (b - a) / 3 for a, b in zip(bps, bps[1:])] + [bps[-1] + 1]
        for t in probes:
            assert m.value_at(t) == median_at_oracle(f, t)
        # one-sided limits at breakpoints
        for b in bps[1:]:
            assert m.value_left(b) == median_at_oracle(f, b - delta)
            assert m.value_at(b) == median_at_oracle(f, b + delta)


# ---------------------------------------------------------------------------
# rearrangement

def test_rearrangement_fn():
    star = decreasing_rearrangement_fn(F1)
    assert star == StepFunction.from_pairs([(1, 1)])
    assert decreasing_rearrangement_fn(star) == star  # idempotent
    f = StepFunction.from_pairs([(2, Fraction(1, 2)), (1, 3), (1, Fraction(1, 2))])
    star = decreasing_rearrangement_fn(f)
    vals = [s.value for s in star.segments]
    assert vals == sorted(vals, reverse=True)
    for p in (2, 3):
        assert (star.power_integral(lambda v: pow_p(v, p))
                == f.power_integral(lambda v: pow_p(v, p)))


def test_rearranged_prefix_integral():
    assert rearranged_prefix_integral(F1, Fraction(1, 2)) == Fraction(1, 2)
    assert rearranged_prefix_integral(F1, 0) == 0
    assert rearranged_prefix_integral(F1, 99) == 1
    with pytest.raises(DomainError):
        rearranged_prefix_integral(F1, -1)


# ---------------------------------------------------------------------------
# the pointwise bound

def test_pointwise_bound_equality_for_f1_beyond_support():
    # for t >= 2: A = 1/t, M = 0, rhs = (1/t) * int_0^{t/2} f* = 1/t exactly
    star = decreasing_rearrangement_fn(F1)
    for t in (Fraction(2), Fraction(9, 4), Fraction(3), Fraction(7, 2), Fraction(10), Fraction(1000)):
        lhs = abs(median_at_oracle(F1, t) - average_at(F1, t))
        rhs = star.cumulative(t / 2) / t
        assert lhs == rhs
    rep = verify_median_rearrangement_bound(F1, [Fraction(3)])
    assert rep.holds and rep.ratio == 1


def test_pointwise_bound_inside_support():
    rep = verify_median_rearrangement_bound(StepFunction.from_pairs([(1, 1)]), [1])
    assert rep.holds  # |1 - 1| = 0 <= 1/2 at t = 1


def test_pointwise_bound_random_sweep_exact():
    for idx in range(60):
        rng = rng_for_case(13, idx)
        f = random_step_function(rng, 14, exact=True)
        ts = [Fraction(rng.randint(1, 64), 8) for _ in range(25)]
        rep = verify_median_rearrangement_bound(f, ts)
        assert rep.holds, (idx, rep)


# ---------------------------------------------------------------------------
# integrals

def test_deviation_integral_f1_closed_form():
    assert deviation_integral(F1, 2, 1e-9) == pytest.approx(F1_DEV_P2, abs=1e-9)
    assert deviation_integral(F1, 3, 1e-9) == pytest.approx(F1_DEV_P3, abs=1e-9)
    assert deviation_integral(StepFunction.zero(), 2, 1e-9) == 0.0
    with pytest.raises(DomainError):
        deviation_integral(F1, 2, 0)


def test_deviation_integral_box_same_value():
    # 1 on (0,1): M = 1 on (0,2), 0 after; A = 1 then 1/t
    # int_1^2 (1 - 1/t)^2 dt + int_2^inf t^-2 dt, same closed form as f_1
    box = StepFunction.from_pairs([(1, 1)])
    assert deviation_integral(box, 2, 1e-9) == pytest.approx(F1_DEV_P2, abs=1e-9)


def test_deviation_integral_tolerance_consistency():
    f = StepFunction.from_pairs([(Fraction(1, 2), Fraction(3, 4)), (2, 0),
                                 (Fraction(1, 3), Fraction(7, 2)), (1, Fraction(1, 8))])
    coarse = deviation_integral(f, 2.5, 1e-6)
    fine = deviation_integral(f, 2.5, 5e-7)
    assert abs(fine - coarse) <= 1e-6


def test_median_hardy_continuous_f1():
    rep = verify_median_hardy_continuous(F1, 2, 1e-9)
    assert rep.holds
    assert rep.lhs == pytest.approx(F1_DEV_P2, abs=1e-9)
    assert rep.rhs == 2
    assert float(rep.ratio) == pytest.approx(F1_DEV_P2 / 2, rel=1e-9)


def test_median_hardy_continuous_zero_function():
    rep = verify_median_hardy_continuous(StepFunction.zero(), 2, 1e-9)
    assert rep.holds and rep.lhs == 0 and rep.ratio == 0


def test_continuous_ratio_grows_along_the_extremal_family():
    r1 = verify_median_hardy_continuous(gen_continuous_extremal(1, 2), 2, 1e-9)
    r50 = verify_median_hardy_continuous(gen_continuous_extremal(50, 2), 2, 1e-9)
    assert float(r50.ratio) > float(r1.ratio)
    assert float(r1.ratio) == pytest.approx(F1_DEV_P2 / 2, rel=1e-8)


def test_hardy_continuous_box():
    rep = verify_hardy_continuous(StepFunction.from_pairs([(1, 1)]), 2, 1e-9)
    assert rep.holds
    assert rep.lhs == pytest.approx(2.0, abs=1e-9)  # 1 + int_1^inf t^-2
    assert rep.rhs == 4
    zero = verify_hardy_continuous(StepFunction.zero(), 2, 1e-9)
    assert zero.holds and zero.lhs == 0


@pytest.mark.parametrize("p", [1.5, 2, 3])
def test_hardy_continuous_random_sweep(p):
    for idx in range(40):
        rng = rng_for_case(29, idx)
        f = random_step_function(rng, 12, exact=True)
        assert verify_hardy_continuous(f, p, 1e-9).holds


def test_substitution_identity():
    rep = substitution_identity_check(F1, 2, 1e-9)
    assert rep.holds and rep.lhs == pytest.approx(rep.rhs, abs=2e-9)
    zero = substitution_identity_check(StepFunction.zero(), 2, 1e-9)
    assert zero.holds and zero.lhs == 0 and zero.rhs == 0
    rng = rng_for_case(31, 0)
    f = random_step_function(rng, 10, exact=True)
    rep = substitution_identity_check(f, 3, 1e-9)
    assert rep.holds


def test_continuous_chain():
    # deviation integral <= substitution-lhs (rearranged half-prefix average
    # integral) <= C_p * int f^p, each link within combined tolerance
    tol = 1e-9
    for idx in range(25):
        rng = rng_for_case(37, idx)
        f = random_step_function(rng, 10, exact=True)
        for p in (2, 3):
            dev = deviation_integral(f, p, tol)
            mid = substitution_identity_check(f, p, tol).lhs
            cap = float(sharp_constant(p)) * float(
                f.power_integral(lambda v: pow_p(v, p)))
            assert dev <= mid + 2 * tol + 1e-9 * abs(mid)
            assert mid <= cap + 2 * tol + 1e-9 * cap


def test_run_stepfn_checks_all_hold():
    for idx in range(15):
        rng = rng_for_case(43, idx)
        f = random_step_function(rng, 10, exact=True)
        for rep in run_stepfn_checks(f, 2, 1e-9, [Fraction(1), Fraction(17, 7)]):
            assert rep.holds, (idx, rep)
