"""Continuous-side verifiers: the pointwise median-rearrangement bound,
the median deviation inequality, classical Hardy, and the change-of-
variables identity that links them.

Integrands all have the form |m - (alpha + beta*t)/t|^p on an interval
where the median representation is constant and the cumulative integral
is linear, so each piece is smooth except for one possible interior zero
of the deviation, where the piece is split before quadrature.  The
improper tail, where the median is 0 and the cumulative has saturated, is
always closed form:

    int_T^inf (F_tot / t)^p dt = F_tot^p * T^(1-p) / (p - 1),

never a truncated quadrature, because the tail carries a constant
fraction of the whole integral.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .core import (
    DomainError,
    EXACT,
    FLOAT,
    as_exponent,
    pow_p,
    safe_ratio,
    sharp_constant,
    _is_rational,
)
from .discrete import _worst_and_witness
from .quadrature import adaptive
from .reporting import CheckKind, VerificationReport
from .stepfn import (
    StepFunction,
    decreasing_rearrangement_fn,
    lower_median_fn,
    median_at_oracle,
)


def _merge_breakpoints(*lists) -> list:
    pts = sorted({x for xs in lists for x in xs})
    return pts


def _tail_integral(f_total: float, start: float, pf: float) -> float:
    """Closed-form int_start^inf (f_total/t)^p dt; start > 0 unless total 0."""
    if f_total == 0.0:
        return 0.0
    return math.pow(f_total, pf) * math.pow(start, 1.0 - pf) / (pf - 1.0)


def _piece_values(f: StepFunction):
    """(t0, t1, alpha, beta) floats per support piece: F(t) = alpha + beta*t."""
    bps = f.breakpoints
    out = []
    cum = Fraction(0)
    for j, seg in enumerate(f.segments):
        alpha = cum - seg.value * bps[j]
        out.append((float(bps[j]), float(bps[j + 1]), float(alpha), float(seg.value)))
        cum = cum + seg.length * seg.value
    return out


def _average_power_integral(f: StepFunction, p, tol: float) -> float:
    """int_0^inf A(t)^p dt by per-piece quadrature plus the exact tail."""
    pf = as_exponent(p).as_float()
    if f.is_zero:
        return 0.0
    span = float(f.total_length)
    parts = []
    for t0, t1, alpha, beta in _piece_values(f):
        if t1 <= t0:  # piece collapsed by float rounding
            continue
        budget = tol * (t1 - t0) / span
        if alpha == 0.0:
            parts.append(math.pow(beta, pf) * (t1 - t0) if beta else 0.0)
        else:
            parts.append(adaptive(lambda t: math.pow(alpha / t + beta, pf),
                                  t0, t1, budget))
    parts.append(_tail_integral(float(f.total_integral), span, pf))
    return math.fsum(parts)


def deviation_integral(f: StepFunction, p, tol) -> float:
    """int_0^inf |M(t) - A(t)|^p dt with absolute error <= tol.

    Pieces are cut at every breakpoint of M and of F; each piece is split
    again at the single zero of M - A when it falls inside (the integrand
    has a kink there for non-even p).  Beyond max(support end, 2 * measure
    of {f > 0}) the median is 0 and the tail is closed form.
    """
    tol = float(tol)
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    p = as_exponent(p)
    pf = p.as_float()
    if f.is_zero:
        return 0.0

    median = lower_median_fn(f)
    horizon = max(f.total_length, 2 * f.positive_measure, median.breakpoints[-1])
    cuts = _merge_breakpoints(f.breakpoints, median.breakpoints, [horizon])
    cuts = [c for c in cuts if c <= horizon]
    span = float(horizon)

    f_pieces = _piece_values(f)
    f_total = float(f.total_integral)

    def linear_coeffs(t0f):
        for a0, a1, alpha, beta in f_pieces:
            if a0 <= t0f < a1:
                return alpha, beta
        return f_total, 0.0  # saturated region

    parts = []
    for c, d in zip(cuts, cuts[1:]):
        t0, t1 = float(c), float(d)
        if t1 <= t0:  # piece collapsed by float rounding
            continue
        m = float(median.value_at((c + d) / 2))
        alpha, beta = linear_coeffs(t0)
        budget = tol * (t1 - t0) / span

        def dev(t, m=m, alpha=alpha, beta=beta):
            return math.pow(abs(m - beta - alpha / t), pf)

        sub = [t0, t1]
        if m != beta and alpha != 0.0:
            zero = alpha / (m - beta)
            if t0 < zero < t1:
                sub = [t0, zero, t1]
        for a, b in zip(sub, sub[1:]):
            if alpha == 0.0:
                parts.append(abs(m - beta) ** pf * (b - a) if m != beta else 0.0)
            else:
                parts.append(adaptive(dev, a, b, budget / (len(sub) - 1)))
    parts.append(_tail_integral(f_total, span, pf))
    return math.fsum(parts)


def _norm_integral(f: StepFunction, p):
    """int f^p: exact segment sum when p is integer and data rational."""
    p = as_exponent(p)
    if p.is_integer and all(_is_rational(s.value) and _is_rational(s.length)
                            for s in f.segments):
        k = int(p.value)
        return f.power_integral(lambda v: Fraction(v) ** k)
    pf = p.as_float()
    return math.fsum(float(s.length) * math.pow(float(s.value), pf)
                     for s in f.segments if s.value != 0)


def verify_median_hardy_continuous(f: StepFunction, p, tol) -> VerificationReport:
    """int |M - A|^p <= 2^(1-p) (p/(p-1))^p int f^p, the quadrature
    tolerance folded into the comparison slack."""
    tol = float(tol)
    p = as_exponent(p)
    lhs = deviation_integral(f, p, tol)
    rhs = sharp_constant(p) * _norm_integral(f, p)
    holds = FLOAT.le_with_slack(lhs, float(rhs), extra_abs=tol)
    return VerificationReport(kind=CheckKind.MEDIAN_HARDY_CONTINUOUS, lhs=lhs, rhs=rhs,
                              ratio=safe_ratio(lhs, float(rhs)), holds=holds)


def verify_hardy_continuous(g: StepFunction, p, tol) -> VerificationReport:
    """Classical Hardy: int A_g(t)^p dt <= (p/(p-1))^p int g^p."""
    tol = float(tol)
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    p = as_exponent(p)
    lhs = _average_power_integral(g, p, tol)
    rhs = pow_p(p.conjugate, p) * _norm_integral(g, p)
    holds = FLOAT.le_with_slack(lhs, float(rhs), extra_abs=tol)
    return VerificationReport(kind=CheckKind.HARDY_CONTINUOUS, lhs=lhs, rhs=rhs,
                              ratio=safe_ratio(lhs, float(rhs)), holds=holds)


def substitution_identity_check(f: StepFunction, p, tol) -> VerificationReport:
    """Two independent quadratures of the same quantity:

        int ((1/t) int_0^{t/2} f*)^p dt  ==  2^(1-p) int ((1/u) int_0^u f*)^p du

    (substitute u = t/2).  Validates the quadrature engine; agreement is
    required within 2*tol since each side carries its own budget of tol.
    """
    tol = float(tol)
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    p = as_exponent(p)
    pf = p.as_float()
    star = decreasing_rearrangement_fn(f)
    if star.is_zero:
        return VerificationReport(kind=CheckKind.SUBSTITUTION, lhs=0.0, rhs=0.0,
                                  ratio=0.0, holds=True)

    # lhs: piece boundaries double; C*(t/2) = alpha + (beta/2) t on each
    span = 2.0 * float(star.total_length)
    parts = []
    for t0, t1, alpha, beta in _piece_values(star):
        if t1 <= t0:  # piece collapsed by float rounding
            continue
        budget = tol * 2.0 * (t1 - t0) / span
        if alpha == 0.0:
            parts.append(math.pow(beta / 2.0, pf) * 2.0 * (t1 - t0) if beta else 0.0)
        else:
            parts.append(adaptive(lambda t: math.pow(alpha / t + beta / 2.0, pf),
                                  2.0 * t0, 2.0 * t1, budget))
    parts.append(_tail_integral(float(star.total_integral), span, pf))
    lhs = math.fsum(parts)

    rhs = math.pow(2.0, 1.0 - pf) * _average_power_integral(star, p, tol)
    holds = abs(lhs - rhs) <= 2.0 * tol + FLOAT.eps_rel * abs(rhs)
    return VerificationReport(kind=CheckKind.SUBSTITUTION, lhs=lhs, rhs=rhs,
                              ratio=safe_ratio(lhs, rhs), holds=holds)


def verify_median_rearrangement_bound(f: StepFunction, t_samples=(), backend=None) -> VerificationReport:
    """|M(t) - A(t)| <= (1/t) int_0^{t/2} f* at every sample point.

    The sample set is augmented with every breakpoint of M and of F,
    midpoints between consecutive collected points, and 2 * meas{f > 0}.
    At each point the bound is checked for the oracle value of M(t) and
    for both one-sided values of the piecewise representation, so
    breakpoint behavior (including isolated dips of the median) is
    covered.  Exact arithmetic end to end for rational data.
    """
    for t in t_samples:
        if t <= 0:
            raise DomainError(f"samples must be positive, got {t}")
    backend = backend or (EXACT if _rational_stepfn(f) else FLOAT)
    median = lower_median_fn(f)
    star = decreasing_rearrangement_fn(f)

    base = sorted({Fraction(t) if isinstance(t, int) else t for t in t_samples}
                  | {bp for bp in median.breakpoints if bp > 0}
                  | {bp for bp in f.breakpoints if bp > 0}
                  | ({2 * f.positive_measure} if f.positive_measure > 0 else set()))
    if not base:
        base = [Fraction(1)]
    samples = sorted(set(base) | {(a + b) / 2 for a, b in zip(base, base[1:])})

    def pairs():
        for idx, t in enumerate(samples):
            avg = f.cumulative(t) / t
            rhs = star.cumulative(t / 2) / t
            m_candidates = {median_at_oracle(f, t),
                            median.value_at(t), median.value_left(t)}
            for m in m_candidates:
                yield idx, abs(m - avg), rhs

    return _worst_and_witness(CheckKind.MEDIAN_REARRANGEMENT, pairs(), backend)


def _rational_stepfn(f: StepFunction) -> bool:
    return all(_is_rational(s.length) and _is_rational(s.value) for s in f.segments)


def run_stepfn_checks(f: StepFunction, p, tol, t_samples=()) -> list[VerificationReport]:
    """All continuous checks on one step function."""
    return [
        verify_median_rearrangement_bound(f, t_samples),
        verify_median_hardy_continuous(f, p, tol),
        verify_hardy_continuous(f, p, tol),
        substitution_identity_check(f, p, tol),
    ]
