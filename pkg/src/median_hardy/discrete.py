"""Sequence-level verifiers for the discrete inequality chain.

For a nonnegative sequence x_1..x_n with prefix means a_i, lower medians
m_i and decreasing rearrangements (per prefix: y^(i), global: x*), the
chain under test is

    sum_i |m_i - a_i|^p                                  (deviation sum)
      <= sum_i ( (y_1 + .. + y_floor(i/2)) / i )^p       (prefix bound)
      <= sum_i ( (x*_1 + .. + x*_floor(i/2)) / i )^p     (global bound)
      <= 2^(1-p) (p/(p-1))^p  sum_i x_i^p               (sharp cap)

together with the pointwise bound |m_i - a_i| <= T_i / i behind the first
link, the grouping coefficient inequality
(2r)^-p + (2r+1)^-p <= 2^(1-p) r^-p behind the last one, and the classical
discrete Hardy inequality for prefix means.  Brute-force oracles
(exhaustive subset enumeration, per-prefix full re-sort) validate the
streaming structure independently.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .core import (
    CapabilityError,
    DomainError,
    EXACT,
    FLOAT,
    Backend,
    as_exponent,
    default_backend,
    safe_ratio,
    sharp_constant,
    _is_rational,
)
from .reporting import CheckKind, VerificationReport
from .streaming import PrefixStats, prefix_stats

TOP_R_EXHAUSTIVE_CAP = 15
BRUTE_FORCE_CAP = 2000


def check_sequence(values) -> list:
    """Validate a nonempty, all-nonnegative sequence; returns it as a list."""
    seq = list(values)
    if not seq:
        raise DomainError("sequence must contain at least one value")
    for v in seq:
        if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
            raise DomainError(f"sequence values must be numbers, got {v!r}")
        if v < 0:
            raise DomainError(f"sequence values must be nonnegative, got {v}")
    return seq


def _backend_for(values, p=None) -> Backend:
    if p is not None:
        return default_backend(p, values)
    return EXACT if all(_is_rational(v) for v in values) else FLOAT


def decreasing_rearrangement(values) -> list:
    """The same multiset sorted nonincreasing."""
    return sorted(check_sequence(values), reverse=True)


def verify_top_r_dominance(values, r: int) -> VerificationReport:
    """Exhaustively check that no size-r subset outsums the top r values.

    This validates the rearrangement-dominance oracle itself, so it must
    hold for every input; n is capped at 15 (2^n subsets).
    """
    seq = check_sequence(values)
    n = len(seq)
    if not 1 <= r <= n:
        raise DomainError(f"need 1 <= r <= n, got r={r}, n={n}")
    if n > TOP_R_EXHAUSTIVE_CAP:
        raise CapabilityError(
            f"exhaustive enumeration capped at n <= {TOP_R_EXHAUSTIVE_CAP}, got {n}")
    top_r = sum(sorted(seq, reverse=True)[:r])
    worst = None
    witness = None
    for idx, combo in enumerate(itertools.combinations(seq, r)):
        s = sum(combo)
        if worst is None or s > worst:
            worst = s
        if s > top_r and witness is None:
            witness = idx
    holds = witness is None
    return VerificationReport(
        kind=CheckKind.TOP_R_DOMINANCE,
        lhs=worst, rhs=top_r, ratio=safe_ratio(worst, top_r),
        holds=holds, witness=witness,
    )


def brute_force_prefix_stats(values) -> list[PrefixStats]:
    """Ground-truth prefix statistics by full re-sort of every prefix.

    Quadratic; capped at n <= 2000.  Rational inputs are rescaled to a
    common integer denominator so the per-prefix sorts run on machine
    integers, which keeps the oracle exact and fast without touching the
    streaming code path it is meant to check.
    """
    seq = check_sequence(values)
    n = len(seq)
    if n > BRUTE_FORCE_CAP:
        raise CapabilityError(f"brute force capped at n <= {BRUTE_FORCE_CAP}, got {n}")

    out = []
    if all(_is_rational(v) for v in seq):
        den = math.lcm(*(Fraction(v).denominator for v in seq))
        nums = [int(Fraction(v) * den) for v in seq]
        for i in range(1, n + 1):
            pre = sorted(nums[:i])
            out.append(PrefixStats(
                i=i,
                mean=Fraction(sum(pre), i * den),
                lower_median=Fraction(pre[(i + 1) // 2 - 1], den),
                top_half_sum=Fraction(sum(pre[i - i // 2:]), den),
            ))
    else:
        for i in range(1, n + 1):
            pre = sorted(seq[:i])
            out.append(PrefixStats(
                i=i,
                mean=sum(pre) / i,
                lower_median=pre[(i + 1) // 2 - 1],
                top_half_sum=sum(pre[i - i // 2:]) if i // 2 else 0.0,
            ))
    return out


def _worst_and_witness(kind, pairs, backend) -> VerificationReport:
    """Scan (lhs, rhs) pairs; report first violation or the max-ratio pair.

    `pairs` yields (index, lhs, rhs).  Witness is the 1-based prefix index
    of the first violation, None when the check holds everywhere.  The
    max-ratio pair is selected with a float proxy (deterministic, ties to
    the earliest index); the exact ratio is computed once at the end.
    """
    worst = None  # (float ratio proxy, index, lhs, rhs)
    for idx, lhs, rhs in pairs:
        if not backend.le_with_slack(lhs, rhs):
            return VerificationReport(kind=kind, lhs=lhs, rhs=rhs,
                                      ratio=safe_ratio(lhs, rhs),
                                      holds=False, witness=idx)
        proxy = float(lhs) / float(rhs) if rhs else -1.0
        if worst is None or proxy > worst[0]:
            worst = (proxy, idx, lhs, rhs)
    _, _, lhs, rhs = worst
    return VerificationReport(kind=kind, lhs=lhs, rhs=rhs,
                              ratio=safe_ratio(lhs, rhs),
                              holds=True, witness=None)


def verify_pointwise_prefix_bound(values, backend=None, stats=None) -> VerificationReport:
    """|m_i - a_i| <= T_i / i for every prefix i."""
    seq = check_sequence(values)
    backend = backend or _backend_for(seq)
    stats = stats or prefix_stats(seq)
    pairs = ((s.i, abs(s.lower_median - s.mean), s.top_half_sum / s.i) for s in stats)
    return _worst_and_witness(CheckKind.PREFIX_BOUND, pairs, backend)


def _global_prefix_sums(seq) -> list:
    """G[r] = sum of the r largest values of the whole sequence (G[0] = 0)."""
    g = [0 * seq[0]]
    for v in sorted(seq, reverse=True):
        g.append(g[-1] + v)
    return g


def verify_pointwise_global_bound(values, backend=None, stats=None) -> VerificationReport:
    """|m_i - a_i| <= (x*_1 + .. + x*_floor(i/2)) / i with the global
    rearrangement, and the chain fact that this never undercuts the
    per-prefix bound T_i / i.  A failure of either yields holds=False with
    the first offending prefix as witness."""
    seq = check_sequence(values)
    backend = backend or _backend_for(seq)
    stats = stats or prefix_stats(seq)
    g = _global_prefix_sums([backend.coerce(v) for v in seq])

    def pairs():
        for s in stats:
            bound = g[s.i // 2] / s.i
            # top floor(i/2) of a prefix can never beat the global top floor(i/2)
            if not backend.le_with_slack(s.top_half_sum / s.i, bound):
                yield s.i, s.top_half_sum / s.i, bound
            yield s.i, abs(s.lower_median - s.mean), bound

    return _worst_and_witness(CheckKind.GLOBAL_BOUND, pairs(), backend)


def median_hardy_discrete(values, p, backend=None, stats=None) -> VerificationReport:
    """sum |m_i - a_i|^p <= 2^(1-p) (p/(p-1))^p sum x_i^p."""
    seq = check_sequence(values)
    p = as_exponent(p)
    backend = backend or _backend_for(seq, p)
    stats = stats or prefix_stats(seq)
    lhs = backend.sum(backend.pow(abs(s.lower_median - s.mean), p) for s in stats)
    power_sum = backend.sum(backend.pow(v, p) for v in seq)
    c = sharp_constant(p) if backend.name == "exact" else float(sharp_constant(p))
    rhs = c * power_sum
    return VerificationReport(
        kind=CheckKind.MEDIAN_HARDY_DISCRETE,
        lhs=lhs, rhs=rhs, ratio=safe_ratio(lhs, rhs),
        holds=backend.le_with_slack(lhs, rhs), witness=None,
    )


def hardy_discrete(values, p, backend=None) -> VerificationReport:
    """Classical discrete Hardy: sum_r ((b_1+..+b_r)/r)^p <= (p/(p-1))^p sum b_r^p."""
    seq = check_sequence(values)
    p = as_exponent(p)
    backend = backend or _backend_for(seq, p)
    seq = [backend.coerce(v) for v in seq]
    terms = []
    partial = 0 * seq[0]
    for r, b in enumerate(seq, start=1):
        partial = partial + b
        terms.append(backend.pow(partial / r, p))
    lhs = backend.sum(terms)
    q_pow = backend.pow(p.conjugate, p)
    rhs = q_pow * backend.sum(backend.pow(b, p) for b in seq)
    return VerificationReport(
        kind=CheckKind.HARDY_DISCRETE,
        lhs=lhs, rhs=rhs, ratio=safe_ratio(lhs, rhs),
        holds=backend.le_with_slack(lhs, rhs), witness=None,
    )


def grouping_step_check(r: int, p, backend=None) -> VerificationReport:
    """(2r)^-p + (2r+1)^-p <= 2^(1-p) r^-p (coefficients of the even/odd
    grouping; the common rearranged-prefix-sum factor cancels)."""
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise DomainError(f"need integer r >= 1, got {r!r}")
    p = as_exponent(p)
    backend = backend or (EXACT if p.is_integer else FLOAT)
    if backend.name == "exact":
        k = int(p.value)
        lhs = Fraction(1, (2 * r) ** k) + Fraction(1, (2 * r + 1) ** k)
        rhs = Fraction(1, 2 ** (k - 1) * r ** k)
    else:
        pf = p.as_float()
        lhs = (2.0 * r) ** -pf + (2.0 * r + 1.0) ** -pf
        rhs = 2.0 ** (1.0 - pf) * float(r) ** -pf
    return VerificationReport(
        kind=CheckKind.GROUPING_STEP,
        lhs=lhs, rhs=rhs, ratio=safe_ratio(lhs, rhs),
        holds=backend.le_with_slack(lhs, rhs), witness=None,
    )


def _power_fn(p, backend):
    """Specialized x -> x^p for a hot loop (x >= 0 assumed)."""
    if backend.name == "exact":
        k = int(as_exponent(p).value)
        return lambda x: x ** k
    pf = as_exponent(p).as_float()
    return lambda x: math.pow(float(x), pf) if x else 0.0


def _chain_sums(seq, p, backend, stats):
    """The four sums of the chain: s5 (deviation), s6 (prefix bounds),
    s7 (global bounds) and the sharp cap."""
    powf = _power_fn(p, backend)
    g = _global_prefix_sums([backend.coerce(v) for v in seq])
    s5 = backend.sum(powf(abs(s.lower_median - s.mean)) for s in stats)
    s6 = backend.sum(powf(s.top_half_sum / s.i) for s in stats)
    s7 = backend.sum(powf(g[s.i // 2] / s.i) for s in stats)
    c = sharp_constant(p) if backend.name == "exact" else float(sharp_constant(p))
    cap = c * backend.sum(powf(backend.coerce(v)) for v in seq)
    return s5, s6, s7, cap


def _chain_report(s5, s6, s7, cap, backend) -> VerificationReport:
    links = [(s5, s6), (s6, s7), (s7, cap)]
    worst = None
    for li, (lhs, rhs) in enumerate(links, start=1):
        if not backend.le_with_slack(lhs, rhs):
            return VerificationReport(kind=CheckKind.CHAIN, lhs=lhs, rhs=rhs,
                                      ratio=safe_ratio(lhs, rhs),
                                      holds=False, witness=li)
        ratio = safe_ratio(lhs, rhs)
        if worst is None or ratio > worst[0]:
            worst = (ratio, lhs, rhs)
    ratio, lhs, rhs = worst
    return VerificationReport(kind=CheckKind.CHAIN, lhs=lhs, rhs=rhs,
                              ratio=ratio, holds=True, witness=None)


def chain_check(values, p, backend=None, stats=None) -> VerificationReport:
    """The three-link ordering: deviation sum <= prefix-bound sum <=
    global-bound sum <= sharp cap.

    The reported lhs/rhs pair is the tightest link; witness (1, 2 or 3)
    names the first broken link if any.
    """
    seq = check_sequence(values)
    p = as_exponent(p)
    backend = backend or _backend_for(seq, p)
    stats = stats or prefix_stats(seq)
    return _chain_report(*_chain_sums(seq, p, backend, stats), backend)


def run_sequence_checks(values, p, backend=None) -> list[VerificationReport]:
    """All discrete checks on one sequence, sharing one streaming pass and
    one set of chain sums."""
    seq = check_sequence(values)
    p = as_exponent(p)
    backend = backend or _backend_for(seq, p)
    stats = prefix_stats(seq)
    s5, s6, s7, cap = _chain_sums(seq, p, backend, stats)
    median_hardy = VerificationReport(
        kind=CheckKind.MEDIAN_HARDY_DISCRETE,
        lhs=s5, rhs=cap, ratio=safe_ratio(s5, cap),
        holds=backend.le_with_slack(s5, cap), witness=None,
    )
    return [
        verify_pointwise_prefix_bound(seq, backend, stats),
        verify_pointwise_global_bound(seq, backend, stats),
        median_hardy,
        hardy_discrete(seq, p, backend),
        _chain_report(s5, s6, s7, cap, backend),
    ]
