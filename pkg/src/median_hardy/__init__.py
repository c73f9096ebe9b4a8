"""Streaming prefix statistics (running mean, running lower median,
top-half rearranged sums) and numerical verification of the median
version of Hardy's inequality, discrete and continuous, including its
sharp constant and the extremal families that attain it."""

from .core import (
    CapabilityError,
    DomainError,
    EXACT,
    FLOAT,
    ExactBackend,
    Exponent,
    FloatBackend,
    Scalar,
    backend_by_name,
    default_backend,
    pow_p,
    sharp_constant,
)
from .continuous import (
    deviation_integral,
    verify_median_rearrangement_bound,
    run_stepfn_checks,
    substitution_identity_check,
    verify_hardy_continuous,
    verify_median_hardy_continuous,
)
from .discrete import (
    brute_force_prefix_stats,
    chain_check,
    decreasing_rearrangement,
    grouping_step_check,
    hardy_discrete,
    median_hardy_discrete,
    run_sequence_checks,
    verify_pointwise_global_bound,
    verify_pointwise_prefix_bound,
    verify_top_r_dominance,
)
from .reporting import CheckKind, CheckSummary, RunReport, VerificationReport
from .sharpness import (
    ConvergencePoint,
    LimitFit,
    extrapolate_limit,
    gen_continuous_extremal,
    gen_discrete_extremal,
    partial_power_sum,
    ratio_curve,
    ratio_point_streaming,
)
from .stepfn import (
    PiecewiseAverage,
    PiecewiseConstant,
    Segment,
    StepFunction,
    average_at,
    decreasing_rearrangement_fn,
    lower_median_fn,
    median_at_oracle,
    rearranged_prefix_integral,
)
from .streaming import PrefixStats, PrefixStream, prefix_stats

__version__ = "0.1.0"
