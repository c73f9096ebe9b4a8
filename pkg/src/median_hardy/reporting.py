"""Verification results and their JSON / CSV / human renderings.

The JSON rendering is canonical: keys sorted, exact rationals emitted as
"a/b" strings (plain ints when the denominator is 1) so that values
round-trip without precision loss, and no wall-clock data included.  Two
runs with the same configuration therefore produce byte-identical JSON
regardless of worker count.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .core import Scalar, sharp_constant


class CheckKind(str, Enum):
    TOP_R_DOMINANCE = "top_r_dominance"
    PREFIX_BOUND = "pointwise_prefix_bound"
    GLOBAL_BOUND = "pointwise_global_bound"
    MEDIAN_HARDY_DISCRETE = "median_hardy_discrete"
    HARDY_DISCRETE = "hardy_discrete"
    GROUPING_STEP = "grouping_step"
    CHAIN = "chain_consistency"
    MEDIAN_REARRANGEMENT = "median_rearrangement_bound"
    MEDIAN_HARDY_CONTINUOUS = "median_hardy_continuous"
    HARDY_CONTINUOUS = "hardy_continuous"
    SUBSTITUTION = "substitution_identity"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one inequality check.

    ``holds`` is the backend's verdict on lhs <= rhs (or |lhs - rhs| within
    tolerance for identity checks).  When the check scans many
    prefixes/sample points, lhs and rhs belong to the worst (largest-ratio)
    point, and ``witness`` identifies the first violating index if any.
    """

    kind: CheckKind
    lhs: Scalar
    rhs: Scalar
    ratio: Scalar
    holds: bool
    witness: Optional[int] = None


@dataclass
class CheckSummary:
    """Aggregate of one check kind across many generated cases."""

    kind: CheckKind
    cases: int
    violations: int
    worst: VerificationReport
    worst_case: int  # index of the case the `worst` report came from


@dataclass
class RunReport:
    """Full result of one CLI run; `elapsed_s` never enters the JSON."""

    command: str
    config: dict
    checks: list[CheckSummary] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    elapsed_s: float = 0.0
    schema: int = 1

    @property
    def violations(self) -> int:
        return sum(c.violations for c in self.checks)

    @property
    def total_cases(self) -> int:
        # every check kind sees the same cases; report that count once
        return max((c.cases for c in self.checks), default=0)

    @property
    def max_ratio(self) -> Scalar:
        ratios = [c.worst.ratio for c in self.checks]
        return max(ratios, default=0)


def scalar_json(x):
    """JSON-safe scalar: Fractions become exact "a/b" strings."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def report_dict(r: VerificationReport) -> dict:
    return {
        "kind": r.kind.value,
        "lhs": scalar_json(r.lhs),
        "rhs": scalar_json(r.rhs),
        "ratio": scalar_json(r.ratio),
        "holds": r.holds,
        "witness": r.witness,
    }


def run_report_payload(run: RunReport) -> dict:
    checks = []
    for c in run.checks:
        entry = report_dict(c.worst)
        entry.update({"cases": c.cases, "violations": c.violations, "worst_case": c.worst_case})
        checks.append(entry)
    return {
        "schema": run.schema,
        "command": run.command,
        "config": {k: scalar_json(v) for k, v in run.config.items()},
        "checks": checks,
        "aggregate": {
            "cases": run.total_cases,
            "violations": run.violations,
            "max_ratio": scalar_json(run.max_ratio),
        },
        **({"extra": run.extra} if run.extra else {}),
    }


def run_report_json(run: RunReport) -> str:
    return json.dumps(run_report_payload(run), sort_keys=True, indent=2) + "\n"


def run_report_csv(run: RunReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "cases", "violations", "lhs", "rhs", "ratio", "holds", "witness"])
    for c in run.checks:
        r = c.worst
        w.writerow([r.kind.value, c.cases, c.violations, scalar_json(r.lhs),
                    scalar_json(r.rhs), scalar_json(r.ratio), r.holds, r.witness])
    return buf.getvalue()


def _sig6(x) -> str:
    try:
        return f"{float(x):.6g}"
    except (OverflowError, ValueError):
        return str(x)


def run_report_human(run: RunReport) -> str:
    lines = [f"{run.command}  ({run.total_cases} case(s), {run.violations} violation(s))"]
    p = run.config.get("p")
    if p is not None:
        lines.append(f"  p = {p}, sharp constant C_p = {_sig6(sharp_constant(p))}")
    for c in run.checks:
        r = c.worst
        status = "ok" if c.violations == 0 else f"VIOLATED x{c.violations}"
        lines.append(
            f"  {r.kind.value:28s} {status:12s} worst ratio {_sig6(r.ratio):>12s}"
            f"  (lhs {_sig6(r.lhs)}, rhs {_sig6(r.rhs)}, case {c.worst_case})"
        )
        if r.witness is not None:
            lines.append(f"    first violation at index {r.witness}")
    for key, val in run.extra.items():
        lines.append(f"  {key}: {val}")
    lines.append(f"  elapsed: {run.elapsed_s:.2f} s")
    return "\n".join(lines) + "\n"
