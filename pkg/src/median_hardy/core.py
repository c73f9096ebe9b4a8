"""Numeric foundations shared by every other module.

Two scalar backends carry all arithmetic:

* exact: `fractions.Fraction` everywhere.  Every ring operation and every
  comparison is exact, so an inequality check can never be corrupted by
  roundoff.  Usable whenever the exponent is a positive integer and the
  data is rational.
* float: IEEE double with a one-sided slack policy.  An inequality
  ``lhs <= rhs`` only counts as violated when
  ``lhs > rhs * (1 + eps_rel) + eps_abs``, so roundoff cannot manufacture
  spurious counterexamples of a true non-strict inequality.

The module also owns the exponent type (p > 1, conjugate p/(p-1)) and the
sharp constant ``2^(1-p) * (p/(p-1))^p`` of the median-to-mean deviation
bound, which equals 2 exactly at p = 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, float, Fraction]

#: default one-sided comparison slack for the float backend
EPS_REL = 1e-9
EPS_ABS = 1e-12

#: smallest exponent the CLI accepts; the constant blows up like
#: (p-1)^-p near 1 and tiny p values are a usability trap, not a use case.
MIN_CLI_EXPONENT = 1.0 + 1e-6


class DomainError(ValueError):
    """An input is outside an operation's mathematical domain."""


class CapabilityError(ValueError):
    """An input is valid but exceeds a documented size cap."""


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class Exponent:
    """The exponent p of the inequality; strictly greater than 1.

    ``value`` may be an int, Fraction, or float.  Integer-valued inputs
    (including 2.0) are normalized to int so the exact backend can raise
    rationals to the power exactly.
    """

    value: Scalar

    def __post_init__(self):
        v = self.value
        if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
            raise DomainError(f"exponent must be a real number, got {v!r}")
        if isinstance(v, float) and not math.isfinite(v):
            raise DomainError(f"exponent must be finite, got {v!r}")
        if v <= 1:
            raise DomainError(f"exponent must satisfy p > 1, got {v}")
        if isinstance(v, float) and v.is_integer():
            object.__setattr__(self, "value", int(v))
        elif isinstance(v, Fraction) and v.denominator == 1:
            object.__setattr__(self, "value", int(v))

    @property
    def is_integer(self) -> bool:
        return isinstance(self.value, int)

    @property
    def conjugate(self) -> Scalar:
        """The Hoelder conjugate p/(p-1), finite and > 1 for every p > 1."""
        if self.is_integer or isinstance(self.value, Fraction):
            return Fraction(self.value) / (Fraction(self.value) - 1)
        return self.value / (self.value - 1.0)

    def as_float(self) -> float:
        return float(self.value)

    def __float__(self) -> float:
        return float(self.value)


def as_exponent(p) -> Exponent:
    """Coerce a number (or Exponent) to a validated Exponent."""
    return p if isinstance(p, Exponent) else Exponent(p)


def sharp_constant(p) -> Scalar:
    """The best constant 2^(1-p) * (p/(p-1))^p of the deviation bound.

    Exact rational for integer p (in particular equal to Fraction(2) at
    p = 2 and Fraction(27, 32) at p = 3), float otherwise.
    """
    p = as_exponent(p)
    if p.is_integer:
        n = int(p.value)
        return Fraction(n ** n, (n - 1) ** n * 2 ** (n - 1))
    pf = p.as_float()
    return 2.0 ** (1.0 - pf) * (pf / (pf - 1.0)) ** pf


def pow_p(x: Scalar, p) -> Scalar:
    """x ** p for x >= 0.

    Exact when p is an integer and x is rational; otherwise evaluated in
    double precision via libm pow (relative error well below 1e-14), with
    pow_p(0, p) == 0 by convention.
    """
    p = as_exponent(p)
    if x < 0:
        raise DomainError(f"pow_p requires x >= 0, got {x}")
    if p.is_integer and _is_rational(x):
        return Fraction(x) ** int(p.value)
    xf = float(x)
    if xf == 0.0:
        return 0.0
    return math.pow(xf, p.as_float())


def safe_ratio(lhs: Scalar, rhs: Scalar) -> Scalar:
    """lhs / rhs with the 0/0 case defined as 0 (all-zero inputs)."""
    if rhs == 0:
        return Fraction(0) if _is_rational(lhs) else 0.0
    return lhs / rhs


class ExactBackend:
    """Exact rational arithmetic; comparisons are exact."""

    name = "exact"

    def coerce(self, x) -> Fraction:
        if isinstance(x, float):
            # exact binary value of the float; decimal-exact conversion
            # belongs to the input parsing layer, not here
            return Fraction(x)
        return Fraction(x)

    def le_with_slack(self, lhs, rhs, extra_abs=0) -> bool:
        return lhs <= rhs + extra_abs

    def pow(self, x, p) -> Fraction:
        p = as_exponent(p)
        if not p.is_integer:
            raise DomainError("exact backend requires an integer exponent")
        if x < 0:
            raise DomainError(f"pow requires x >= 0, got {x}")
        return Fraction(x) ** int(p.value)

    def sum(self, terms) -> Fraction:
        return sum(terms, Fraction(0))

    def __repr__(self):
        return "ExactBackend()"


@dataclass(frozen=True)
class FloatBackend:
    """IEEE double arithmetic with one-sided comparison slack."""

    eps_rel: float = EPS_REL
    eps_abs: float = EPS_ABS
    name = "float"

    def coerce(self, x) -> float:
        return float(x)

    def le_with_slack(self, lhs, rhs, extra_abs=0.0) -> bool:
        return float(lhs) <= float(rhs) * (1.0 + self.eps_rel) + self.eps_abs + extra_abs

    def pow(self, x, p) -> float:
        p = as_exponent(p)
        if x < 0:
            raise DomainError(f"pow requires x >= 0, got {x}")
        xf = float(x)
        return 0.0 if xf == 0.0 else math.pow(xf, p.as_float())

    def sum(self, terms) -> float:
        return math.fsum(terms)


Backend = Union[ExactBackend, FloatBackend]

EXACT = ExactBackend()
FLOAT = FloatBackend()


def backend_by_name(name: str) -> Backend:
    if name == "exact":
        return EXACT
    if name == "float":
        return FLOAT
    raise DomainError(f"unknown backend {name!r}")


def default_backend(p, values=()) -> Backend:
    """Exact when p is an integer and every value is rational, else float."""
    p = as_exponent(p)
    if p.is_integer and all(_is_rational(v) for v in values):
        return EXACT
    return FLOAT
