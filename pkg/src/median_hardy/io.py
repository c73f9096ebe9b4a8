"""Input file ingestion.

Sequences: a JSON array of nonnegative numbers, or CSV/text with one
value per line.  Step functions: a JSON object
``{"segments": [{"len": ..., "val": ...}, ...]}`` with an implicit zero
tail, canonicalized on load.  In both formats a scalar may be a number or
a rational literal "a/b"; in exact mode decimal literals are read
decimally (0.1 becomes 1/10, not the nearest binary double).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .core import DomainError
from .stepfn import StepFunction


def parse_scalar(raw, exact: bool):
    """Number, numeric string, or "a/b" literal -> Fraction (exact) / float."""
    try:
        if isinstance(raw, str):
            value = Fraction(raw.strip())
        elif isinstance(raw, bool):
            raise ValueError("booleans are not scalars")
        elif isinstance(raw, (int, Fraction)):
            value = Fraction(raw)
        elif isinstance(raw, float):
            value = Fraction(str(raw)) if exact else raw
        else:
            raise ValueError(f"unsupported scalar {raw!r}")
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse scalar {raw!r}: {exc}") from None
    return value if exact else float(value)


def _load_json(path: Path, exact: bool):
    if not path.exists():
        raise DomainError(f"input file not found: {path}")
    text = path.read_text()
    try:
        if exact:
            return json.loads(text, parse_float=Fraction)
        return json.loads(text)
    except json.JSONDecodeError:
        return None  # fall through to CSV handling


def load_sequence(path, exact: bool) -> list:
    """Load a sequence file (JSON array or one-value-per-line text)."""
    path = Path(path)
    doc = _load_json(path, exact)
    if isinstance(doc, dict):
        raise DomainError(f"{path}: expected a sequence, found a JSON object")
    if isinstance(doc, list):
        raw_values = doc
    elif doc is None:
        raw_values = [line for line in path.read_text().splitlines()
                      if line.strip() and not line.lstrip().startswith("#")]
    else:
        raise DomainError(f"{path}: expected a JSON array or CSV lines")
    values = [parse_scalar(v, exact) for v in raw_values]
    if not values:
        raise DomainError(f"{path}: sequence must contain at least one value")
    for v in values:
        if v < 0:
            raise DomainError(f"{path}: sequence values must be nonnegative, got {v}")
    return values


def load_step_function(path, exact: bool) -> StepFunction:
    """Load a step function JSON file."""
    path = Path(path)
    doc = _load_json(path, exact)
    if not isinstance(doc, dict) or "segments" not in doc:
        raise DomainError(f'{path}: expected {{"segments": [...]}}')
    segments = doc["segments"]
    if not isinstance(segments, list):
        raise DomainError(f"{path}: segments must be a list")
    pairs = []
    for seg in segments:
        if not isinstance(seg, dict) or "len" not in seg or "val" not in seg:
            raise DomainError(f"{path}: each segment needs 'len' and 'val'")
        pairs.append((parse_scalar(seg["len"], exact), parse_scalar(seg["val"], exact)))
    return StepFunction.from_pairs(pairs)


def load_input(path, exact: bool):
    """Auto-detect the input kind: ("sequence", values) or ("stepfn", f)."""
    path = Path(path)
    if not path.exists():
        raise DomainError(f"input file not found: {path}")
    doc = _load_json(path, exact)
    if isinstance(doc, dict):
        return "stepfn", load_step_function(path, exact)
    return "sequence", load_sequence(path, exact)
