"""Size caps guarding the exponential constructions.

Element counts are exponential in join-irreducibles, congruence counts in
the same, and C-ideal counts worse; every cap violation raises CapExceeded
with the offending quantity so callers can report "skipped" instead of
silently truncating.  The PFW_CAPS environment variable (a JSON object)
overrides individual fields, as do CLI flags.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace

from .errors import SchemaError


@dataclass(frozen=True)
class Caps:
    max_ji: int = 16            # join-irreducibles per frame
    max_elements: int = 4096    # elements per frame
    max_congruences: int = 4096
    max_cideals: int = 4096     # coproduct / quasi-uniformity basis sizes
    max_enum: int = 6           # |L|, |M| for Cauchy-map enumeration
    max_compact_scan: int = 12  # literal cover-search cutoff (2^n subsets)


DEFAULT_CAPS = Caps()

_FIELDS = set(Caps.__dataclass_fields__)


def caps_from_env(base: Caps = DEFAULT_CAPS, env: dict | None = None) -> Caps:
    """Apply the PFW_CAPS JSON override on top of `base`."""
    raw = (env if env is not None else os.environ).get("PFW_CAPS")
    if not raw:
        return base
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError("PFW_CAPS", f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("PFW_CAPS", "must be a JSON object")
    unknown = set(data) - _FIELDS
    if unknown:
        raise SchemaError("PFW_CAPS", f"unknown cap names {sorted(unknown)}")
    bad = {k: v for k, v in data.items() if not isinstance(v, int) or v <= 0}
    if bad:
        raise SchemaError("PFW_CAPS", f"caps must be positive integers, got {bad}")
    return replace(base, **data)


def with_overrides(base: Caps, **overrides) -> Caps:
    """Apply non-None keyword overrides on top of `base`."""
    actual = {k: v for k, v in overrides.items() if v is not None}
    return replace(base, **actual) if actual else base
