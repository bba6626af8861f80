"""JSON-safe encoding of numbers, functions, and cases.

Rationals travel as ``"n/d"`` strings (value-exact round-trip), integers as
JSON ints, floats as JSON floats.  A decoded function is rational iff no
float appears anywhere in its record.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional, Union

from .plfunction import Number, PLFunction

WireNumber = Union[int, float, str]


def encode_number(v: Number) -> WireNumber:
    if isinstance(v, float):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        return f"{v.numerator}/{v.denominator}"
    raise TypeError(f"cannot encode {type(v).__name__} as a wire number")


def decode_number(v: WireNumber) -> Number:
    if isinstance(v, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {v!r}") from exc
    raise ValueError(f"cannot decode {v!r} as a number")


def encode_function(f: PLFunction) -> dict:
    return {
        "domain": [encode_number(f.domain_lo), encode_number(f.domain_hi)],
        "breakpoints": [encode_number(x) for x in f.breakpoints],
        "values": [encode_number(y) for y in f.values],
    }


def decode_function(rec: dict) -> PLFunction:
    try:
        xs = tuple(decode_number(x) for x in rec["breakpoints"])
        ys = tuple(decode_number(y) for y in rec["values"])
        domain = rec.get("domain")
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad function record: {exc}") from exc
    f = PLFunction(xs, ys)
    if domain is not None:
        lo, hi = (decode_number(v) for v in domain)
        if lo != f.domain_lo or hi != f.domain_hi:
            raise ValueError(
                f"domain field [{lo}, {hi}] does not match breakpoints "
                f"[{f.domain_lo}, {f.domain_hi}]")
    return f


def encode_case(inequality: str, functions: dict[str, PLFunction],
                variant: Optional[str] = None,
                direction: Optional[str] = None,
                expected_margin: Optional[Number] = None) -> dict:
    """Self-contained replayable record of one inequality evaluation."""
    case: dict[str, Any] = {
        "inequality": inequality,
        "functions": {role: encode_function(f)
                      for role, f in functions.items()},
    }
    if variant is not None:
        case["variant"] = variant
    if direction is not None:
        case["direction"] = direction
    if expected_margin is not None:
        case["expected_margin"] = encode_number(expected_margin)
    return case


def decode_case(case: dict) -> dict:
    """Validate and decode a case document into evaluation arguments."""
    if not isinstance(case, dict):
        raise ValueError("case document must be an object")
    for key in ("inequality", "functions"):
        if key not in case:
            raise ValueError(f"case document missing field {key!r}")
    functions = {role: decode_function(rec)
                 for role, rec in case["functions"].items()}
    out: dict[str, Any] = {
        "inequality": case["inequality"],
        "functions": functions,
        "variant": case.get("variant"),
        "direction": case.get("direction"),
    }
    if case.get("expected_margin") is not None:
        out["expected_margin"] = decode_number(case["expected_margin"])
    return out
