from __future__ import annotations

import hashlib
import math
from typing import Any, Optional

import orjson

from app.core.config import settings


def format_float(value: float, digits: Optional[int] = None) -> str:
    """
    Scientific notation with `digits` significant digits (17 by default, enough
    to round-trip any double).
    """
    digits = settings.CSV_SIGNIFICANT_DIGITS if digits is None else digits
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        return repr(value)
    return f"{value:.{digits - 1}e}"


def format_cell(value: Any, digits: Optional[int] = None) -> str:
    if isinstance(value, bool) or value is None:
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value, digits)
    if isinstance(value, complex):
        sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
        return f"{format_float(value.real, digits)}{sign}{format_float(abs(value.imag), digits)}j"
    if hasattr(value, "dtype") and getattr(value, "shape", None) == ():
        return format_cell(value.item(), digits)
    return str(value)


def canonical_json(payload: Any) -> bytes:
    return orjson.dumps(payload, option=orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY)


def config_hash(payload: Any) -> str:
    """SHA-256 of the canonical (sorted-key) JSON encoding."""
    return hashlib.sha256(canonical_json(payload)).hexdigest()


def mode_label(mode: tuple[int, ...]) -> str:
    return ":".join(str(n) for n in mode)
