# src/utils/canonical.py
import hashlib
import json
from fractions import Fraction
from typing import Any


def _default(obj: Any):
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return obj.numerator
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    # numpy integers and other int-likes
    if hasattr(obj, "__index__"):
        return int(obj)
    raise TypeError(f"not canonically serializable: {type(obj).__name__}")


def canonical_bytes(obj: Any) -> bytes:
    """
    Deterministic JSON serialization: sorted keys, minimal separators, UTF-8 bytes.
    Fractions become integers or {num, den} objects; tuples become lists.
    """
    return json.dumps(
        obj,
        separators=(",", ":"),
        sort_keys=True,
        ensure_ascii=False,
        default=_default,
    ).encode("utf-8")


def canonical_digest(obj: Any) -> str:
    """Hex sha256 of canonical_bytes(obj)."""
    return hashlib.sha256(canonical_bytes(obj)).hexdigest()
