"""Rendering helpers shared by the JSON and CSV outputs."""

from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

#: JSON emits integers beyond this magnitude as quoted decimal strings.
JSON_INT_LIMIT = 2**53 - 1


def decimal_string(num: int, den: int, places: int) -> str:
    """num/den as a fixed-point decimal string with banker's rounding."""
    with localcontext() as ctx:
        ctx.prec = max(28, len(str(abs(num))) + places + 5)
        d = Decimal(num) / Decimal(den)
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def fraction_string(fr: Fraction) -> str:
    """Reduced fraction, rendered without a denominator when it is 1."""
    if fr.denominator == 1:
        return str(fr.numerator)
    return f"{fr.numerator}/{fr.denominator}"


def jsonable(x):
    """Recursively quote integers beyond JSON_INT_LIMIT as decimal strings."""
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x if abs(x) <= JSON_INT_LIMIT else str(x)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: jsonable(v) for k, v in x.items()}
    return x
