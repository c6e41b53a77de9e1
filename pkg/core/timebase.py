"""Integer microsecond time base shared by every module."""

from decimal import Decimal, InvalidOperation
from typing import Union

US_PER_MS = 1000


def ms(value: Union[int, str, Decimal]) -> int:
    """Convert milliseconds to integer microseconds, rejecting sub-microsecond values"""
    try:
        micros = Decimal(str(value)) * US_PER_MS
    except InvalidOperation:
        raise ValueError(f"not a number: {value!r}")
    if not micros.is_finite():
        raise ValueError(f"{value} ms is not a finite duration")
    if micros != micros.to_integral_value():
        raise ValueError(f"{value} ms is not a whole number of microseconds")
    return int(micros)


def format_ms(micros: int) -> str:
    """Render microseconds as milliseconds without trailing zeros (31000 -> '31')"""
    quotient, remainder = divmod(micros, US_PER_MS)
    if remainder == 0:
        return str(quotient)
    text = str(Decimal(micros) / US_PER_MS)
    return text.rstrip("0").rstrip(".") if "." in text else text
