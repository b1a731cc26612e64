"""Exact rational I/O: ``"p/q"`` strings with integer shorthand, no floats."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"3"``, ``"-7/2"`` etc.  Decimal or float input is rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"expected a 'p/q' string, got {type(text).__name__}")
    m = _RATIONAL.match(text)
    if not m:
        raise ValueError(f"not an exact rational: {text!r} (use 'p/q' or an integer)")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_rationals(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational(part) for part in text.split(","))


def fmt(q: Fraction | int) -> str:
    """Lowest terms, positive denominator; integers print without ``/1``."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_all(qs: Iterable[Fraction]) -> list[str]:
    return [fmt(q) for q in qs]


def random_rational(rng, bound: int = 12, max_den: int = 6) -> Fraction:
    """A small random rational ``p/q`` with ``|p| <= bound``, ``1 <= q <= max_den``."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))
