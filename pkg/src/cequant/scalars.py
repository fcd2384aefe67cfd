"""Exact scalars: rationals (gmpy2 ``mpq``) and Gaussian rationals with an hbar power."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .errors import ArgumentError

__all__ = ["mpq", "to_rational", "format_rational", "ScaledCoefficient"]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def to_rational(value) -> mpq:
    """Convert ``value`` (int, Fraction, mpq or ``"num/den"`` string) to ``mpq``.

    Floats are rejected: every quantity in this package is exact.
    """
    if isinstance(value, bool):
        raise ArgumentError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)) or type(value) is type(mpq(0)):
        return mpq(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if not m:
            raise ArgumentError(f"malformed rational {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ArgumentError(f"zero denominator in {value!r}")
        return mpq(num, den)
    raise ArgumentError(f"not a rational: {value!r}")


def format_rational(value) -> str:
    """Canonical string form: ``"3/2"``, ``"-1"``, ``"0"``."""
    q = mpq(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ScaledCoefficient:
    """A Gaussian rational ``re + i*im`` times ``hbar**hpow``."""

    re: mpq
    im: mpq = mpq(0)
    hpow: int = 0

    def __post_init__(self):
        object.__setattr__(self, "re", to_rational(self.re))
        object.__setattr__(self, "im", to_rational(self.im))
        if not isinstance(self.hpow, int) or self.hpow < 0:
            raise ArgumentError(f"hbar power must be a non-negative int, got {self.hpow!r}")

    def __add__(self, other: "ScaledCoefficient") -> "ScaledCoefficient":
        if self.hpow != other.hpow:
            raise ArgumentError("cannot add coefficients with different hbar powers")
        return ScaledCoefficient(self.re + other.re, self.im + other.im, self.hpow)

    def __mul__(self, other: "ScaledCoefficient") -> "ScaledCoefficient":
        return ScaledCoefficient(self.re * other.re - self.im * other.im,
                                 self.re * other.im + self.im * other.re,
                                 self.hpow + other.hpow)

    def __neg__(self) -> "ScaledCoefficient":
        return ScaledCoefficient(-self.re, -self.im, self.hpow)

    def conjugate(self) -> "ScaledCoefficient":
        # hbar is real
        return ScaledCoefficient(self.re, -self.im, self.hpow)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self) -> str:
        if self.im == 0:
            body = format_rational(self.re)
        elif self.re == 0:
            body = f"{format_rational(self.im)}i"
        else:
            body = f"({format_rational(self.re)}{'+' if self.im > 0 else '-'}{format_rational(abs(self.im))}i)"
        if self.hpow == 0:
            return body
        return f"{body}*hbar^{self.hpow}" if self.hpow > 1 else f"{body}*hbar"
