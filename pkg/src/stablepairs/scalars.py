"""Scalar coefficients in the two arithmetic modes.

Exact mode uses Gaussian rationals: a pair of arbitrary-precision
``fractions.Fraction`` values (real, imaginary).  All ring operations are
closed, so no rounding can ever occur on the exact path.  Float mode uses
the ordinary Python ``complex``.

A polynomial or group element is uniformly in one mode; helper functions
here parse, coerce and serialize scalars for both.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ExactnessError

EXACT = "exact"
FLOAT = "float"


class QQi:
    """Gaussian rational a + b*i with Fraction components.

    Immutable and hashable; supports +, -, *, /, unary -, ==, and
    conversion to ``complex``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("QQi is immutable")

    def __add__(self, other):
        other = _as_qqi(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_qqi(other)
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_qqi(other) - self

    def __mul__(self, other):
        other = _as_qqi(other)
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_qqi(other)
        den = other.re * other.re + other.im * other.im
        if den == 0:
            raise ZeroDivisionError("division by zero QQi")
        return QQi(
            (self.re * other.re + self.im * other.im) / den,
            (self.im * other.re - self.re * other.im) / den,
        )

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (QQi, int, Fraction)):
            other = _as_qqi(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"QQi({self.re!s}, {self.im!s})"

    def conjugate(self):
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2 as an exact Fraction."""
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


QQI_ZERO = QQi(0, 0)
QQI_ONE = QQi(1, 0)


def _as_qqi(x) -> QQi:
    if isinstance(x, QQi):
        return x
    if isinstance(x, (int, Fraction)):
        return QQi(x, 0)
    raise ExactnessError(f"cannot coerce {type(x).__name__} to exact scalar")


def coerce_scalar(x, mode: str):
    """Coerce x into the coefficient type of the given mode.

    Exact mode accepts QQi, int and Fraction; floats and complex values are
    rejected rather than approximated.  Float mode accepts anything complex()
    accepts, including QQi.
    """
    if mode == EXACT:
        return _as_qqi(x)
    if mode == FLOAT:
        if isinstance(x, QQi):
            return x.to_complex()
        return complex(x)
    raise ValueError(f"unknown mode {mode!r}")


def scalar_is_zero(x) -> bool:
    if isinstance(x, QQi):
        return not x
    return x == 0


def scalar_to_complex(x) -> complex:
    return x.to_complex() if isinstance(x, QQi) else complex(x)


def parse_fraction(s) -> Fraction:
    """Parse "p/q" (or a plain integer string/int) into a Fraction."""
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    raise ExactnessError(f"exact component must be int or 'p/q' string, got {s!r}")


def format_fraction(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)
