"""Complex scalars for the two numeric backends.

Exact values are Gaussian rationals (:class:`ExactComplex`), floating values
are plain Python ``complex``.  The two never mix silently: arithmetic between
an :class:`ExactComplex` and a ``float``/``complex`` raises ``TypeError``.
Integers and :class:`fractions.Fraction` promote to exact.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "ExactComplex",
    "EXACT",
    "FLOAT",
    "as_exact",
    "as_float",
    "abs2",
    "backend_of",
    "check_finite",
    "is_zero",
    "parse_rational",
]

EXACT = "exact"
FLOAT = "float"


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction (decimals are rejected)."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"exact scalar must be an integer or p/q, got {text!r}")
    return Fraction(text)


class ExactComplex:
    """Gaussian rational ``re + i*im`` with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _rat(re))
        object.__setattr__(self, "im", _rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ExactComplex(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return _mixed(self, other)
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return _mixed(self, other)
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return _mixed(self, other)
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return _mixed(self, other)
        return ExactComplex(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return _mixed(self, other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("exact complex division by zero")
        num = self * o.conjugate()
        return ExactComplex(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return _mixed(self, other)
        return o / self

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ExactComplex(1) / (self ** (-k))
        out = ExactComplex(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.sqrt(self.abs2())

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"ExactComplex({self.re})"
        return f"ExactComplex({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def _mixed(a, b):
    raise TypeError(
        f"mixed exact/floating arithmetic: {type(a).__name__} with "
        f"{type(b).__name__}; convert explicitly with as_exact/as_float"
    )


def as_exact(x) -> ExactComplex:
    """Convert an int, Fraction, ``"p/q"`` string or ExactComplex to exact."""
    if isinstance(x, ExactComplex):
        return x
    if isinstance(x, tuple) and len(x) == 2:
        return ExactComplex(x[0], x[1])
    return ExactComplex(_rat(x))


def as_float(x) -> complex:
    if isinstance(x, ExactComplex):
        return complex(x)
    z = complex(x)
    check_finite(z)
    return z


def check_finite(z: complex) -> complex:
    if not cmath.isfinite(z):
        raise ValueError(f"non-finite scalar {z!r}")
    return z


def backend_of(x) -> str:
    if isinstance(x, ExactComplex):
        return EXACT
    if isinstance(x, (float, complex)):
        return FLOAT
    if isinstance(x, (int, Fraction)):
        return EXACT
    if hasattr(x, "dtype"):
        return FLOAT
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def abs2(x):
    """|x|^2, exact (Fraction) for exact input."""
    if isinstance(x, ExactComplex):
        return x.abs2()
    return x.real * x.real + x.imag * x.imag


def is_zero(x, tol: float = 0.0) -> bool:
    if isinstance(x, ExactComplex):
        return not x
    return abs(x) <= tol
