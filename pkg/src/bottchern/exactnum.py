"""Exact Gaussian-rational scalars.

Every matrix entry in the package is a :class:`Scalar`, i.e. an element
``re + im*i`` of Q(i) with both parts stored as :class:`fractions.Fraction`.
No rounding ever happens, so equality is decidable and ranks are exact.

Textual syntax (used by every file format and by machine-readable output):

* a rational is written ``"a/b"``, or ``"a"`` when the denominator is 1;
* a Gaussian rational is the pair ``["re", "im"]`` of rational strings.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "Rational",
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "add",
    "mul",
    "inv",
    "conj",
    "as_scalar",
    "format_rational",
    "parse_rational",
    "format_scalar",
    "parse_scalar",
]

Rational = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


class Scalar:
    """An immutable element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "Scalar":
        s = object.__new__(cls)
        object.__setattr__(s, "re", re)
        object.__setattr__(s, "im", im)
        return s

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.re, self.im))

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return Scalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return Scalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return Scalar._raw(a * c, _F0)
            return Scalar._raw(a * c, a * d)
        if not d:
            return Scalar._raw(a * c, b * c)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def inverse(self) -> "Scalar":
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("inverse of zero scalar")
            return Scalar._raw(1 / a, _F0)
        norm = a * a + b * b
        return Scalar._raw(a / norm, -b / norm)

    def conjugate(self) -> "Scalar":
        if not self.im:
            return self
        return Scalar._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- comparison -----------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        if not self.im:
            return f"Scalar({format_rational(self.re)})"
        return f"Scalar({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return f"{format_rational(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"


def _coerce(x):
    if type(x) is Scalar:
        return x
    if isinstance(x, (int, _RationalABC)):
        return Scalar._raw(Fraction(x), _F0)
    if isinstance(x, complex):
        raise TypeError("floating-point complex numbers are not exact scalars")
    return NotImplemented


def as_scalar(x) -> Scalar:
    """Coerce an int, Fraction or Scalar to a Scalar."""
    s = _coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as an exact scalar")
    return s


ZERO = Scalar._raw(_F0, _F0)
ONE = Scalar._raw(_F1, _F0)
I = Scalar._raw(_F0, _F1)


def add(a: Scalar, b: Scalar) -> Scalar:
    return as_scalar(a) + as_scalar(b)


def mul(a: Scalar, b: Scalar) -> Scalar:
    return as_scalar(a) * as_scalar(b)


def inv(a: Scalar) -> Scalar:
    return as_scalar(a).inverse()


def conj(a: Scalar) -> Scalar:
    return as_scalar(a).conjugate()


# -- text syntax ---------------------------------------------------------

def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` (ints are accepted as a convenience)."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational string: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational string: {text!r}") from None
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_scalar(s: Scalar) -> list[str]:
    s = as_scalar(s)
    return [format_rational(s.re), format_rational(s.im)]


def parse_scalar(obj) -> Scalar:
    """Parse ``["re", "im"]``; a bare rational string is read as a real scalar."""
    if isinstance(obj, (list, tuple)):
        if len(obj) != 2:
            raise ValueError(f"complex scalar must be a [re, im] pair, got {obj!r}")
        return Scalar._raw(parse_rational(obj[0]), parse_rational(obj[1]))
    return Scalar._raw(parse_rational(obj), _F0)
