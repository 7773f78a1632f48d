"""Gaussian-rational scalars with an optional float64 mode.

A :class:`Scalar` holds a real and an imaginary part.  In exact mode both
parts are :class:`fractions.Fraction`; in float mode both are ``float``.
Python ``int`` values are neutral and combine with either mode.  Mixing an
exact scalar with a float one raises :class:`ModeError` instead of silently
coercing.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "ModeError", "I", "ONE", "ZERO", "as_scalar", "ipow"]


class ModeError(TypeError):
    """Raised when exact and float values are combined."""


def _part(value):
    if type(value) is Fraction or type(value) is float:
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, float):
        return float(value)
    raise TypeError(f"cannot use {type(value).__name__} as a scalar part")


def _new(re, im):
    s = object.__new__(Scalar)
    object.__setattr__(s, "re", re)
    object.__setattr__(s, "im", im)
    return s


class Scalar:
    """Complex number ``re + i*im`` over the rationals (or float64)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if type(re) is float or type(im) is float:
            for v in (re, im):
                if type(v) is not float and type(v) is not int:
                    raise ModeError("re and im must share a mode")
            re, im = float(re), float(im)
        else:
            re, im = _part(re), _part(im)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- construction helpers -------------------------------------------------
    @classmethod
    def from_complex(cls, z: complex) -> "Scalar":
        return _new(float(z.real), float(z.imag))

    @property
    def exact(self) -> bool:
        return type(self.re) is not float

    def to_float(self) -> "Scalar":
        return _new(float(self.re), float(self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "Scalar":
        return _new(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return abs(complex(self))

    def real(self) -> "Scalar":
        return _new(self.re, self.im * 0)

    def imag(self) -> "Scalar":
        return _new(self.im, self.re * 0)

    def scale(self, w) -> "Scalar":
        """Multiply by an exact rational weight in either mode."""
        if type(self.re) is float:
            w = float(w)
        return _new(self.re * w, self.im * w)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        t = type(other)
        if t is Scalar:
            if (type(self.re) is float) != (type(other.re) is float):
                raise ModeError("cannot mix exact and float scalars")
            return other
        if t is int:
            if type(self.re) is float:
                return _new(float(other), 0.0)
            return _new(Fraction(other), Fraction(0))
        if t is Fraction:
            if type(self.re) is float:
                raise ModeError("cannot mix a Fraction with a float scalar")
            return _new(other, Fraction(0))
        if t is float or t is complex:
            if type(self.re) is not float:
                raise ModeError("cannot mix a float with an exact scalar")
            return _new(float(other.real), float(other.imag))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return _new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return _new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return _new(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        t = type(other)
        if t is int or t is Fraction:
            if t is Fraction and type(self.re) is float:
                raise ModeError("cannot mix a Fraction with a float scalar")
            return _new(self.re * other, self.im * other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.re, self.im, o.re, o.im
        if d == 0:
            return _new(a * c, b * c)
        if b == 0:
            return _new(a * c, a * d)
        return _new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero scalar")
        num = self * o.conjugate()
        return _new(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return (ONE if self.exact else ONE.to_float()) / (self ** -n)
        result = _new(self.re * 0 + 1, self.im * 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if type(other) is Scalar:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction, float)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"Scalar({self.re})"
        return f"Scalar({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "-" if self.im < 0 else "+"
        return f"({self.re}{sign}{abs(self.im)}i)"


ZERO = Scalar(0, 0)
ONE = Scalar(1, 0)
I = Scalar(0, 1)

_IPOW = (ONE, I, Scalar(-1, 0), Scalar(0, -1))


def ipow(n: int) -> Scalar:
    """Exact ``i**n`` for any integer ``n``."""
    return _IPOW[n % 4]


def as_scalar(value, float_mode: bool = False) -> Scalar:
    """Coerce ints, Fractions, floats and complex numbers to a Scalar."""
    if type(value) is Scalar:
        return value.to_float() if float_mode else value
    if isinstance(value, complex):
        return Scalar.from_complex(value)
    if isinstance(value, float):
        return _new(value, 0.0)
    s = Scalar(value, 0)
    return s.to_float() if float_mode else s
