"""Exact Gaussian rationals: complex numbers with rational real and imaginary parts."""

from __future__ import annotations

import numbers
from fractions import Fraction


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction.from_float(x)
    return Fraction(x)


class GaussRat:
    """Exact element of Q(i).

    Mixing with ``int``/``Fraction`` stays exact; mixing with ``float`` or
    ``complex`` degrades to a Python ``complex``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _to_fraction(re)
        self.im = _to_fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        """Exact conversion; floats and complexes keep their binary value."""
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            return cls(Fraction.from_float(x.real), Fraction.from_float(x.imag))
        if isinstance(x, (numbers.Rational, float, str)):
            return cls(x, 0)
        if isinstance(x, numbers.Complex):
            x = complex(x)
            return cls(Fraction.from_float(x.real), Fraction.from_float(x.imag))
        raise TypeError(f"cannot convert {type(x).__name__} to GaussRat")

    @classmethod
    def dyadic(cls, z: complex, bits: int = 20) -> "GaussRat":
        """Round ``z`` to the grid 2**-bits (keeps exact coefficients small)."""
        den = 1 << bits
        return cls(Fraction(round(z.real * den), den), Fraction(round(z.imag * den), den))

    # arithmetic -------------------------------------------------------
    def _other(self, other):
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, numbers.Rational):
            return GaussRat(other, 0)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) + other if isinstance(other, numbers.Complex) else NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) - other if isinstance(other, numbers.Complex) else NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return other - complex(self) if isinstance(other, numbers.Complex) else NotImplemented
        return GaussRat(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) * other if isinstance(other, numbers.Complex) else NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) / other if isinstance(other, numbers.Complex) else NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return other / complex(self) if isinstance(other, numbers.Complex) else NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return complex(self) ** k
        if k < 0:
            return GaussRat(1) / self ** (-k)
        result, base = GaussRat(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return abs(complex(self))

    # comparisons / conversions ---------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, numbers.Rational):
            return self.im == 0 and self.re == other
        if isinstance(other, numbers.Complex):
            return complex(self) == complex(other)
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def __repr__(self):
        if self.im == 0:
            return f"GaussRat({self.re})"
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


numbers.Complex.register(GaussRat)
