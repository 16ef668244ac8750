"""Gaussian numbers a + b*i over an exact real field (rationals or a real number field)."""

from __future__ import annotations

from fractions import Fraction


def conj(x):
    """Complex conjugate of an exact scalar; real scalars are returned unchanged."""
    return x.conjugate() if isinstance(x, Gaussian) else x


def real_part(x):
    return x.re if isinstance(x, Gaussian) else x


def imag_part(x):
    return x.im if isinstance(x, Gaussian) else 0


def is_zero(x) -> bool:
    return x == 0


class Gaussian:
    """Element re + im*i with ``re``/``im`` in a real exact field.

    Mixed arithmetic with int, Fraction and number-field elements is supported.
    Results with a vanishing imaginary part stay Gaussian; use :func:`simplify`
    to drop back to the real field.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Gaussian) or isinstance(im, Gaussian):
            re, im = (real_part(re) - imag_part(im)), (imag_part(re) + real_part(im))
        self.re = re
        self.im = im

    @staticmethod
    def _parts(other):
        if isinstance(other, Gaussian):
            return other.re, other.im
        return other, 0

    def __add__(self, other):
        a, b = self._parts(other)
        return Gaussian(self.re + a, self.im + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._parts(other)
        return Gaussian(self.re - a, self.im - b)

    def __rsub__(self, other):
        a, b = self._parts(other)
        return Gaussian(a - self.re, b - self.im)

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, Gaussian):
            a, b = other.re, other.im
            return Gaussian(self.re * a - self.im * b, self.re * b + self.im * a)
        return Gaussian(self.re * other, self.im * other)

    __rmul__ = __mul__

    def norm(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian number")
        return Gaussian(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, Gaussian):
            return self * other.inverse()
        return Gaussian(self.re / other, self.im / other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def __eq__(self, other):
        try:
            a, b = self._parts(other)
        except Exception:  # pragma: no cover
            return NotImplemented
        return self.re == a and self.im == b

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Gaussian({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re} + {self.im}*i)"


I = Gaussian(0, 1)


def simplify(x):
    """Collapse a Gaussian with zero imaginary part to its real part."""
    if isinstance(x, Gaussian) and x.im == 0:
        return x.re
    return x


def to_complex(x) -> complex:
    if isinstance(x, Gaussian):
        return complex(float(x.re), float(x.im))
    return complex(float(x))


def parse_rational(text) -> Fraction:
    return Fraction(str(text).strip())
