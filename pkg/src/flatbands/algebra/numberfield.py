"""Arithmetic in Q[x]/(m) for an irreducible rational polynomial m."""

from __future__ import annotations

from fractions import Fraction

from .unipoly import UniPoly, primitive


class NumberField:
    """The field Q(alpha) with alpha a root of the irreducible ``minpoly``.

    Elements do not know which real root alpha denotes; identities proven in
    the field hold for every conjugate simultaneously.
    """

    def __init__(self, minpoly: UniPoly):
        if minpoly.degree < 1:
            raise ValueError("number field needs a polynomial of positive degree")
        self.minpoly = primitive(minpoly)
        self._monic = self.minpoly.monic()
        self.degree = self.minpoly.degree

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(("NumberField", self.minpoly))

    def __repr__(self):
        return f"NumberField({self.minpoly.to_str('a')})"

    def element(self, coeffs) -> "NFElement":
        p = UniPoly(Fraction(c) for c in coeffs)
        if p.degree >= self.degree:
            p = p % self._monic
        return NFElement(self, p)

    def gen(self) -> "NFElement":
        return self.element((0, 1))

    def one(self) -> "NFElement":
        return self.element((1,))

    def zero(self) -> "NFElement":
        return self.element(())

    def __call__(self, x) -> "NFElement":
        if isinstance(x, NFElement):
            if x.field != self:
                raise ValueError("element belongs to a different number field")
            return x
        return self.element((x,))


class NFElement:
    __slots__ = ("field", "poly")

    def __init__(self, field: NumberField, poly: UniPoly):
        self.field = field
        self.poly = poly

    def _lift(self, other):
        if isinstance(other, NFElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixing elements of different number fields")
            return other.poly
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, self.poly + o)

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, -self.poly)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, self.poly - o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, o - self.poly)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prod = self.poly * o
        if prod.degree >= self.field.degree:
            prod = prod % self.field._monic
        return NFElement(self.field, prod)

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        return field_inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in number field")
            return NFElement(self.field, self.poly * (1 / Fraction(other)))
        if isinstance(other, NFElement):
            return self * field_inverse(other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return field_inverse(self) * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return field_inverse(self) ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.poly == o

    def __hash__(self):
        if self.poly.degree <= 0:
            return hash(self.poly[0])
        return hash(self.poly)

    def is_rational(self) -> bool:
        return self.poly.degree <= 0

    def rational_coeffs(self) -> tuple:
        """Power-basis coordinates (length = field degree)."""
        return tuple(Fraction(self.poly[i]) for i in range(self.field.degree))

    def conjugate(self):
        return self

    def evaluate(self, alpha):
        """Numeric value given a numeric approximation of the generator."""
        acc = 0
        for c in reversed(self.poly.coeffs):
            acc = acc * alpha + float(c)
        return acc

    def __repr__(self):
        return f"NFElement({self.poly.to_str('a')})"

    def __str__(self):
        return self.poly.to_str("a")


def field_inverse(x: NFElement) -> NFElement:
    """Inverse in Q[a]/(m) via the extended Euclidean algorithm."""
    if x.poly.is_zero():
        raise ZeroDivisionError("zero has no inverse in a number field")
    m = x.field._monic
    r0, r1 = m, x.poly
    s0, s1 = UniPoly(), UniPoly((1,))
    while r1.degree > 0:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r1.is_zero():
        raise ZeroDivisionError("element is not invertible: modulus is reducible")
    inv = s1 * (1 / Fraction(r1[0]))
    return NFElement(x.field, inv % m if inv.degree >= m.degree else inv)
