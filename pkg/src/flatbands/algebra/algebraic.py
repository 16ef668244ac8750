"""Real algebraic numbers as (minimal polynomial, isolating interval)."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt

from .numberfield import NumberField
from .unipoly import (
    UniPoly,
    count_roots,
    factor_integer,
    isolate_intervals,
    primitive,
    sturm_sequence,
)


@total_ordering
class AlgebraicNumber:
    """A real root of an irreducible primitive integer polynomial.

    Rationals are the degree-one case and keep their exact value. Otherwise the
    root is the unique one in the half-open interval (lo, hi].
    """

    __slots__ = ("minpoly", "lo", "hi", "_seq", "_field")

    def __init__(self, minpoly: UniPoly, lo: Fraction, hi: Fraction):
        self.minpoly = primitive(minpoly)
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self._seq = None
        self._field = None
        if self.minpoly.degree == 1:
            r = Fraction(-self.minpoly[0], self.minpoly[1])
            self.lo = self.hi = r

    # construction ------------------------------------------------------
    @classmethod
    def rational(cls, q) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls(UniPoly((-q.numerator, q.denominator)), q, q)

    @classmethod
    def from_sqrt(cls, n) -> "AlgebraicNumber":
        """Positive square root of a nonnegative rational."""
        n = Fraction(n)
        if n < 0:
            raise ValueError("square root of a negative number is not real")
        a, b = isqrt(n.numerator), isqrt(n.denominator)
        if a * a == n.numerator and b * b == n.denominator:
            return cls.rational(Fraction(a, b))
        return real_roots(UniPoly((-n, 0, 1)))[-1][0]

    # basic queries -----------------------------------------------------
    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.lo

    def is_algebraic_integer(self) -> bool:
        return abs(self.minpoly.lc) == 1

    def is_totally_real(self) -> bool:
        return count_roots(sturm_sequence(self.minpoly)) == self.degree

    def is_zero(self) -> bool:
        return self.is_rational() and self.lo == 0

    def sturm(self):
        if self._seq is None:
            self._seq = sturm_sequence(self.minpoly)
        return self._seq

    def field(self) -> NumberField:
        if self._field is None:
            self._field = NumberField(self.minpoly)
        return self._field

    # refinement --------------------------------------------------------
    def refine(self, width) -> None:
        width = Fraction(width)
        seq = self.sturm()
        while self.hi - self.lo > width:
            mid = (self.lo + self.hi) / 2
            if self.minpoly(mid) == 0:
                # cannot happen for irreducible degree >= 2, kept for safety
                self.lo = self.hi = mid
                return
            if count_roots(seq, self.lo, mid) == 1:
                self.hi = mid
            else:
                self.lo = mid

    def approx(self, width=Fraction(1, 2**60)) -> Fraction:
        if not self.is_rational():
            self.refine(width)
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.approx())

    # comparison --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, AlgebraicNumber):
            try:
                other = AlgebraicNumber.rational(Fraction(other))
            except (TypeError, ValueError):
                return NotImplemented
        if self.minpoly != other.minpoly:
            return False
        if self.is_rational():
            return True
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo >= hi:
            return False
        return count_roots(self.sturm(), lo, hi) == 1

    def __hash__(self):
        return hash(self.minpoly)

    def __lt__(self, other):
        if not isinstance(other, AlgebraicNumber):
            other = AlgebraicNumber.rational(Fraction(other))
        if self == other:
            return False
        while True:
            if self.hi < other.lo or (self.hi == other.lo and not other.is_rational()):
                return True
            if other.hi < self.lo or (other.hi == self.lo and not self.is_rational()):
                return False
            if self.is_rational() and other.is_rational():
                return self.lo < other.lo
            for a in (self, other):
                if not a.is_rational():
                    a.refine((a.hi - a.lo) / 4)

    # arithmetic helpers -------------------------------------------------
    def affine(self, a, b) -> "AlgebraicNumber":
        """The number a + b*self for rationals a, b with b != 0."""
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            return AlgebraicNumber.rational(a)
        if self.is_rational():
            return AlgebraicNumber.rational(a + b * self.lo)
        # t = a + b x  <=>  x = (t - a) / b
        mp = primitive(self.minpoly.compose_affine(-a / b, 1 / b))
        # irrational roots never sit on rational endpoints, so the image of an
        # isolating interval isolates regardless of which end is open
        lo, hi = sorted((a + b * self.lo, a + b * self.hi))
        return AlgebraicNumber(mp, lo, hi)

    def __neg__(self):
        return self.affine(0, -1)

    # rendering ---------------------------------------------------------
    def __str__(self):
        if self.is_rational():
            return str(self.lo)
        if self.degree == 2:
            return _quadratic_closed_form(self)
        return f"root({self.minpoly.to_str('x')}, ({self.lo}, {self.hi}])"

    def __repr__(self):
        return f"AlgebraicNumber({self})"

    def to_dict(self) -> dict:
        return {
            "value": str(self),
            "minpoly": [int(c) for c in self.minpoly.coeffs],
            "interval": [str(self.lo), str(self.hi)],
            "approx": float(self),
        }


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * r with r square-free (n > 0); trial division is enough here."""
    s, r, p = 1, n, 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            s *= p
        p += 1
    return s, r


def _quadratic_closed_form(x: AlgebraicNumber) -> str:
    c, b, a = (int(v) for v in x.minpoly.coeffs)
    disc = b * b - 4 * a * c
    s, r = _squarefree_split(disc)
    # roots (-b +- s*sqrt(r)) / (2a); pick the sign by comparing with -b/(2a)
    centre = Fraction(-b, 2 * a)
    plus = x > AlgebraicNumber.rational(centre)
    den = 2 * a
    num0, coef = -b, s
    g = gcd(gcd(abs(den), abs(num0)), abs(coef))
    num0, coef, den = num0 // g, coef // g, den // g
    if den < 0:
        num0, coef, den = -num0, -coef, -den
    sign = "+" if plus == (coef > 0) else "-"
    coef = abs(coef)
    root = f"sqrt({r})" if coef == 1 else f"{coef}*sqrt({r})"
    if num0 == 0:
        body = root if sign == "+" else "-" + root
        return body if den == 1 else f"{body}/{den}"
    body = f"{num0}{sign}{root}"
    return body if den == 1 else f"({body})/{den}"


def real_roots(p: UniPoly) -> list[tuple[AlgebraicNumber, int]]:
    """Real roots of a nonzero rational polynomial with multiplicities, ascending."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    out = []
    for f, m in factor_integer(p):
        if f.degree == 1:
            out.append((AlgebraicNumber(f, 0, 0), m))
            continue
        for lo, hi in isolate_intervals(f):
            out.append((AlgebraicNumber(f, lo, hi), m))
    out.sort(key=lambda t: _SortKey(t[0]))
    return out


class _SortKey:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return self.x < other.x


def isolate_real_roots(p: UniPoly) -> list[tuple[AlgebraicNumber, int]]:
    return real_roots(p)


def count_nonreal_roots(p: UniPoly) -> int:
    """Number of non-real complex roots of p counted with multiplicity."""
    total = 0
    for f, m in factor_integer(p):
        total += m * (f.degree - count_roots(sturm_sequence(f)))
    return total
