"""Dense univariate polynomials over exact fields, with the integer toolbox
(gcd, square-free decomposition, Sturm sequences, factorization)."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Sequence

import mpmath


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


class UniPoly:
    """Polynomial with coefficients stored low degree first.

    Coefficients may be ints, Fractions, Gaussian numbers or number-field
    elements; trailing zeros are stripped so the zero polynomial has no
    coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _coerce(self, other):
        return other if isinstance(other, UniPoly) else UniPoly((other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    def __rmul__(self, other):
        return UniPoly(other * c for c in self.coeffs)

    def __pow__(self, n: int):
        out = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly((other,))
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lc = _div(1, other.lc)
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c * inv_lc
            quot[i - dq] = f
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] = rem[i - dq + j] - f * b
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: "UniPoly") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = _div(1, self.lc)
        return UniPoly(c * inv for c in self.coeffs)

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def taylor_shift(self, a) -> "UniPoly":
        """Coefficients of p(a + t) as a polynomial in t."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] = c[j] + a * c[j + 1]
        return UniPoly(c)

    def compose_affine(self, a, b) -> "UniPoly":
        """p(a + b t)."""
        shifted = self.taylor_shift(a)
        out, scale = [], 1
        for c in shifted.coeffs:
            out.append(c * scale)
            scale = scale * b
        return UniPoly(out)

    def map(self, f) -> "UniPoly":
        return UniPoly(f(c) for c in self.coeffs)

    def multiplicity_of_root(self, r) -> int:
        """Largest m with (x - r)^m dividing self (self nonzero)."""
        m, p = 0, self
        lin = UniPoly((-r, 1))
        while True:
            q, rem = p.divmod(lin)
            if not rem.is_zero():
                return m
            m, p = m + 1, q

    def to_str(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            s = str(c)
            if i == 0:
                term = s
            else:
                mono = var if i == 1 else f"{var}^{i}"
                if s == "1":
                    term = mono
                elif s == "-1":
                    term = "-" + mono
                else:
                    term = f"{s}*{mono}"
            parts.append(term)
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __str__(self):
        return self.to_str("x")

    def __repr__(self):
        return f"UniPoly({list(map(str, self.coeffs))})"


# ---------------------------------------------------------------- integer layer


def _lcm(a: int, b: int) -> int:
    return a * b // igcd(a, b) if a and b else 0


def content(p: UniPoly) -> Fraction:
    """Positive rational content: gcd of numerators over lcm of denominators."""
    if p.is_zero():
        return Fraction(0)
    num, den = 0, 1
    for c in p.coeffs:
        c = Fraction(c)
        num = igcd(num, c.numerator)
        den = _lcm(den, c.denominator)
    return Fraction(num, den)


def primitive(p: UniPoly) -> UniPoly:
    """Primitive integer polynomial with positive leading coefficient."""
    if p.is_zero():
        return p
    c = content(p)
    if p.lc < 0:
        c = -c
    return UniPoly(int(Fraction(a) / c) for a in p.coeffs)


def field_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over the coefficient field (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def unipoly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Primitive integer gcd of two rational polynomials."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    return primitive(field_gcd(a, b))


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm over Q: monic factors f_i with p = lc * prod f_i^i."""
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = field_gcd(p, dp)
    b = p // a
    c = dp // a
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = field_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    out = UniPoly((1,))
    for f, _ in squarefree_decomposition(p):
        out = out * f
    return out


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Sequence[int]) -> int:
    s = [v for v in signs if v != 0]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def sign_variations_at(seq: list[UniPoly], x) -> int:
    return _variations([_sign(q(x)) for q in seq])


def sign_variations_at_infinity(seq: list[UniPoly], positive: bool) -> int:
    signs = []
    for q in seq:
        s = _sign(q.lc)
        if not positive and q.degree % 2:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_roots(seq: list[UniPoly], lo=None, hi=None) -> int:
    """Distinct real roots in (lo, hi]; None means the corresponding infinity."""
    vlo = sign_variations_at_infinity(seq, False) if lo is None else sign_variations_at(seq, lo)
    vhi = sign_variations_at_infinity(seq, True) if hi is None else sign_variations_at(seq, hi)
    return vlo - vhi


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every complex root has modulus < the returned value."""
    lc = Fraction(p.lc)
    return 1 + max((abs(Fraction(c) / lc) for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_intervals(p: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals (lo, hi] for the real roots of a square-free p, ascending.

    Intervals are dyadic with width at most 1, so roots of modulus >= 1 get
    integer endpoints.
    """
    seq = sturm_sequence(p)
    b = 1
    while b < root_bound(p):
        b *= 2
    out = []
    stack = [(Fraction(-b), Fraction(b))]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1 and hi - lo <= 1:
            out.append((lo, hi))
            continue
        mid = Fraction(lo + hi, 2)
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


# ------------------------------------------------------------ factorization


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def numeric_roots(p: UniPoly, dps: int = 60) -> list:
    """High-precision complex roots of a square-free rational polynomial."""
    if p.degree < 1:
        return []
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator for c in reversed(p.coeffs)]
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps + 20 * p.degree)
    return list(roots)


def rational_roots(p: UniPoly) -> list[Fraction]:
    """All rational roots of a nonzero rational polynomial (distinct, ascending)."""
    q = primitive(squarefree_part(p))
    if q.degree < 1:
        return []
    found = set()
    if q.coeffs[0] == 0:
        found.add(Fraction(0))
        q = q // UniPoly((0, 1))
    lc = q.lc
    dens = _divisors(lc)
    for r in numeric_roots(q):
        if abs(mpmath.im(r)) > mpmath.mpf(10) ** -20:
            continue
        x = mpmath.re(r)
        for b in dens:
            cand = Fraction(int(mpmath.nint(x * b)), b)
            if q(cand) == 0:
                found.add(cand)
                break
    return sorted(found)


def _near_integer_poly(vals, tol):
    out = []
    for v in vals:
        n = mpmath.nint(mpmath.re(v))
        if abs(v - n) > tol:
            return None
        out.append(int(n))
    return out


def _factor_squarefree_primitive(q: UniPoly) -> list[UniPoly]:
    """Irreducible factors of a square-free primitive integer polynomial."""
    if q.degree <= 0:
        return []
    out = []
    for r in rational_roots(q):
        lin = primitive(UniPoly((-r, 1)))
        out.append(lin)
        q = primitive(q.exact_div(lin))
    if q.degree <= 0:
        return out
    if q.degree <= 3:
        return out + [q]
    dps = 60 + 4 * q.degree
    with mpmath.workdps(dps):
        roots = numeric_roots(q, dps)
        tol = mpmath.mpf(10) ** (-(dps // 3))
        remaining = list(range(len(roots)))
        cur = q
        size = 2
        while cur.degree >= 2 * size:
            hit = None
            for subset in itertools.combinations(remaining, size):
                prod = [mpmath.mpc(cur.lc)]
                for idx in subset:
                    r = roots[idx]
                    new = [mpmath.mpc(0)] * (len(prod) + 1)
                    for k, a in enumerate(prod):
                        new[k + 1] += a
                        new[k] -= a * r
                    prod = new
                ints = _near_integer_poly(prod, tol)
                if ints is None:
                    continue
                cand = primitive(UniPoly(ints))
                if cand.degree == size and cand.divides(cur):
                    hit = (subset, cand)
                    break
            if hit is None:
                size += 1
                continue
            subset, cand = hit
            out.append(cand)
            cur = primitive(cur.exact_div(cand))
            remaining = [i for i in remaining if i not in subset]
        if cur.degree > 0:
            out.append(cur)
    return out


def factor_integer(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Factor a nonzero rational polynomial into primitive irreducible integer
    factors with multiplicities (constant factors dropped), sorted by degree."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for f, m in squarefree_decomposition(p):
        for g in _factor_squarefree_primitive(primitive(f)):
            out.append((g, m))
    out.sort(key=lambda t: (t[0].degree, [int(c) for c in t[0].coeffs], t[1]))
    return out


def is_irreducible(p: UniPoly) -> bool:
    fs = factor_integer(p)
    return len(fs) == 1 and fs[0][1] == 1


def charpoly_faddeev(mat: Sequence[Sequence]) -> UniPoly:
    """det(x*I - M) by the Faddeev-LeVerrier recursion (exact field entries)."""
    n = len(mat)
    if n == 0:
        return UniPoly((1,))
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A * M_{k-1} + c_{n-k+1} I
        prev = mk
        mk = [[sum(mat[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            mk[i][i] = mk[i][i] + coeffs[n - k + 1]
        am = [[sum(mat[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(am[i][i] for i in range(n))
        coeffs[n - k] = Fraction(-tr, k) if isinstance(tr, int) else -tr / k
    return UniPoly(coeffs)
