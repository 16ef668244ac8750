"""Sparse multivariate Laurent polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .gaussian import conj


def grlex_key(exp: Sequence[int]):
    """Graded lexicographic key (ascending); sort with reverse=True for printing."""
    return (sum(exp), tuple(exp))


class LaurentPoly:
    """Finitely supported map from integer exponent tuples to coefficients.

    ``nvars`` is the number of variables. Zero coefficients are never stored.
    Coefficients can be anything supporting exact field/ring arithmetic.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()):
        self.nvars = nvars
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        t = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong arity for {nvars} variables")
            if e in t:
                c = t[e] + c
            if c == 0:
                t.pop(e, None)
            else:
                t[e] = c
        self.terms = t

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    # constructors --------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, c, nvars: int) -> "LaurentPoly":
        return cls(nvars, [((0,) * nvars, c)])

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "LaurentPoly":
        return cls(len(exp), [(tuple(exp), c)])

    @classmethod
    def var(cls, i: int, nvars: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, [(tuple(e), 1)])

    # queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def coeff(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), 0)

    def support(self):
        return sorted(self.terms, key=grlex_key, reverse=True)

    def max_exp(self, i: int) -> int:
        return max(e[i] for e in self.terms)

    def min_exp(self, i: int) -> int:
        return min(e[i] for e in self.terms)

    def __len__(self):
        return len(self.terms)

    # arithmetic ----------------------------------------------------------
    def _check(self, other: "LaurentPoly"):
        if other.nvars != self.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars} variables")

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return LaurentPoly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t[e] + c if e in t else c
            if v == 0:
                t.pop(e, None)
            else:
                t[e] = v
        return LaurentPoly._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if other == 0:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly(self.nvars, ((e, c * other) for e, c in self.terms.items()))
        self._check(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in t:
                    t[e] = t[e] + v
                else:
                    t[e] = v
        return LaurentPoly._raw(self.nvars, {e: c for e, c in t.items() if c != 0})

    def __rmul__(self, other):
        if other == 0:
            return LaurentPoly.zero(self.nvars)
        return LaurentPoly(self.nvars, ((e, other * c) for e, c in self.terms.items()))

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            inv = Fraction(1, c) if isinstance(c, int) else 1 / c
            if isinstance(inv, Fraction) and inv.denominator == 1:
                inv = inv.numerator
            return LaurentPoly.monomial([-a * (-n) for a in e], inv ** (-n))
        out = LaurentPoly.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if other == 0:
                return not self.terms
            return self.is_constant() and self.constant_term() == other
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # transformations ------------------------------------------------------
    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial z^exp."""
        return LaurentPoly._raw(
            self.nvars, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()}
        )

    def involute(self, axes: Sequence[int] | None = None) -> "LaurentPoly":
        """Negate exponents on ``axes`` (default all) and conjugate coefficients."""
        ax = set(range(self.nvars)) if axes is None else set(axes)
        t = {}
        for e, c in self.terms.items():
            t[tuple(-a if i in ax else a for i, a in enumerate(e))] = conj(c)
        return LaurentPoly._raw(self.nvars, t)

    def map_coeffs(self, f) -> "LaurentPoly":
        return LaurentPoly(self.nvars, ((e, f(c)) for e, c in self.terms.items()))

    def split(self, axes: Sequence[int]) -> dict:
        """Group terms by the exponents on ``axes``.

        Returns a dict mapping those exponents to LaurentPoly in the remaining
        variables (in their original order).
        """
        axes = list(axes)
        rest = [i for i in range(self.nvars) if i not in axes]
        groups: dict = {}
        for e, c in self.terms.items():
            k = tuple(e[i] for i in axes)
            groups.setdefault(k, {})[tuple(e[i] for i in rest)] = c
        return {k: LaurentPoly._raw(len(rest), v) for k, v in groups.items()}

    def substitute(self, values: Mapping[int, object]) -> "LaurentPoly":
        """Substitute exact scalars for some variables (negative powers use 1/v)."""
        t: dict = {}
        for e, c in self.terms.items():
            v = c
            for i, x in values.items():
                p = e[i]
                if p > 0:
                    v = v * x**p
                elif p < 0:
                    v = v / x ** (-p)
            ne = tuple(0 if i in values else a for i, a in enumerate(e))
            t[ne] = t[ne] + v if ne in t else v
        return LaurentPoly(self.nvars, t.items())

    def evaluate(self, point: Sequence) -> complex:
        """Numeric evaluation at complex values (all variables)."""
        total = 0j
        for e, c in self.terms.items():
            term = complex(c) if not isinstance(c, (int,)) else complex(c)
            for x, p in zip(point, e):
                term *= x**p
            total += term
        return total

    # rendering ------------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = ["z"] if self.nvars == 1 else [f"z{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in self.support():
            c = self.terms[e]
            mono = "*".join(
                n if p == 1 else f"{n}^{p}" if p > 0 else f"{n}^({p})"
                for n, p in zip(names, e)
                if p != 0
            )
            s = str(c)
            if not mono:
                parts.append(s)
            elif s == "1":
                parts.append(mono)
            elif s == "-1":
                parts.append("-" + mono)
            else:
                if " " in s and not s.startswith("("):
                    s = f"({s})"
                parts.append(f"{s}*{mono}")
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.to_str()})"


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.nvars != b.nvars:
        raise ValueError(f"dimension mismatch: {a.nvars} vs {b.nvars} variables")
    return a * b


def laurent_involute(a: LaurentPoly) -> LaurentPoly:
    return a.involute()


def matrix_mul(a, b, nvars: int):
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = LaurentPoly.zero(nvars)
            for t in range(m):
                if a[i][t].terms and b[t][j].terms:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def determinant(mat, nvars: int) -> LaurentPoly:
    """Determinant of a square matrix of LaurentPoly by memoized Laplace
    expansion along rows (O(n 2^n) products, fine for n up to ~10)."""
    n = len(mat)
    if n == 0:
        return LaurentPoly.const(1, nvars)
    # dp[mask] = det of rows 0..popcount(mask)-1 restricted to columns in mask
    dp = {0: LaurentPoly.const(1, nvars)}
    for row in range(n):
        nxt = {}
        for mask, val in dp.items():
            if val.is_zero():
                continue
            # sign from the position of the new column among the chosen ones
            for col in range(n):
                if mask >> col & 1:
                    continue
                entry = mat[row][col]
                if entry.is_zero():
                    continue
                above = bin(mask >> (col + 1)).count("1")
                term = val * entry
                if above % 2:
                    term = -term
                nm = mask | (1 << col)
                nxt[nm] = nxt[nm] + term if nm in nxt else term
        dp = nxt
    return dp.get((1 << n) - 1, LaurentPoly.zero(nvars))
