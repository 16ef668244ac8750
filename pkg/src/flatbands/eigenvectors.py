"""Compactly supported eigenvectors for flat bands.

A kernel vector of H(z) - lam0 I with Laurent-polynomial entries is found via
Cayley-Hamilton, then unfolded into a finitely supported lattice vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra.algebraic import AlgebraicNumber
from .algebra.gaussian import Gaussian
from .algebra.laurent import LaurentPoly, matrix_mul
from .algebra.numberfield import NFElement, NumberField
from .algebra.unipoly import UniPoly, field_gcd
from .floquet import CharPoly, FloquetSymbol, build_symbol, char_poly, detect_flat_bands
from .graph import PeriodicGraph


class SynthesisError(ArithmeticError):
    """The Cayley-Hamilton construction found no kernel column."""


def field_for(value: AlgebraicNumber):
    """(field, element representing value): Q for rationals, else Q(value)."""
    if value.is_rational():
        return None, value.as_fraction()
    k = value.field()
    return k, k.gen()


# ---------------------------------------------------------------- scalar helpers


def _rational_parts(c) -> list:
    out = []
    for part in (c.re, c.im) if isinstance(c, Gaussian) else (c,):
        if isinstance(part, NFElement):
            out.extend(part.rational_coeffs())
        else:
            out.append(Fraction(part))
    return out


def scalar_content(values) -> Fraction:
    num, den = 0, 1
    for c in values:
        for q in _rational_parts(c):
            if q != 0:
                num = gcd(num, q.numerator)
                den = den * q.denominator // gcd(den, q.denominator)
    return Fraction(num, den) if num else Fraction(1)


def _clean(c):
    """Drop a vanishing imaginary part so scalars stay in the smallest ring."""
    if isinstance(c, Gaussian) and c.im == 0:
        return c.re
    return c


def scalar_to_dict(c) -> dict:
    def enc(x):
        if isinstance(x, NFElement):
            return [str(q) for q in x.rational_coeffs()]
        return [str(Fraction(x))]

    if isinstance(c, Gaussian):
        return {"re": enc(c.re), "im": enc(c.im)}
    return {"re": enc(c), "im": ["0"]}


def scalar_to_complex(c, alpha: float | None) -> complex:
    def ev(x):
        if isinstance(x, NFElement):
            return x.evaluate(alpha)
        return float(x)

    if isinstance(c, Gaussian):
        return complex(ev(c.re), ev(c.im))
    return complex(ev(c))


# ---------------------------------------------------------------- types


@dataclass
class SymbolVector:
    value: AlgebraicNumber
    field: NumberField | None
    lam: object  # value as an element of the field
    entries: list  # LaurentPoly per vertex
    symbol: FloquetSymbol

    def is_kernel_vector(self) -> bool:
        return is_kernel_vector(self.symbol, self.lam, self.entries)


@dataclass
class CompactEigenvector:
    value: AlgebraicNumber
    field: NumberField | None
    lam: object
    entries: dict  # (vertex, offset tuple) -> nonzero scalar
    window: tuple  # per-axis half-width (nu - 1) * h_i

    @property
    def dimension(self) -> int:
        return len(self.window)

    def support_cells(self) -> list:
        return sorted({k for _, k in self.entries})

    def in_window(self) -> bool:
        return all(abs(a) <= w for _, k in self.entries for a, w in zip(k, self.window))

    def is_single_cell(self) -> bool:
        return len(self.support_cells()) == 1

    def translate(self, t) -> "CompactEigenvector":
        ent = {(p, tuple(a + b for a, b in zip(k, t))): c for (p, k), c in self.entries.items()}
        return CompactEigenvector(self.value, self.field, self.lam, ent, self.window)

    def refold(self, nu: int) -> list:
        """f_p(z) = sum_k psi_p(k) z^{-k}."""
        d = self.dimension
        polys = [LaurentPoly.zero(d) for _ in range(nu)]
        for (p, k), c in self.entries.items():
            polys[p] = polys[p] + LaurentPoly.monomial(tuple(-a for a in k), c)
        return polys

    def numeric(self) -> dict:
        alpha = float(self.value) if self.field is not None else None
        return {key: scalar_to_complex(c, alpha) for key, c in self.entries.items()}

    def to_dict(self) -> dict:
        return {
            "value": self.value.to_dict(),
            "field_minpoly": [int(c) for c in self.field.minpoly.coeffs] if self.field else [0, 1],
            "window": list(self.window),
            "entries": [
                {"vertex": p, "offset": list(k), "value": scalar_to_dict(c)}
                for (p, k), c in sorted(self.entries.items())
            ],
        }


# ---------------------------------------------------------------- synthesis


def _identity(n, d, scalar=1):
    return [[LaurentPoly.const(scalar, d) if i == j else LaurentPoly.zero(d) for j in range(n)] for i in range(n)]


def _shifted_symbol(symbol: FloquetSymbol, lam) -> list:
    n, d = symbol.nu, symbol.dimension
    return [[symbol.entries[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]


def is_kernel_vector(symbol: FloquetSymbol, lam, f: list) -> bool:
    b = _shifted_symbol(symbol, lam)
    col = [[x] for x in f]
    return all(row[0].is_zero() for row in matrix_mul(b, col, symbol.dimension))


def _normalize(col: list, d: int, reduce: bool) -> list:
    nz = [f for f in col if not f.is_zero()]
    # common monomial
    lo = [min(f.min_exp(r) for f in nz) for r in range(d)]
    col = [f.shift([-a for a in lo]) for f in col]
    if reduce and d == 1:
        polys = []
        for f in col:
            c = [0] * (max(e[0] for e in f.terms) + 1) if f.terms else []
            for (e,), v in f.terms.items():
                c[e] = v
            polys.append(UniPoly(c))
        g = UniPoly()
        for p in polys:
            if not p.is_zero():
                g = field_gcd(g, p) if not g.is_zero() else p.monic()
        if g.degree > 0:
            polys = [p.exact_div(g) if not p.is_zero() else p for p in polys]
            col = [LaurentPoly(1, (((e,), v) for e, v in enumerate(p.coeffs))) for p in polys]
            nz = [f for f in col if not f.is_zero()]
            shift = min(f.min_exp(0) for f in nz)
            col = [f.shift([-shift]) for f in col]
    cont = scalar_content(c for f in col for c in f.terms.values())
    return [f.map_coeffs(lambda c: _clean(c / cont)) for f in col]


def synthesize_symbol_eigenvector(
    symbol: FloquetSymbol,
    value: AlgebraicNumber,
    multiplicity: int,
    cp: CharPoly | None = None,
    reduce: bool | None = None,
) -> SymbolVector:
    """Kernel vector of H(z) - lam0 I via Cayley-Hamilton on B = H - lam0 I.

    With det(B - mu I) = mu^m q(z; mu), the smallest n < m with B^n q(B) != 0
    and B^(n+1) q(B) = 0 gives kernel columns; the first nonzero one is used.
    The column is divided by its common monomial and rational content; with
    ``reduce`` (default: only when d == 1) it is also divided by the gcd of
    its entries, which usually shrinks the support.
    """
    if reduce is None:
        reduce = symbol.dimension == 1
    n, d = symbol.nu, symbol.dimension
    fld, lam = field_for(value)
    if cp is None:
        cp = char_poly(symbol)
    m = multiplicity
    # a_j(z) for det(B - mu I) = sum_j a_j(z) mu^j
    a = [LaurentPoly.zero(d) for _ in range(n + 1)]
    for k, p in cp.coeffs.items():
        sh = p.taylor_shift(lam)
        for j, c in enumerate(sh.coeffs):
            c = _clean(c)
            if c != 0:
                if j < m:
                    raise SynthesisError(f"{value} is not a flat band of multiplicity {m}")
                a[j] = a[j] + LaurentPoly.monomial(k, c)
    if a[m].is_zero():
        raise SynthesisError(f"{value} has multiplicity larger than {m}")
    b = _shifted_symbol(symbol, lam)
    q = _identity(n, d, 0)
    for j in range(n, m - 1, -1):
        q = matrix_mul(q, b, d) if j < n else q
        if not a[j].is_zero():
            for i in range(n):
                q[i][i] = q[i][i] + a[j]
    cur = q
    for _ in range(m):
        if all(x.is_zero() for row in cur for x in row):
            break
        nxt = matrix_mul(b, cur, d)
        if all(x.is_zero() for row in nxt for x in row):
            for jcol in range(n):
                column = [cur[i][jcol] for i in range(n)]
                if any(not x.is_zero() for x in column):
                    f = _normalize(column, d, reduce)
                    return SymbolVector(value, fld, lam, f, symbol)
        cur = nxt
    raise SynthesisError("Cayley-Hamilton construction produced no kernel column")


def unfold(f: SymbolVector) -> CompactEigenvector:
    """psi_p(m) = coefficient of z^{-m} in f_p, recentred on its bounding box."""
    if not f.is_kernel_vector():
        raise SynthesisError("vector is not in the kernel of H(z) - lam0 I")
    d = f.symbol.dimension
    raw = {}
    for p, poly in enumerate(f.entries):
        for e, c in poly.terms.items():
            raw[(p, tuple(-a for a in e))] = c
    if not raw:
        raise SynthesisError("zero vector")
    shift = []
    for r in range(d):
        lo = min(k[r] for _, k in raw)
        hi = max(k[r] for _, k in raw)
        shift.append((lo + hi) // 2)
    ent = {(p, tuple(a - s for a, s in zip(k, shift))): c for (p, k), c in raw.items()}
    h = f.symbol.graph.hopping_range()
    window = tuple((f.symbol.nu - 1) * x for x in h)
    return CompactEigenvector(f.value, f.field, f.lam, ent, window)


def verify_eigenvector(g: PeriodicGraph, v: CompactEigenvector, lam=None) -> bool:
    """Exact check of (H psi)(r) = lam psi(r) on the support and its 1-hop neighbourhood."""
    if not v.entries or all(c == 0 for c in v.entries.values()):
        return False
    if lam is None:
        lam = v.lam
    elif isinstance(lam, AlgebraicNumber):
        if lam != v.value:
            if not lam.is_rational():
                return False
            lam = lam.as_fraction()
        else:
            lam = v.lam
    psi = v.entries
    edges = list(g.directed_edges())
    cells = set()
    for (p, m) in psi:
        cells.add(m)
        for _, j, k, _ in edges:
            if j == p:
                cells.add(tuple(a - b for a, b in zip(m, k)))
    for r in cells:
        for i in range(g.nu):
            acc = (g.potential[i] - lam) * psi.get((i, r), 0)
            for ii, j, k, w in edges:
                if ii != i:
                    continue
                val = psi.get((j, tuple(a + b for a, b in zip(r, k))))
                if val is not None:
                    acc = acc + w * val
            if acc != 0:
                return False
    return True


def eigenvectors_for(g: PeriodicGraph, report=None, reduce: bool | None = None) -> list:
    """Synthesize, unfold and attach a compact eigenvector to every band."""
    if report is None:
        report = detect_flat_bands(g)
    symbol = build_symbol(g)
    out = []
    for band in report.bands:
        sv = synthesize_symbol_eigenvector(symbol, band.value, band.multiplicity, report.charpoly, reduce)
        ev = unfold(sv)
        band.eigenvector = ev
        out.append(ev)
    return out
