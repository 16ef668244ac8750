"""Floquet symbol, exact characteristic polynomial and flat-band detection,
plus numeric band sampling and a finite-torus cross-check."""

from __future__ import annotations

import csv
import io
import itertools
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra.algebraic import AlgebraicNumber, real_roots
from .algebra.gaussian import Gaussian, imag_part, real_part
from .algebra.laurent import LaurentPoly, determinant
from .algebra.unipoly import UniPoly, field_gcd, primitive
from .graph import GraphError, PeriodicGraph, is_connected, require_valid
from .jacobi import jacobi_eigvalsh


class DisconnectedGraphError(GraphError):
    pass


# ---------------------------------------------------------------- symbol


@dataclass
class FloquetSymbol:
    """nu x nu matrix of Laurent polynomials in z_1..z_d (exact coefficients)."""

    graph: PeriodicGraph
    entries: list

    @property
    def nu(self) -> int:
        return len(self.entries)

    @property
    def dimension(self) -> int:
        return self.graph.dimension

    def numeric(self, theta) -> np.ndarray:
        z = [np.exp(2j * np.pi * t) for t in theta]
        return np.array([[h.evaluate(z) for h in row] for row in self.entries])

    def is_hermitian(self) -> bool:
        n = self.nu
        return all(self.entries[j][i] == self.entries[i][j].involute() for i in range(n) for j in range(n))

    def __str__(self):
        return "[" + ",\n ".join("[" + ", ".join(str(h) for h in row) + "]" for row in self.entries) + "]"


def build_symbol(g: PeriodicGraph, potential=None) -> FloquetSymbol:
    """h_ij(z) = Q_i [i=j] + sum over k in I_ij of w_ij(k) z^k."""
    require_valid(g)
    d, n = g.dimension, g.nu
    pot = g.potential if potential is None else potential
    ent = [[LaurentPoly.zero(d) for _ in range(n)] for _ in range(n)]
    for i, j, k, w in g.directed_edges():
        ent[i][j] = ent[i][j] + LaurentPoly.monomial(k, w)
    for i in range(n):
        if pot[i] != 0:
            ent[i][i] = ent[i][i] + Fraction(pot[i])
    return FloquetSymbol(g, ent)


# ---------------------------------------------------------------- char poly


@dataclass
class CharPoly:
    """p(z; lam) = det(H(z) - lam I) = sum_k c_k(lam) z^k."""

    dimension: int
    nu: int
    coeffs: dict  # exponent tuple -> UniPoly in lam

    @property
    def exponents(self) -> list:
        return sorted(self.coeffs)

    def c(self, k) -> UniPoly:
        return self.coeffs.get(tuple(k), UniPoly())

    def real_stack(self) -> list:
        """Real and imaginary parts of every c_k as rational polynomials."""
        out = []
        for p in self.coeffs.values():
            re = p.map(real_part)
            im = p.map(imag_part)
            for q in (re, im):
                if not q.is_zero():
                    out.append(q)
        return out

    def to_laurent(self) -> LaurentPoly:
        terms = []
        for k, p in self.coeffs.items():
            for e, c in enumerate(p.coeffs):
                if c != 0:
                    terms.append((k + (e,), c))
        return LaurentPoly(self.dimension + 1, terms)

    def __str__(self):
        names = (["z"] if self.dimension == 1 else [f"z{i + 1}" for i in range(self.dimension)]) + ["lam"]
        return self.to_laurent().to_str(names)


def lift_matrix(entries, extra: int) -> list:
    """Append ``extra`` zero exponents to every entry (new trailing variables)."""
    out = []
    for row in entries:
        r = []
        for h in row:
            r.append(LaurentPoly(h.nvars + extra, ((e + (0,) * extra, c) for e, c in h.terms.items())))
        out.append(r)
    return out


def char_poly(s: FloquetSymbol) -> CharPoly:
    d, n = s.dimension, s.nu
    mat = lift_matrix(s.entries, 1)
    lam = LaurentPoly.var(d, d + 1)
    for i in range(n):
        mat[i][i] = mat[i][i] - lam
    det = determinant(mat, d + 1)
    coeffs = {}
    for k, part in det.split(range(d)).items():
        deg = max(e[0] for e in part.terms)
        c = [0] * (deg + 1)
        for (e,), v in part.terms.items():
            c[e] = v
        coeffs[k] = UniPoly(c)
    return CharPoly(d, n, coeffs)


# ---------------------------------------------------------------- detection


@dataclass
class FlatBand:
    value: AlgebraicNumber
    multiplicity: int
    eigenvector: object = None

    def to_dict(self) -> dict:
        d = self.value.to_dict()
        d["multiplicity"] = self.multiplicity
        return d


@dataclass
class FlatBandReport:
    bands: list
    gcd: UniPoly
    charpoly: CharPoly
    quotient_level: bool = False
    graph: PeriodicGraph | None = None

    def values(self) -> list:
        return [b.value for b in self.bands]

    def multiplicities(self) -> dict:
        return {str(b.value): b.multiplicity for b in self.bands}

    def is_empty(self) -> bool:
        return not self.bands

    def __contains__(self, x) -> bool:
        if not isinstance(x, AlgebraicNumber):
            x = AlgebraicNumber.rational(x)
        return any(b.value == x for b in self.bands)

    def to_dict(self) -> dict:
        out = {
            "flat_bands": [b.to_dict() for b in self.bands],
            "gcd": [int(c) for c in self.gcd.coeffs],
        }
        if self.quotient_level:
            out["quotient_level"] = True
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def flat_band_gcd(cp: CharPoly) -> UniPoly:
    g = UniPoly()
    for q in cp.real_stack():
        g = field_gcd(g, q) if not g.is_zero() else q.monic()
        if g.degree == 0:
            break
    return primitive(g)


def detect_flat_bands(g: PeriodicGraph, force: bool = False) -> FlatBandReport:
    """Exact flat bands: real roots of the gcd of all coefficients c_k(lam)."""
    require_valid(g)
    quotient = False
    if not is_connected(g):
        if not force:
            raise DisconnectedGraphError("the periodic graph is disconnected; pass force=True to analyse anyway")
        warnings.warn("disconnected periodic graph: reporting quotient-level flat bands", stacklevel=2)
        quotient = True
    cp = char_poly(build_symbol(g))
    gg = flat_band_gcd(cp)
    bands = []
    if gg.degree > 0:
        bands = [FlatBand(v, m) for v, m in real_roots(gg)]
    return FlatBandReport(bands, gg, cp, quotient, g)


# ---------------------------------------------------------------- numerics


def numeric_blocks(g: PeriodicGraph, thetas: np.ndarray, potential=None) -> np.ndarray:
    """Stack of Bloch matrices H(theta) for theta in the rows of ``thetas``."""
    pts = np.atleast_2d(np.asarray(thetas, dtype=float))
    n = g.nu
    out = np.zeros((pts.shape[0], n, n), dtype=complex)
    for i, j, k, w in g.directed_edges():
        wc = complex(w) if isinstance(w, Gaussian) else float(w)
        out[:, i, j] += wc * np.exp(2j * np.pi * (pts @ np.asarray(k, dtype=float)))
    pot = g.potential if potential is None else potential
    for i in range(n):
        out[:, i, i] += float(pot[i])
    return out


@dataclass
class BandSample:
    grid: int
    thetas: np.ndarray  # (P, d)
    energies: np.ndarray  # (P, nu), sorted per row
    bound: float = 0.0
    tol: float = 1e-9
    meta: dict = field(default_factory=dict)

    @property
    def nu(self) -> int:
        return self.energies.shape[1]

    def band_ranges(self) -> list:
        return [(float(self.energies[:, j].min()), float(self.energies[:, j].max())) for j in range(self.nu)]

    def flat_flags(self, tol: float | None = None) -> list:
        tol = self.tol if tol is None else tol
        return [hi - lo < tol for lo, hi in self.band_ranges()]

    def flat_values(self, tol: float | None = None) -> list:
        """Values present at every grid point, with the minimal count over the
        grid as multiplicity. Unlike flat_flags this also catches flat bands
        crossed by dispersive ones."""
        tol = self.tol if tol is None else tol
        cands = []
        for v in self.energies[0]:
            if all(abs(v - c) > tol for c in cands):
                cands.append(float(v))
        out = []
        for c in cands:
            counts = (np.abs(self.energies - c) < tol).sum(axis=1)
            m = int(counts.min())
            if m > 0:
                out.append((float(np.mean(self.energies[np.abs(self.energies - c) < tol])), m))
        return sorted(out)

    def summary(self) -> dict:
        ranges = self.band_ranges()
        flags = self.flat_flags()
        return {
            "grid": self.grid,
            "tolerance": self.tol,
            "bands": [
                {"index": j + 1, "min": lo, "max": hi, "range": hi - lo, "flat": flag}
                for j, ((lo, hi), flag) in enumerate(zip(ranges, flags))
            ],
            "flat_values": [{"value": v, "multiplicity": m} for v, m in self.flat_values()],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        d = self.thetas.shape[1]
        w.writerow([f"theta_{i + 1}" for i in range(d)] + [f"E_{j + 1}" for j in range(self.nu)])
        for t, e in zip(self.thetas, self.energies):
            w.writerow([repr(float(x)) for x in t] + [repr(float(x)) for x in e])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2)


def gershgorin_bound(g: PeriodicGraph) -> float:
    rows = [abs(float(q)) for q in g.potential]
    for i, _, _, w in g.directed_edges():
        rows[i] += abs(complex(w)) if isinstance(w, Gaussian) else abs(float(w))
    return max(rows) if rows else 0.0


def sample_bands(g: PeriodicGraph, grid: int, tol: float = 1e-9) -> BandSample:
    """Eigenvalues of H(theta) on the grid {0, 1/M, ..., (M-1)/M}^d."""
    if grid < 2:
        raise ValueError("grid resolution must be at least 2")
    require_valid(g)
    axes = [np.arange(grid) / grid] * g.dimension
    thetas = np.array(list(itertools.product(*axes)), dtype=float)
    energies = jacobi_eigvalsh(numeric_blocks(g, thetas))
    bound = gershgorin_bound(g)
    if np.abs(energies).max() > bound + 1e-8:
        raise ArithmeticError("sampled eigenvalue exceeds the Gershgorin bound")
    return BandSample(grid, thetas, energies, bound, tol)


TORUS_LIMIT = 4096


def torus_matrix(g: PeriodicGraph, n: int) -> np.ndarray:
    d, nu = g.dimension, g.nu
    size = nu * n**d
    if size > TORUS_LIMIT:
        raise ValueError(f"torus has {size} vertices, limit is {TORUS_LIMIT}")
    cells = list(itertools.product(range(n), repeat=d))
    index = {c: t for t, c in enumerate(cells)}
    mat = np.zeros((size, size), dtype=complex)
    for c in cells:
        base = index[c] * nu
        for i in range(nu):
            mat[base + i, base + i] += float(g.potential[i])
        for i, j, k, w in g.directed_edges():
            wc = complex(w) if isinstance(w, Gaussian) else float(w)
            tgt = tuple((a + b) % n for a, b in zip(c, k))
            mat[base + i, index[tgt] * nu + j] += wc
    return mat


def torus_oracle(g: PeriodicGraph, n: int, lam, tol: float = 1e-7) -> int:
    """How many eigenvalues of the N-torus quotient lie within tol of lam."""
    ev = np.linalg.eigvalsh(torus_matrix(g, n))
    return int(np.sum(np.abs(ev - float(lam)) < tol))
