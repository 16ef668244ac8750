"""On-site potentials that create or destroy flat bands.

p(z; Q, lam) = det(A(z) + diag(Q) - lam I) = sum_r p_r(Q, lam) z^r with
symbolic Q_0..Q_{nu-1}. A constant nonzero p_r rules out flat bands for
every potential; for nu = 2 the full locus is computed exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.gaussian import Gaussian
from .algebra.algebraic import AlgebraicNumber, real_roots
from .algebra.laurent import LaurentPoly, determinant, grlex_key
from .algebra.unipoly import UniPoly
from .eigenvectors import field_for
from .floquet import FlatBandReport, build_symbol, detect_flat_bands, lift_matrix
from .graph import GraphError, PeriodicGraph, require_valid


@dataclass
class CoefficientSystem:
    dimension: int
    nu: int
    coeffs: dict  # r -> LaurentPoly in (Q_0..Q_{nu-1}, lam)

    @property
    def exponents(self) -> list:
        return sorted(self.coeffs, key=grlex_key, reverse=True)

    def p(self, r) -> LaurentPoly:
        return self.coeffs.get(tuple(r), LaurentPoly.zero(self.nu + 1))

    def names(self) -> list:
        return [f"Q{i}" for i in range(self.nu)] + ["lam"]

    def evaluate(self, r, q, lam):
        vals = {i: x for i, x in enumerate(q)}
        vals[self.nu] = lam
        return self.p(r).substitute(vals).constant_term()

    def to_dict(self) -> dict:
        out = []
        for r in self.exponents:
            poly = self.coeffs[r]
            mons = [
                {"exponents": list(e), "coeff": str(poly.terms[e])} for e in poly.support()
            ]
            out.append({"r": list(r), "text": poly.to_str(self.names()), "monomials": mons})
        return {"dimension": self.dimension, "nu": self.nu, "variables": self.names(), "coefficients": out}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def coefficient_system(g: PeriodicGraph) -> CoefficientSystem:
    """Symbolic determinant of A(z) + diag(Q) - lam I (the graph's own potential is ignored)."""
    require_valid(g)
    d, n = g.dimension, g.nu
    bare = PeriodicGraph(g.dimension, g.nu, g.edges)
    nv = d + n + 1
    mat = lift_matrix(build_symbol(bare).entries, n + 1)
    lam = LaurentPoly.var(d + n, nv)
    for i in range(n):
        mat[i][i] = mat[i][i] + LaurentPoly.var(d + i, nv) - lam
    det = determinant(mat, nv)
    return CoefficientSystem(d, n, det.split(range(d)))


@dataclass
class Certificate:
    r: tuple
    value: object

    def __str__(self):
        return f"coefficient of z^{list(self.r)} is the nonzero constant {self.value}"


def empty_locus_certificate(cs: CoefficientSystem):
    """First r (graded-lex descending) whose p_r is a nonzero constant, else None."""
    zero = (0,) * cs.dimension
    for r in cs.exponents:
        if r == zero:
            continue
        p = cs.coeffs[r]
        if not p.is_zero() and p.is_constant():
            return Certificate(r, p.constant_term())
    return None


def detect_with_potential(g: PeriodicGraph, q) -> FlatBandReport:
    if len(q) != g.nu:
        raise GraphError(f"potential needs {g.nu} entries, got {len(q)}")
    return detect_flat_bands(g.with_potential([Fraction(x) for x in q]))


# ---------------------------------------------------------------- nu = 2


def _plus(name: str, a: AlgebraicNumber) -> str:
    if a.is_zero():
        return name
    s = str(a)
    if s.startswith("-"):
        sign, s = "-", s[1:]
    else:
        sign = "+"
    if any(op in s for op in "+-") and not s.startswith("("):
        s = f"({s})"
    return f"{name} {sign} {s}"


@dataclass
class Nu2Line:
    """Potentials with Q1 = Q0 + c; the flat value there is lam = Q0 - x0.

    x0 = Q0 - lam and y0 = Q1 - lam are exact (rational or quadratic).
    """

    x0: AlgebraicNumber
    y0: AlgebraicNumber
    c: AlgebraicNumber  # y0 - x0

    def contains(self, q) -> bool:
        return AlgebraicNumber.rational(Fraction(q[1]) - Fraction(q[0])) == self.c

    def flat_value(self, q0) -> AlgebraicNumber:
        return self.x0.affine(Fraction(q0), -1)

    def describe(self) -> str:
        return f"Q1 = {_plus('Q0', self.c)}, flat band lam = {_plus('Q0', -self.x0)}"

    def to_dict(self) -> dict:
        return {"c": self.c.to_dict(), "x0": self.x0.to_dict(), "y0": self.y0.to_dict(), "text": self.describe()}


@dataclass
class Nu2Locus:
    kind: str  # "empty", "lines" or "all"
    lines: list = field(default_factory=list)
    reason: str = ""
    certificate: Certificate | None = None

    def is_empty(self) -> bool:
        return self.kind == "empty"

    def contains(self, q) -> bool:
        if self.kind == "all":
            return True
        return any(line.contains(q) for line in self.lines)

    def describe(self) -> str:
        if self.kind == "empty":
            return f"empty: {self.reason}"
        if self.kind == "all":
            return f"every potential: {self.reason}"
        return "\n".join(line.describe() for line in self.lines)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "reason": self.reason,
            "lines": [line.to_dict() for line in self.lines],
            "text": self.describe(),
        }


def _parts(c) -> tuple:
    if isinstance(c, Gaussian):
        return Fraction(c.re), Fraction(c.im)
    return Fraction(c), Fraction(0)


def _affine_rows(cs: CoefficientSystem, r) -> list:
    """p_r = m + alpha (Q0 - lam) + beta (Q1 - lam); real and imaginary rows [alpha, beta, -m]."""
    p = cs.p(r)
    m = p.coeff((0, 0, 0))
    alpha = p.coeff((1, 0, 0))
    beta = p.coeff((0, 1, 0))
    expect = LaurentPoly(3, [((0, 0, 0), m), ((1, 0, 0), alpha), ((0, 1, 0), beta), ((0, 0, 1), -alpha - beta)])
    if p != expect:
        raise ArithmeticError(f"coefficient {r} is not affine in (Q0 - lam, Q1 - lam)")
    m, alpha, beta = _parts(m), _parts(alpha), _parts(beta)
    return [(alpha[k], beta[k], -m[k]) for k in (0, 1)]


def _solve_rows(rows):
    """Row-reduce [a, b | g] rows; returns (status, data)."""
    mat = [list(r) for r in rows]
    piv = []
    ri = 0
    for col in (0, 1):
        p = next((i for i in range(ri, len(mat)) if mat[i][col] != 0), None)
        if p is None:
            continue
        mat[ri], mat[p] = mat[p], mat[ri]
        f = mat[ri][col]
        mat[ri] = [x / f for x in mat[ri]]
        for i in range(len(mat)):
            if i != ri and mat[i][col] != 0:
                h = mat[i][col]
                mat[i] = [a - h * b for a, b in zip(mat[i], mat[ri])]
        piv.append(col)
        ri += 1
    for row in mat[ri:]:
        if row[2] != 0:
            return "inconsistent", None
    return "ok", (piv, mat[:ri])


def _verify_point(cs: CoefficientSystem, x, y) -> bool:
    """All p_r vanish at Q0 = x, Q1 = y, lam = 0 (x, y in a common field)."""
    return all(cs.p(r).substitute({0: x, 1: y, 2: 0}).constant_term() == 0 for r in cs.coeffs)


def nu2_locus(g: PeriodicGraph) -> Nu2Locus:
    """Exact set of potentials (Q0, Q1) for which a nu = 2 graph has a flat band."""
    if g.nu != 2:
        raise GraphError("nu2_locus needs nu = 2")
    cs = coefficient_system(g)
    zero = (0,) * g.dimension
    cert = empty_locus_certificate(cs)
    if cert is not None:
        return Nu2Locus("empty", reason=str(cert), certificate=cert)
    p0 = cs.p(zero)
    n = p0.coeff((0, 0, 0))
    hyper = LaurentPoly(3, [((1, 1, 0), 1), ((1, 0, 1), -1), ((0, 1, 1), -1), ((0, 0, 2), 1), ((0, 0, 0), n)])
    if p0 != hyper:
        raise ArithmeticError("constant coefficient is not (Q0 - lam)(Q1 - lam) + n")
    n, n_im = _parts(n)
    if n_im != 0:
        raise ArithmeticError("constant coefficient has a non-real part")
    rows = []
    for r in cs.exponents:
        if r != zero:
            rows.extend(_affine_rows(cs, r))
    status, data = _solve_rows(rows)
    if status == "inconsistent":
        return Nu2Locus("empty", reason="the affine coefficient equations are inconsistent")
    piv, red = data
    # candidate points as x0 with y0 = s + t x0
    points = []
    if len(piv) == 2:
        x0, y0 = red[0][2], red[1][2]
        if x0 * y0 + n != 0:
            return Nu2Locus("empty", reason=f"unique solution x={x0}, y={y0} misses x*y + {n} = 0")
        points.append((x0, y0, Fraction(0)))
    elif len(piv) == 1:
        a, b, gam = red[0]
        if piv[0] == 1:
            a, b = Fraction(0), Fraction(1)
        if b == 0:
            x0 = gam / a
            if x0 == 0:
                if n != 0:
                    return Nu2Locus("empty", reason=f"x = 0 forces n = {n} to vanish")
                return Nu2Locus("all", reason="flat band lam = Q0 for every potential")
            points.append((x0, -n / x0, Fraction(0)))
        else:
            # y = (gam - a x) / b on x y + n = 0  =>  -a x^2 + gam x + n b = 0
            quad = UniPoly((n * b, gam, -a))
            if quad.is_zero():
                return Nu2Locus("all", reason=f"flat band along {a}(Q0-lam) + {b}(Q1-lam) = {gam}")
            for xv, _ in real_roots(quad):
                points.append((xv, gam / b, -a / b))
            if not points:
                return Nu2Locus("empty", reason="the constraint line misses the hyperbola x*y + n = 0")
    else:
        return Nu2Locus("all", reason="no non-constant coefficient constrains the potential")
    lines = []
    for x0, s, t in points:
        if not isinstance(x0, AlgebraicNumber):
            x0 = AlgebraicNumber.rational(x0)
        _, xe = field_for(x0)
        if not _verify_point(cs, xe, s + t * xe):
            raise ArithmeticError("locus point failed verification")
        lines.append(Nu2Line(x0, x0.affine(s, t), x0.affine(s, t - 1)))
    return Nu2Locus("lines", lines, reason=f"{len(lines)} line(s)")
