"""Local symmetries of the fundamental cell and the flat bands they force.

A permutation phi of the cell is a local symmetry when the non-constant part
of the symbol has equal rows i and phi(i) (so A(z) - eps is constant on the
blocks of the cycle partition). On the orthogonal complement of the cycle
indicators A(z) then acts through the constant part alone, which yields
single-cell flat bands.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .eigenvectors import CompactEigenvector, verify_eigenvector
from .finite import exact_eigenpairs
from .floquet import build_symbol
from .graph import GraphError, PeriodicGraph, require_valid

MODES = ("strict", "equitable")
SEARCH_LIMIT = 10


@dataclass(frozen=True)
class LocalSymmetry:
    perm: tuple
    cycles: tuple  # all cycles including fixed points, each as a tuple
    mode: str

    @property
    def r(self) -> int:
        return len(self.cycles)

    def notation(self) -> str:
        nontrivial = [c for c in self.cycles if len(c) > 1]
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial) or "()"

    def __str__(self):
        return self.notation()


def cycles_of(perm) -> tuple:
    seen, out = set(), []
    for s in range(len(perm)):
        if s in seen:
            continue
        c, v = [], s
        while v not in seen:
            seen.add(v)
            c.append(v)
            v = perm[v]
        out.append(tuple(c))
    return tuple(out)


def _parts(g: PeriodicGraph):
    """Non-constant hopping rows and the constant matrix C = eps + diag(Q)."""
    n = g.nu
    zero = (0,) * g.dimension
    sets = g.index_sets()
    rows = []
    const = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        row = []
        for j in range(n):
            d = sets.get((i, j), {})
            row.append(frozenset((k, w) for k, w in d.items() if k != zero))
            if zero in d:
                const[i][j] = d[zero]
        rows.append(tuple(row))
        const[i][i] = const[i][i] + g.potential[i]
    return rows, const


def _block_of(cycles, n):
    b = [0] * n
    for s, c in enumerate(cycles):
        for v in c:
            b[v] = s
    return b


def _check(perm, rows, const, mode) -> bool:
    n = len(perm)
    if any(rows[i] != rows[perm[i]] for i in range(n)):
        return False
    if mode == "strict":
        return all(const[i][j] == const[perm[i]][perm[j]] for i in range(n) for j in range(n))
    cycles = cycles_of(perm)
    for src in cycles:
        for dst in cycles:
            sums = {sum((const[i][j] for j in dst), Fraction(0)) for i in src}
            if len(sums) > 1:
                return False
    return True


def is_local_symmetry(g: PeriodicGraph, perm, mode: str = "equitable") -> bool:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    rows, const = _parts(g)
    return _check(tuple(perm), rows, const, mode)


def find_local_symmetries(g: PeriodicGraph, mode: str = "equitable") -> list:
    """All non-identity permutations satisfying the local symmetry condition."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    require_valid(g)
    n = g.nu
    if n > SEARCH_LIMIT:
        raise ValueError(f"symmetry search limited to nu <= {SEARCH_LIMIT}")
    rows, const = _parts(g)
    # phi can only move i within the class of vertices with the same row
    classes: dict = {}
    for i in range(n):
        classes.setdefault(rows[i], []).append(i)
    groups = list(classes.values())
    out = []
    for choice in itertools.product(*(itertools.permutations(grp) for grp in groups)):
        perm = [0] * n
        for grp, img in zip(groups, choice):
            for a, b in zip(grp, img):
                perm[a] = b
        perm = tuple(perm)
        if perm == tuple(range(n)):
            continue
        if _check(perm, rows, const, mode):
            out.append(LocalSymmetry(perm, cycles_of(perm), mode))
    out.sort(key=lambda s: s.perm)
    return out


def w_invariant(g: PeriodicGraph, sym: LocalSymmetry) -> bool:
    """A(z) maps each cycle indicator into the span of the indicators, i.e.
    (A(z) 1_X)(i) depends only on the cycle containing i."""
    s = build_symbol(g)
    n = g.nu
    block = _block_of(sym.cycles, n)
    for cyc in sym.cycles:
        vec = [sum((s.entries[i][j] for j in cyc), 0 * s.entries[0][0]) for i in range(n)]
        for c in sym.cycles:
            if len({vec[i] for i in c}) > 1:
                return False
    return True


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def complement_basis(cycles, n) -> list:
    """Orthogonal rational basis of the complement of the cycle indicators,
    completing with standard vectors in index order (Gram-Schmidt)."""
    basis = []
    for c in cycles:
        basis.append([Fraction(1) if v in c else Fraction(0) for v in range(n)])
    comp = []
    for e in range(n):
        v = [Fraction(1) if k == e else Fraction(0) for k in range(n)]
        for b in basis + comp:
            f = _dot(v, b) / _dot(b, b)
            v = [x - f * y for x, y in zip(v, b)]
        if any(x != 0 for x in v):
            comp.append(v)
    return comp


def symmetry_flat_bands(g: PeriodicGraph, sym: LocalSymmetry) -> list:
    """Flat bands forced by a local symmetry: eigenvalues of the constant part
    compressed to the complement of the cycle indicators, each with a verified
    single-cell eigenvector. Returns [(value, CompactEigenvector), ...]."""
    n = g.nu
    if sym.r == n:
        raise GraphError("trivial symmetry: every cycle is a fixed point")
    if not is_local_symmetry(g, sym.perm, sym.mode):
        raise GraphError(f"{sym} is not a local symmetry of this graph")
    _, const = _parts(g)
    comp = complement_basis(sym.cycles, n)
    m = len(comp)
    cu = [[sum((const[i][t] * u[t] for t in range(n)), Fraction(0)) for i in range(n)] for u in comp]
    mat = [[_dot(comp[a], cu[b]) / _dot(comp[a], comp[a]) for b in range(m)] for a in range(m)]
    zero = (0,) * g.dimension
    window = tuple((n - 1) * h for h in g.hopping_range())
    out = []
    for pair in exact_eigenpairs(mat):
        for coeffs in pair.basis:
            psi = [sum((coeffs[b] * comp[b][i] for b in range(m)), 0) for i in range(n)]
            ent = {(i, zero): c for i, c in enumerate(psi) if c != 0}
            vec = CompactEigenvector(pair.value, pair.field, pair.lam, ent, window)
            if not verify_eigenvector(g, vec):
                raise ArithmeticError(f"symmetry eigenvector for {pair.value} failed verification")
            out.append((pair.value, vec))
    return out
