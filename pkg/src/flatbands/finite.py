"""Finite simple graphs and exact eigen-decomposition of small matrices."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .algebra.algebraic import AlgebraicNumber, real_roots
from .algebra.gaussian import Gaussian
from .algebra.unipoly import UniPoly, charpoly_faddeev


@dataclass(frozen=True)
class FiniteGraph:
    n: int
    edges: frozenset  # pairs (a, b) with a < b
    name: str = ""

    @classmethod
    def from_edges(cls, n: int, edges, name: str = "") -> "FiniteGraph":
        es = set()
        for a, b in edges:
            if a == b:
                raise ValueError("finite graphs have no loops")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge {(a, b)} out of range")
            es.add((min(a, b), max(a, b)))
        return cls(n, frozenset(es), name)

    def adjacency(self) -> list:
        a = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            a[u][v] = a[v][u] = 1
        return a

    def neighbours(self, v: int) -> list:
        return sorted([b for a, b in self.edges if a == v] + [a for a, b in self.edges if b == v])

    def degrees(self) -> list:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = {0}
        queue = deque([0])
        adj = self.adjacency()
        while queue:
            u = queue.popleft()
            for v in range(self.n):
                if adj[u][v] and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.n

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def is_bipartite(self) -> bool:
        colour = {}
        adj = self.adjacency()
        for s in range(self.n):
            if s in colour:
                continue
            colour[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in range(self.n):
                    if adj[u][v]:
                        if v not in colour:
                            colour[v] = 1 - colour[u]
                            queue.append(v)
                        elif colour[v] == colour[u]:
                            return False
        return True

    def label(self) -> str:
        if self.name:
            return self.name
        return f"n={self.n} " + ",".join(f"{a}-{b}" for a, b in sorted(self.edges))

    def __str__(self):
        return self.label()


def path(n: int) -> FiniteGraph:
    return FiniteGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def cycle(n: int) -> FiniteGraph:
    return FiniteGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def complete(n: int) -> FiniteGraph:
    return FiniteGraph.from_edges(n, itertools.combinations(range(n), 2), f"K{n}")


def parse_graph_spec(spec: str) -> FiniteGraph:
    """'P3', 'C4', 'K3', or 'n:edges' such as '4:0-1,1-2,2-3'."""
    s = spec.strip()
    if s[:1] in "PCK" and s[1:].isdigit():
        n = int(s[1:])
        return {"P": path, "C": cycle, "K": complete}[s[0]](n)
    if ":" in s:
        head, tail = s.split(":", 1)
        edges = []
        for part in filter(None, tail.split(",")):
            a, b = part.split("-")
            edges.append((int(a), int(b)))
        return FiniteGraph.from_edges(int(head), edges)
    raise ValueError(f"cannot parse finite graph {spec!r}")


# ---------------------------------------------------------------- exact linear algebra


def nullspace(mat: list) -> list:
    """Basis of the right kernel over the coefficient field (RREF, free vars = 1)."""
    rows = [list(r) for r in mat]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c] if not isinstance(rows[r][c], int) else Fraction(1, rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * nc
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def _real_charpoly(mat) -> UniPoly:
    cp = charpoly_faddeev(mat)
    out = []
    for c in cp.coeffs:
        if isinstance(c, Gaussian):
            if c.im != 0:
                raise ArithmeticError("characteristic polynomial is not real")
            c = c.re
        out.append(Fraction(c))
    return UniPoly(out)


@dataclass
class ExactEigenpair:
    value: AlgebraicNumber
    basis: list  # kernel vectors of A - value*I over Q(value)
    multiplicity: int  # algebraic multiplicity
    field: object = None
    lam: object = None  # value as a field element

    @property
    def geometric_multiplicity(self) -> int:
        return len(self.basis)


def exact_eigenpairs(mat: list, hermitian: bool = True) -> list:
    """Real eigenvalues and exact eigenspaces of a rational (or Gaussian
    rational) square matrix, ascending by eigenvalue."""
    from .eigenvectors import field_for

    n = len(mat)
    cp = _real_charpoly(mat)
    out = []
    for value, mult in real_roots(cp):
        fld, lam = field_for(value)
        shifted = [[mat[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        basis = nullspace(shifted)
        if hermitian and len(basis) != mult:
            raise ArithmeticError(f"geometric multiplicity {len(basis)} != algebraic {mult} for {value}")
        out.append(ExactEigenpair(value, basis, mult, fld, lam))
    return out


SPECTRUM_LIMIT = 12


def exact_spectrum(fg: FiniteGraph) -> list:
    if fg.n > SPECTRUM_LIMIT:
        raise ValueError(f"exact spectrum limited to {SPECTRUM_LIMIT} vertices")
    return exact_eigenpairs(fg.adjacency())


# ---------------------------------------------------------------- enumeration


def _refine(n: int, adj: list) -> list:
    """Isomorphism-invariant ordered partition of the vertices by colour refinement."""
    colour = [sum(row) for row in adj]
    while True:
        sig = [(colour[v], tuple(sorted(colour[u] for u in range(n) if adj[v][u]))) for v in range(n)]
        keys = sorted(set(sig))
        new = [keys.index(s) for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    cells = {}
    for v in range(n):
        cells.setdefault(colour[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_code(n: int, adj: list) -> tuple:
    """Minimum upper-triangle bit string over orderings compatible with the
    refined partition; equal codes iff the graphs are isomorphic."""
    cells = _refine(n, adj)
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for part in choice for v in part]
        code = tuple(adj[order[i]][order[j]] for i in range(n) for j in range(i + 1, n))
        if best is None or code < best:
            best = code
    return best


def graph_from_code(n: int, code: tuple) -> FiniteGraph:
    edges = []
    it = iter(code)
    for i in range(n):
        for j in range(i + 1, n):
            if next(it):
                edges.append((i, j))
    return FiniteGraph.from_edges(n, edges)


ENUM_LIMIT = 7
_ENUM_CACHE: dict = {}


def enumerate_graphs(n: int) -> list:
    """All graphs on n vertices up to isomorphism (sorted by edge count, code)."""
    if n < 1 or n > ENUM_LIMIT:
        raise ValueError(f"graph enumeration supports 1 <= n <= {ENUM_LIMIT}")
    if n in _ENUM_CACHE:
        return list(_ENUM_CACHE[n])
    if n == 1:
        out = [FiniteGraph.from_edges(1, [])]
    else:
        codes = set()
        for base in enumerate_graphs(n - 1):
            for mask in range(1 << (n - 1)):
                edges = list(base.edges) + [(v, n - 1) for v in range(n - 1) if mask >> v & 1]
                g = FiniteGraph.from_edges(n, edges)
                codes.add(canonical_code(n, g.adjacency()))
        out = [graph_from_code(n, c) for c in codes]
        out.sort(key=lambda g: (len(g.edges), canonical_code(n, g.adjacency())))
    _ENUM_CACHE[n] = out
    return list(out)


def connected_graphs(n: int) -> list:
    return [g for g in enumerate_graphs(n) if g.is_connected()]
