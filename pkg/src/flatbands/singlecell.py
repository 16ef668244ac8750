"""Single-cell flat bands: the neighbourhood condition, the delta-subset
criterion and the enumeration of F_nu (flat bands with an eigenvector
supported on one fundamental cell, over all connected graphs with nu
vertices per cell)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra.algebraic import AlgebraicNumber
from .eigenvectors import CompactEigenvector, field_for, scalar_to_dict
from .finite import FiniteGraph, connected_graphs, exact_spectrum
from .graph import GraphError, PeriodicGraph


# ---------------------------------------------------------------- neighbourhood condition


def neighborhood_condition(g: PeriodicGraph, i: int, j: int) -> bool:
    """N(v_i) minus v_j equals N(v_j) minus v_i, in index-set form:
    I_ii = I_jj = I_ij - {0} = I_ji - {0} and I_ir = I_jr for r != i, j.

    Weights are compared too, so weighted graphs need equal hoppings.
    """
    if i == j or not (0 <= i < g.nu and 0 <= j < g.nu):
        raise GraphError(f"need two distinct vertices in range({g.nu}), got {i}, {j}")
    sets = g.index_sets()
    zero = (0,) * g.dimension

    def hop(a, b, drop_zero=False):
        d = dict(sets.get((a, b), {}))
        if drop_zero:
            d.pop(zero, None)
        return d

    if not (hop(i, i) == hop(j, j) == hop(i, j, True) == hop(j, i, True)):
        return False
    return all(hop(i, r) == hop(j, r) for r in range(g.nu) if r not in (i, j))


def neighborhood_flat_band(g: PeriodicGraph, i: int, j: int):
    """Flat value and single-cell eigenvector forced by the neighbourhood
    condition: 0 if v_i and v_j are not adjacent in the cell, -eps_ij if they
    are (-1 for unit weights); potential on i and j must agree."""
    if not neighborhood_condition(g, i, j):
        return None
    if g.potential[i] != g.potential[j]:
        return None
    zero = (0,) * g.dimension
    eps = g.index_sets().get((i, j), {}).get(zero, 0)
    if eps != 0 and getattr(eps, "im", 0) != 0:
        return None
    value = AlgebraicNumber.rational(g.potential[i] - eps)
    window = tuple((g.nu - 1) * h for h in g.hopping_range())
    vec = CompactEigenvector(value, None, value.as_fraction(), {(i, zero): 1, (j, zero): -1}, window)
    return value, vec


# ---------------------------------------------------------------- criterion


def subset_zero_criterion(pair):
    """Is there a nonzero psi in the eigenspace and a nonzero 0/1 vector delta
    with sum(delta_i psi_i) = 0?

    Returns (holds, delta, psi). With a 2+ dimensional eigenspace one linear
    condition always leaves a nonzero vector, so delta = e_0 works.
    """
    basis = pair.basis
    n = len(basis[0])
    if len(basis) >= 2:
        b1, b2 = basis[0], basis[1]
        psi = [b2[0] * x - b1[0] * y for x, y in zip(b1, b2)]
        if all(c == 0 for c in psi):
            psi = list(b1)
        delta = tuple(1 if k == 0 else 0 for k in range(n))
        return True, delta, psi
    psi = basis[0]
    for mask in range(1, 1 << n):
        acc = 0
        for k in range(n):
            if mask >> k & 1:
                acc = acc + psi[k]
        if acc == 0:
            return True, tuple(mask >> k & 1 for k in range(n)), list(psi)
    return False, None, list(psi)


# ---------------------------------------------------------------- witnesses


def witness_graph(fg: FiniteGraph, value: AlgebraicNumber, psi, delta) -> PeriodicGraph:
    """Periodic graph with symbol A_fg + (z + 1/z) (delta_i delta_j): psi on one
    cell is an eigenvector with eigenvalue ``value``."""
    if not any(delta):
        raise ValueError("delta must not be all zero")
    if len(delta) != fg.n or len(psi) != fg.n:
        raise ValueError("delta and psi must have one entry per vertex")
    if not fg.is_connected():
        raise ValueError("the finite graph must be connected")
    _, lam = field_for(value)
    adj = fg.adjacency()
    for i in range(fg.n):
        row = sum((adj[i][j] * psi[j] for j in range(fg.n)), 0)
        if row - lam * psi[i] != 0:
            raise ValueError("psi is not an eigenvector of the finite graph")
    if sum((psi[i] for i in range(fg.n) if delta[i]), 0) != 0:
        raise ValueError("sum of psi over the delta subset is not zero")
    edges = [(a, b, 0) for a, b in fg.edges]
    on = [i for i in range(fg.n) if delta[i]]
    for a in on:
        for b in on:
            if a < b:
                edges += [(a, b, 1), (a, b, -1)]
            elif a == b:
                edges.append((a, a, 1))
    return PeriodicGraph.build(1, fg.n, edges)


def single_cell_vector(g: PeriodicGraph, value: AlgebraicNumber, psi) -> CompactEigenvector:
    fld, lam = field_for(value)
    zero = (0,) * g.dimension
    entries = {(p, zero): c for p, c in enumerate(psi) if c != 0}
    window = tuple((g.nu - 1) * h for h in g.hopping_range())
    return CompactEigenvector(value, fld, lam, entries, window)


# ---------------------------------------------------------------- enumeration


@dataclass
class SingleCellEntry:
    value: AlgebraicNumber
    nu: int  # cell size at which the value first appears
    graph: FiniteGraph
    kind: str  # "criterion" or "product"
    psi: list = None
    delta: tuple = None

    def witness(self):
        """(periodic graph, single-cell eigenvector) realising the value at ``nu``."""
        if self.kind == "criterion":
            g = witness_graph(self.graph, self.value, self.psi, self.delta)
            return g, single_cell_vector(g, self.value, self.psi)
        from .generators import cartesian_flatband, product_base

        g, vecs = cartesian_flatband(product_base(), self.graph)
        for v in vecs:
            if v.value == self.value:
                return g, v
        raise ArithmeticError("product construction lost the value")  # pragma: no cover

    def to_dict(self) -> dict:
        d = {"value": self.value.to_dict(), "first_nu": self.nu, "graph": self.graph.label(), "kind": self.kind}
        if self.delta is not None:
            d["delta"] = list(self.delta)
            d["psi"] = [scalar_to_dict(c) for c in self.psi]
        return d


@dataclass
class SingleCellSet:
    nu: int
    entries: list = field(default_factory=list)

    def values(self) -> list:
        return [e.value for e in self.entries]

    def __contains__(self, x) -> bool:
        if not isinstance(x, AlgebraicNumber):
            x = AlgebraicNumber.rational(x)
        return any(e.value == x for e in self.entries)

    def find(self, x):
        return next((e for e in self.entries if e.value == x), None)

    def _sorted(self):
        self.entries.sort(key=lambda e: _Key(e.value))

    def to_dict(self, witnesses: bool = False) -> dict:
        if witnesses:
            return {"nu": self.nu, "values": [e.to_dict() for e in self.entries]}
        return {"nu": self.nu, "values": [e.value.to_dict() for e in self.entries]}

    def to_json(self, witnesses: bool = False) -> str:
        return json.dumps(self.to_dict(witnesses), indent=2)

    def table(self) -> str:
        lines = [f"F_{self.nu}: {len(self.entries)} values"]
        for e in self.entries:
            lines.append(f"  {str(e.value):>16}  first at nu={e.nu}  via {e.kind} on {e.graph.label()}")
        return "\n".join(lines)


class _Key:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return self.x < other.x


SINGLE_CELL_LIMIT = 6
_SC_CACHE: dict = {}


def spectrum_table(n: int) -> list:
    """(graph, eigenpairs) for every connected graph on n vertices."""
    return [(g, exact_spectrum(g)) for g in connected_graphs(n)]


def enumerate_single_cell(nu: int) -> SingleCellSet:
    """F_nu built recursively: F_(nu-1), plus criterion-passing non-top
    eigenvalues of connected graphs on nu vertices, plus (nu even) every
    eigenvalue of a connected graph on nu/2 vertices."""
    if nu < 1 or nu > SINGLE_CELL_LIMIT:
        raise ValueError(f"single-cell enumeration supports 1 <= nu <= {SINGLE_CELL_LIMIT}")
    if nu in _SC_CACHE:
        return _SC_CACHE[nu]
    if nu == 1:
        out = SingleCellSet(1)
    else:
        prev = enumerate_single_cell(nu - 1)
        out = SingleCellSet(nu, list(prev.entries))
        for g, pairs in spectrum_table(nu):
            top = pairs[-1].value
            for pair in pairs[:-1]:
                assert pair.value < top
                if pair.value in out:
                    continue
                ok, delta, psi = subset_zero_criterion(pair)
                if ok:
                    out.entries.append(SingleCellEntry(pair.value, nu, g, "criterion", psi, delta))
        if nu % 2 == 0:
            for g, pairs in spectrum_table(nu // 2):
                for pair in pairs:
                    if pair.value not in out:
                        out.entries.append(SingleCellEntry(pair.value, nu, g, "product"))
        out._sorted()
    _SC_CACHE[nu] = out
    return out
