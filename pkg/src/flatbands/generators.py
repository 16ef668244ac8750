"""Constructions of periodic graphs with prescribed flat bands, or with none."""

from __future__ import annotations

from fractions import Fraction

from .eigenvectors import CompactEigenvector, eigenvectors_for, verify_eigenvector
from .finite import FiniteGraph, exact_eigenpairs, exact_spectrum
from .floquet import detect_flat_bands
from .graph import EdgeSpec, GraphError, PeriodicGraph, is_connected, require_valid


def product_base() -> PeriodicGraph:
    """Two lines joined by crossing diagonals; flat band 0 with eigenvector (-1, 1)."""
    from .catalog import build

    return build("fig1-right")


def cartesian_graph(base: PeriodicGraph, gf: FiniteGraph) -> PeriodicGraph:
    """Base periodic graph times a finite graph; vertex (p, a) gets index p * n + a."""
    n = gf.n
    edges = []
    for e in base.edges:
        for a in range(n):
            edges.append(EdgeSpec(e.i * n + a, e.j * n + a, e.offset, e.weight))
    zero = (0,) * base.dimension
    for p in range(base.nu):
        for a, b in gf.edges:
            edges.append(EdgeSpec(p * n + a, p * n + b, zero))
    pot = [base.potential[p] for p in range(base.nu) for _ in range(n)]
    return PeriodicGraph.build(base.dimension, base.nu * n, edges, pot)


def cartesian_flatband(base: PeriodicGraph, gf: FiniteGraph, base_vector: CompactEigenvector | None = None):
    """Flat bands lam_b + mu for every eigenvalue mu of gf, with eigenvectors f (x) phi.

    The base flat value must be rational so that every product eigenvector
    lives in Q(mu). Returns (graph, list of verified CompactEigenvector).
    """
    require_valid(base)
    if gf.n < 1:
        raise GraphError("the finite factor needs at least one vertex")
    if base_vector is None:
        rep = detect_flat_bands(base)
        if rep.is_empty():
            raise GraphError("base graph has no flat band")
        base_vector = eigenvectors_for(base, rep)[0]
    if not verify_eigenvector(base, base_vector):
        raise GraphError("base eigenvector does not verify")
    if not base_vector.value.is_rational():
        raise GraphError("cartesian_flatband needs a rational base flat value")
    lam_b = base_vector.value.as_fraction()
    g = cartesian_graph(base, gf)
    n = gf.n
    adj = gf.adjacency()
    shifted = [[Fraction(adj[i][j]) + (lam_b if i == j else 0) for j in range(n)] for i in range(n)]
    window = tuple((g.nu - 1) * h for h in g.hopping_range())
    out = []
    for pair in exact_eigenpairs(shifted):
        for phi in pair.basis:
            ent = {}
            for (p, k), c in base_vector.entries.items():
                for a in range(n):
                    v = c * phi[a]
                    if v != 0:
                        ent[(p * n + a, k)] = v
            vec = CompactEigenvector(pair.value, pair.field, pair.lam, ent, window)
            if not verify_eigenvector(g, vec):
                raise ArithmeticError(f"product eigenvector for {pair.value} failed verification")
            out.append(vec)
    return g, out


def cone_periodize(gf: FiniteGraph):
    """Attach a new vertex o (index 0) to every vertex of a regular connected gf
    and connect o to its translates. Every eigenvalue of gf except the top one
    is a flat band with eigenvector (0, f).

    Returns (graph, [(value, multiplicity, [CompactEigenvector, ...]), ...]).
    """
    if not gf.is_connected():
        raise GraphError("cone_periodize needs a connected finite graph")
    if not gf.is_regular():
        raise GraphError("cone_periodize needs a regular finite graph")
    n = gf.n
    edges = [(0, 0, 1)] + [(0, a + 1, 0) for a in range(n)] + [(a + 1, b + 1, 0) for a, b in gf.edges]
    g = PeriodicGraph.build(1, n + 1, edges)
    pairs = exact_spectrum(gf)
    window = ((g.nu - 1) * 1,)
    bands = []
    for pair in pairs[:-1]:
        vecs = []
        for phi in pair.basis:
            ent = {(a + 1, (0,)): c for a, c in enumerate(phi) if c != 0}
            vec = CompactEigenvector(pair.value, pair.field, pair.lam, ent, window)
            if not verify_eigenvector(g, vec):
                raise ArithmeticError(f"cone eigenvector for {pair.value} failed verification")
            vecs.append(vec)
        bands.append((pair.value, pair.multiplicity, vecs))
    return g, bands


def no_flatband_product(lattice: PeriodicGraph, gf: FiniteGraph, kind: str = "cartesian") -> PeriodicGraph:
    """Cartesian or tensor product of a one-vertex lattice with a finite graph.

    Such products have no flat bands; the tensor product additionally needs
    gf non-bipartite with 0 not an eigenvalue.
    """
    require_valid(lattice)
    if lattice.nu != 1:
        raise GraphError("the lattice factor must have one vertex per cell")
    if not gf.is_connected():
        raise GraphError("the finite factor must be connected")
    if kind == "cartesian":
        return cartesian_graph(lattice, gf)
    if kind != "tensor":
        raise ValueError(f"unknown product kind {kind!r}")
    if gf.is_bipartite():
        raise GraphError("tensor product needs a non-bipartite finite graph")
    if any(p.value.is_zero() for p in exact_spectrum(gf)):
        raise GraphError("tensor product needs 0 outside the spectrum of the finite graph")
    if any(q != 0 for q in lattice.potential):
        raise GraphError("tensor product needs zero potential on the lattice")
    edges = []
    for e in lattice.edges:
        neg = tuple(-a for a in e.offset)
        for a, b in gf.edges:
            edges.append(EdgeSpec(a, b, e.offset, e.weight))
            edges.append(EdgeSpec(a, b, neg, e.weight))
    g = PeriodicGraph.build(lattice.dimension, gf.n, edges)
    if not is_connected(g):
        raise GraphError("tensor product is disconnected")
    return g

