import itertools

import pytest
import sympy

from flatbands import catalog
from flatbands.algebra import AlgebraicNumber, UniPoly
from flatbands.eigenvectors import verify_eigenvector
from flatbands.finite import (
    FiniteGraph,
    complete,
    connected_graphs,
    cycle,
    enumerate_graphs,
    exact_spectrum,
    parse_graph_spec,
    path,
)
from flatbands.floquet import detect_flat_bands
from flatbands.graph import GraphError, is_connected
from flatbands.singlecell import (
    enumerate_single_cell,
    neighborhood_condition,
    neighborhood_flat_band,
    subset_zero_criterion,
    witness_graph,
)

X = sympy.Symbol("x")


def strs(values):
    return [str(v) for v in values]




def minpolys(fg):
    return sorted((tuple(p.value.minpoly.coeffs), p.multiplicity) for p in exact_spectrum(fg))


def sympy_minpolys(fg):
    cp = sympy.Matrix(fg.adjacency()).charpoly(X)
    _, facs = sympy.factor_list(cp.as_expr())
    out = []
    for f, m in facs:
        coeffs = [int(c) for c in reversed(sympy.Poly(f, X).all_coeffs())]
        if coeffs[-1] < 0:
            coeffs = [-c for c in coeffs]
        nroots = sympy.Poly(f, X).degree()
        out.extend([(tuple(coeffs), m)] * nroots)
    return sorted(out)


# ---------------------------------------------------------------- neighbourhood condition


def test_neighborhood_condition_examples():
    assert neighborhood_condition(catalog.build("fig1-left"), 0, 1)
    assert neighborhood_condition(catalog.build("fig1-right"), 0, 1)
    assert not neighborhood_condition(catalog.build("ladder"), 0, 1)
    value, vec = neighborhood_flat_band(catalog.build("fig1-left"), 0, 1)
    assert str(value) == "-1" and verify_eigenvector(catalog.build("fig1-left"), vec)
    value, vec = neighborhood_flat_band(catalog.build("fig1-right"), 0, 1)
    assert str(value) == "0" and verify_eigenvector(catalog.build("fig1-right"), vec)
    with pytest.raises(GraphError):
        neighborhood_condition(catalog.build("ladder"), 0, 0)
    with pytest.raises(GraphError):
        neighborhood_condition(catalog.build("ladder"), 0, 2)


# ---------------------------------------------------------------- finite graphs


def test_exact_spectrum_examples():
    p3 = exact_spectrum(path(3))
    assert strs(p.value for p in p3) == ["-sqrt(2)", "0", "sqrt(2)"]
    zero = p3[1].basis[0]
    assert zero[1] == 0 and zero[0] == -zero[2]
    k3 = exact_spectrum(complete(3))
    assert [(str(p.value), p.multiplicity) for p in k3] == [("-1", 2), ("2", 1)]
    assert strs(p.value for p in exact_spectrum(FiniteGraph.from_edges(1, []))) == ["0"]
    with pytest.raises(ValueError):
        exact_spectrum(path(13))


def test_exact_spectrum_matches_sympy_on_all_small_graphs():
    for n in (3, 4, 5):
        for fg in enumerate_graphs(n):
            assert minpolys(fg) == sympy_minpolys(fg), fg.label()


def test_eigenbasis_is_exact():
    for fg in connected_graphs(5):
        adj = fg.adjacency()
        for pair in exact_spectrum(fg):
            for v in pair.basis:
                for i in range(fg.n):
                    assert sum((adj[i][j] * v[j] for j in range(fg.n)), 0) - pair.lam * v[i] == 0


def test_appendix_spot_checks():
    diamond = parse_graph_spec("4:0-1,0-2,1-2,1-3,2-3")
    assert minpolys(diamond) == sorted([((0, 1), 1), ((1, 1), 1), ((-4, -1, 1), 1), ((-4, -1, 1), 1)])
    c5 = exact_spectrum(cycle(5))
    assert [(str(p.value), p.multiplicity) for p in c5] == [
        ("(-1-sqrt(5))/2", 2),
        ("(-1+sqrt(5))/2", 2),
        ("2", 1),
    ]
    paw = parse_graph_spec("4:0-1,1-2,0-2,2-3")
    assert sorted(tuple(p.value.minpoly.coeffs) for p in exact_spectrum(paw)) == sorted(
        [(1, 1)] + [(1, -3, -1, 1)] * 3
    )


def test_graph_counts():
    assert [len(enumerate_graphs(n)) for n in range(1, 7)] == [1, 2, 4, 11, 34, 156]
    assert [len(connected_graphs(n)) for n in range(1, 7)] == [1, 1, 2, 6, 21, 112]


def test_graph_counts_seven():
    assert len(enumerate_graphs(7)) == 1044
    assert len(connected_graphs(7)) == 853


# ---------------------------------------------------------------- criterion


def test_criterion_examples():
    p3 = exact_spectrum(path(3))
    ok, delta, psi = subset_zero_criterion(p3[1])
    assert ok and delta == (0, 1, 0)
    ok, _, _ = subset_zero_criterion(p3[0])
    assert not ok
    ok, delta, psi = subset_zero_criterion(exact_spectrum(complete(3))[0])
    assert ok and any(delta)
    assert sum((psi[i] for i in range(3) if delta[i]), 0) == 0 and any(c != 0 for c in psi)


def test_witness_graph_examples():
    g = witness_graph(path(3), AlgebraicNumber.rational(0), [-1, 0, 1], (0, 1, 0))
    assert is_connected(g)
    assert AlgebraicNumber.rational(0) in detect_flat_bands(g)
    assert g.index_set(1, 1) == {(1,), (-1,)}
    t = witness_graph(complete(3), AlgebraicNumber.rational(-1), [-1, 0, 1], (1, 1, 1))
    assert is_connected(t) and -1 in detect_flat_bands(t)
    with pytest.raises(ValueError):
        witness_graph(path(3), AlgebraicNumber.rational(0), [-1, 0, 1], (0, 0, 0))
    with pytest.raises(ValueError):
        witness_graph(path(3), AlgebraicNumber.rational(0), [1, 0, 1], (0, 1, 0))


# ---------------------------------------------------------------- enumeration


F45 = ["-2", "(-1-sqrt(5))/2", "-1", "0", "(-1+sqrt(5))/2", "1"]


def test_enumeration_small():
    assert strs(enumerate_single_cell(1).values()) == []
    assert strs(enumerate_single_cell(2).values()) == ["-1", "0"]
    assert strs(enumerate_single_cell(3).values()) == ["-1", "0"]
    assert strs(enumerate_single_cell(4).values()) == F45
    assert strs(enumerate_single_cell(5).values()) == F45
    with pytest.raises(ValueError):
        enumerate_single_cell(7)


def test_enumeration_six_properties():
    sets = [enumerate_single_cell(n) for n in range(1, 7)]
    for a, b in itertools.pairwise(sets):
        assert all(v in b for v in a.values())
    f6 = sets[-1]
    assert AlgebraicNumber.from_sqrt(2) in f6 and -AlgebraicNumber.from_sqrt(2) in f6
    for v in f6.values():
        assert v.is_algebraic_integer() and v.is_totally_real()


def test_top_eigenvalue_never_admitted_by_criterion():
    for n in range(2, 6):
        for e in enumerate_single_cell(n).entries:
            if e.kind == "criterion":
                assert e.value < exact_spectrum(e.graph)[-1].value


def test_new_values_have_verified_witnesses():
    seen = set()
    for n in range(2, 6):
        for e in enumerate_single_cell(n).entries:
            key = (str(e.value), e.nu)
            if key in seen:
                continue
            seen.add(key)
            g, vec = e.witness()
            assert g.nu == e.nu and is_connected(g)
            assert e.value in detect_flat_bands(g)
            assert verify_eigenvector(g, vec) and vec.is_single_cell()


def test_table_and_json():
    f4 = enumerate_single_cell(4)
    assert f4.table().startswith("F_4: 6 values")
    d = f4.to_dict(witnesses=True)
    assert len(d["values"]) == 6 and all("first_nu" in v for v in d["values"])
