import itertools

import numpy as np
import pytest

from flatbands import catalog
from flatbands.eigenvectors import verify_eigenvector
from flatbands.finite import FiniteGraph, complete, connected_graphs, cycle, exact_spectrum, path
from flatbands.floquet import detect_flat_bands, torus_matrix
from flatbands.generators import cartesian_flatband, cone_periodize, no_flatband_product, product_base
from flatbands.graph import GraphError, is_connected, validate


def strs(values):
    return sorted(str(v) for v in values)


def test_cartesian_examples():
    g, vecs = cartesian_flatband(product_base(), path(2))
    assert g.nu == 4
    assert strs({v.value for v in vecs}) == ["-1", "1"]
    assert strs(detect_flat_bands(g).values()) == ["-1", "1"]
    g, vecs = cartesian_flatband(product_base(), path(3))
    assert g.nu == 6
    assert strs(detect_flat_bands(g).values()) == ["-sqrt(2)", "0", "sqrt(2)"]
    assert all(verify_eigenvector(g, v) for v in vecs)
    g, vecs = cartesian_flatband(product_base(), FiniteGraph.from_edges(1, []))
    assert g == product_base()
    assert strs(v.value for v in vecs) == ["0"]


def test_cartesian_torus_spectrum_is_sum_of_spectra():
    gf = path(3)
    g, _ = cartesian_flatband(product_base(), gf)
    n = 4
    prod = np.linalg.eigvalsh(torus_matrix(g, n))
    base = np.linalg.eigvalsh(torus_matrix(product_base(), n))
    fin = np.linalg.eigvalsh(np.array(gf.adjacency(), dtype=float))
    sums = np.sort([a + b for a, b in itertools.product(base, fin)])
    assert np.allclose(np.sort(prod), sums, atol=1e-7)


def test_cone_examples():
    g, bands = cone_periodize(path(2))
    assert g.nu == 3 and [(str(v), m) for v, m, _ in bands] == [("-1", 1)]
    g, bands = cone_periodize(complete(3))
    assert g.nu == 4 and [(str(v), m) for v, m, _ in bands] == [("-1", 2)]
    g, bands = cone_periodize(cycle(4))
    assert g.nu == 5 and [(str(v), m) for v, m, _ in bands] == [("-2", 1), ("0", 2)]
    for gf in (path(2), complete(3), cycle(4), cycle(5), complete(4)):
        g, bands = cone_periodize(gf)
        r = detect_flat_bands(g)
        assert validate(g).ok and is_connected(g)
        for v, m, vecs in bands:
            assert v in r and len(vecs) == m
            assert all(verify_eigenvector(g, x) for x in vecs)
    with pytest.raises(GraphError):
        cone_periodize(path(3))
    with pytest.raises(GraphError):
        cone_periodize(FiniteGraph.from_edges(4, [(0, 1), (2, 3)]))


def test_no_flatband_products():
    line = catalog.build("line")
    ladder = no_flatband_product(line, path(2), "cartesian")
    assert ladder.index_sets() == catalog.build("ladder").index_sets()
    assert detect_flat_bands(ladder).is_empty()
    assert detect_flat_bands(no_flatband_product(line, cycle(4))).is_empty()
    assert detect_flat_bands(no_flatband_product(line, complete(3), "tensor")).is_empty()
    with pytest.raises(GraphError):
        no_flatband_product(line, path(2), "tensor")
    with pytest.raises(GraphError):
        no_flatband_product(catalog.build("fig1-left"), path(2))


def test_no_flatband_products_over_small_graphs():
    lattices = [catalog.build("line"), catalog.build("square")]
    for lattice in lattices:
        for gf in connected_graphs(3) + connected_graphs(4):
            g = no_flatband_product(lattice, gf, "cartesian")
            assert is_connected(g) and detect_flat_bands(g).is_empty()
            if not gf.is_bipartite() and all(not p.value.is_zero() for p in exact_spectrum(gf)):
                t = no_flatband_product(lattice, gf, "tensor")
                assert detect_flat_bands(t).is_empty()
