import random
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatbands import catalog
from flatbands.algebra import AlgebraicNumber, Gaussian, LaurentPoly, UniPoly
from flatbands.algebra.gaussian import conj
from flatbands.eigenvectors import field_for
from flatbands.floquet import (
    DisconnectedGraphError,
    build_symbol,
    char_poly,
    detect_flat_bands,
    sample_bands,
    torus_oracle,
)
from flatbands.graph import PeriodicGraph, relabel, shift_cell
from graphgen import oracle_corpus, random_graph, random_shift

Z = LaurentPoly.var(0, 1)
ZI = Z**-1


def values(report):
    return sorted(str(v) for v in report.values())


def test_symbol_fig1_left():
    s = build_symbol(catalog.build("fig1-left"))
    c = Z + ZI
    assert s.entries == [[c, 1 + c], [1 + c, c]]


def test_symbol_honeycomb_with_potential():
    g = catalog.build("honeycomb").with_potential([Fraction(1, 2), -3])
    s = build_symbol(g)
    z1, z2 = LaurentPoly.var(0, 2), LaurentPoly.var(1, 2)
    assert s.entries[0][1] == 1 + z1**-1 + z2**-1
    assert s.entries[1][0] == 1 + z1 + z2
    assert s.entries[0][0] == LaurentPoly.const(Fraction(1, 2), 2)
    assert s.entries[1][1] == LaurentPoly.const(-3, 2)


def test_symbol_line():
    assert build_symbol(catalog.build("line")).entries == [[Z + ZI]]


def test_charpoly_examples():
    cp = char_poly(build_symbol(catalog.build("fig1-right")))
    assert cp.c((0,)) == UniPoly((0, 0, 1))
    assert cp.c((1,)) == cp.c((-1,)) == UniPoly((0, -2))
    assert set(cp.exponents) == {(-1,), (0,), (1,)}
    cp = char_poly(build_symbol(catalog.build("line")))
    assert cp.c((0,)) == UniPoly((0, -1))
    assert cp.c((1,)) == UniPoly((1,))


def test_nu2_constant_coefficient_formula():
    rng = random.Random(11)
    for _ in range(30):
        g = random_graph(rng, 2, rng.randint(1, 2))
        q1, q2 = Fraction(rng.randint(-4, 4), rng.randint(1, 3)), Fraction(rng.randint(-4, 4), 2)
        cp = char_poly(build_symbol(g.with_potential([q1, q2])))
        n = len(g.index_set(0, 0) & g.index_set(1, 1)) - len(g.index_set(0, 1))
        assert cp.c((0,) * g.dimension) == UniPoly((q1 * q2 + n, -(q1 + q2), 1))


def test_detect_examples():
    assert values(detect_flat_bands(catalog.build("fig1-left"))) == ["-1"]
    assert values(detect_flat_bands(catalog.build("fig1-right"))) == ["0"]
    assert values(detect_flat_bands(catalog.build("creutz"))) == ["-2", "2"]
    assert values(detect_flat_bands(catalog.build("line"))) == []
    assert values(detect_flat_bands(catalog.build("pyrochlore-1d"))) == ["-2", "0"]
    r = detect_flat_bands(catalog.build("fig1-left"))
    assert r.bands[0].multiplicity == 1
    assert r.to_dict()["flat_bands"][0]["minpoly"] == [1, 1]


def test_cone_multiplicity_two():
    from flatbands.finite import complete
    from flatbands.generators import cone_periodize

    g, _ = cone_periodize(complete(3))
    r = detect_flat_bands(g)
    assert [(str(b.value), b.multiplicity) for b in r.bands] == [("-1", 2)]


def test_disconnected_refused_unless_forced():
    g = catalog.build("disconnected-factorization")
    with pytest.raises(DisconnectedGraphError):
        detect_flat_bands(g)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        r = detect_flat_bands(g, force=True)
    assert r.quotient_level and w


def test_reported_bands_kill_every_coefficient():
    for g in oracle_corpus(count=60) + [catalog.build(n) for n in ("creutz", "fivecell-fig8", "pyrochlore-1d")]:
        r = detect_flat_bands(g)
        for b in r.bands:
            _, lam = field_for(b.value)
            for k in r.charpoly.exponents:
                assert r.charpoly.c(k)(lam) == 0


def test_conjugate_coefficient_symmetry():
    for g in oracle_corpus(count=60) + [catalog.build("creutz")]:
        cp = char_poly(build_symbol(g))
        for k in cp.exponents:
            neg = tuple(-a for a in k)
            assert cp.c(neg) == cp.c(k).map(conj)
        assert cp.c((0,) * g.dimension).lc == (-1) ** g.nu


def test_symbol_is_hermitian_numerically():
    rng = np.random.default_rng(3)
    for name in catalog.names():
        s = build_symbol(catalog.build(name))
        assert s.is_hermitian()
        for _ in range(10):
            h = s.numeric(rng.random(s.dimension))
            assert np.abs(h - h.conj().T).max() < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_detect_invariant_under_relabel_and_shift(seed):
    rng = random.Random(seed)
    g = oracle_corpus(seed=seed, count=3)[2]
    h = random_shift(rng, g)
    assert detect_flat_bands(g).values() == detect_flat_bands(h).values()


# ---------------------------------------------------------------- numerics


def test_sampler_fig1_right():
    # the dispersive band 2(z + 1/z) crosses the flat band 0, so the flat
    # value shows up through flat_values rather than a sorted-band flag
    s = sample_bands(catalog.build("fig1-right"), 64)
    (v, m), = s.flat_values()
    assert abs(v) < 1e-9 and m == 1
    (lo1, _), (_, hi2) = s.band_ranges()
    assert abs(lo1 + 4) < 1e-9 and abs(hi2 - 4) < 1e-9


def test_sampler_line_closed_form():
    s = sample_bands(catalog.build("line"), 8)
    ref = sorted(2 * np.cos(2 * np.pi * np.arange(8) / 8))
    assert np.allclose(sorted(s.energies[:, 0]), ref, atol=1e-12)


def test_sampler_creutz_all_flat():
    s = sample_bands(catalog.build("creutz"), 32)
    assert s.flat_flags() == [True, True]
    (lo1, _), (lo2, _) = s.band_ranges()
    assert abs(lo1 + 2) < 1e-9 and abs(lo2 - 2) < 1e-9


def test_sampler_csv_and_flat_values():
    s = sample_bands(catalog.build("fig1-left"), 16)
    head = s.to_csv().splitlines()[0]
    assert head == "theta_1,E_1,E_2"
    assert s.flat_flags() == [False, False]  # the dispersive band crosses -1
    (v, m), = s.flat_values(1e-7)
    assert abs(v + 1) < 1e-9 and m == 1
    with pytest.raises(ValueError):
        sample_bands(catalog.build("line"), 1)


def test_torus_oracle_examples():
    assert torus_oracle(catalog.build("fig1-left"), 6, -1) >= 6
    assert torus_oracle(catalog.build("line"), 5, 0) <= 1
    assert torus_oracle(catalog.build("creutz"), 4, 2) == 4
    with pytest.raises(ValueError):
        torus_oracle(catalog.build("square"), 65, 0)


def test_top_band_never_flat_for_positive_weights():
    corpus = oracle_corpus(count=60) + [catalog.build(n) for n in catalog.names() if n != "disconnected-factorization"]
    for g in corpus:
        if not g.has_positive_weights():
            continue
        r = detect_flat_bands(g)
        if r.is_empty():
            continue
        top = sample_bands(g, 16).energies[:, -1].max()
        assert float(max(r.values())) < top - 1e-6
