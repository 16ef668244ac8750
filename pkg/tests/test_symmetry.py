import pytest

from flatbands import catalog
from flatbands.eigenvectors import verify_eigenvector
from flatbands.finite import complete
from flatbands.floquet import detect_flat_bands
from flatbands.generators import cone_periodize
from flatbands.graph import GraphError
from flatbands.symmetry import (
    LocalSymmetry,
    cycles_of,
    find_local_symmetries,
    is_local_symmetry,
    symmetry_flat_bands,
    w_invariant,
)


def notations(g, mode):
    return [s.notation() for s in find_local_symmetries(g, mode)]


def test_pyrochlore_symmetry_and_bands():
    g = catalog.build("pyrochlore-1d")
    for mode in ("strict", "equitable"):
        assert "(0 1)(2 3)" in notations(g, mode)
    sym = next(s for s in find_local_symmetries(g) if s.notation() == "(0 1)(2 3)")
    assert sym.r == 2
    bands = symmetry_flat_bands(g, sym)
    assert sorted(str(v) for v, _ in bands) == ["-2", "0"]
    for v, vec in bands:
        assert vec.is_single_cell() and verify_eigenvector(g, vec)
        assert v in detect_flat_bands(g)
        # Y3 +- Y4 up to scaling: supported on both 2-cycles with opposite signs inside each
        e = {p: c for (p, _), c in vec.entries.items()}
        assert e[0] == -e[1] and e[2] == -e[3]


def test_ladder_and_creutz_have_none():
    for name in ("ladder", "creutz"):
        g = catalog.build(name)
        assert notations(g, "strict") == notations(g, "equitable") == []
    assert not is_local_symmetry(catalog.build("ladder"), (1, 0))


def test_fig1_left_swap():
    g = catalog.build("fig1-left")
    (sym,) = find_local_symmetries(g)
    assert sym.notation() == "(0 1)"
    ((v, vec),) = symmetry_flat_bands(g, sym)
    assert str(v) == "-1"
    e = {p: c for (p, _), c in vec.entries.items()}
    assert e[0] == -e[1]


def test_cone_triangle_cyclic():
    g, _ = cone_periodize(complete(3))
    found = set(notations(g, "equitable"))
    assert {"(1 2 3)", "(1 3 2)"} <= found
    sym = next(s for s in find_local_symmetries(g) if s.notation() == "(1 2 3)")
    bands = symmetry_flat_bands(g, sym)
    assert len(bands) == g.nu - sym.r == 2
    assert all(str(v) == "-1" for v, _ in bands)


def test_trivial_or_invalid_symmetry_rejected():
    g = catalog.build("pyrochlore-1d")
    with pytest.raises(GraphError):
        symmetry_flat_bands(g, LocalSymmetry((0, 1, 2, 3), cycles_of((0, 1, 2, 3)), "strict"))
    with pytest.raises(GraphError):
        symmetry_flat_bands(g, LocalSymmetry((1, 2, 3, 0), cycles_of((1, 2, 3, 0)), "strict"))
    with pytest.raises(ValueError):
        find_local_symmetries(g, "loose")


def test_symmetry_bands_inside_detected_set_and_w_invariant():
    names = [n for n in catalog.names() if n != "disconnected-factorization"]
    for name in names:
        g = catalog.build(name)
        r = detect_flat_bands(g)
        for sym in find_local_symmetries(g):
            assert w_invariant(g, sym)
            bands = symmetry_flat_bands(g, sym)
            assert len(bands) >= g.nu - sym.r
            for v, vec in bands:
                assert v in r and verify_eigenvector(g, vec)
