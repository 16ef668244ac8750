from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from flatbands.algebra import (
    AlgebraicNumber,
    Gaussian,
    LaurentPoly,
    NumberField,
    UniPoly,
    charpoly_faddeev,
    count_nonreal_roots,
    determinant,
    factor_integer,
    field_inverse,
    hermite_normal_form,
    isolate_real_roots,
    lattice_is_full,
    laurent_involute,
    laurent_mul,
    unipoly_gcd,
)

X = sympy.Symbol("x")


def up(*coeffs_high_first):
    return UniPoly(reversed(coeffs_high_first))


def to_sympy(p: UniPoly):
    return sympy.Poly(list(reversed([sympy.Rational(str(c)) for c in p.coeffs])) or [0], X)


def lp(d, terms):
    return LaurentPoly(d, terms)


Z = LaurentPoly.var(0, 1)
ZI = Z ** -1


# ---------------------------------------------------------------- Laurent


def test_laurent_square_of_cosine():
    c = Z + ZI
    assert laurent_mul(c, c) == Z**2 + 2 + Z**-2


def test_laurent_factorization_example():
    lhs = laurent_mul(Z**2 + Z**-2 + 2, Z**4 + Z**-4 + 2)
    r = Z**3 + Z**-3 + Z + ZI
    assert lhs == r * r


def test_laurent_times_zero():
    assert laurent_mul(Z + 3, LaurentPoly.zero(1)).is_zero()


def test_laurent_dimension_mismatch():
    with pytest.raises(ValueError):
        laurent_mul(Z, LaurentPoly.var(0, 2))


def test_involute_examples():
    assert laurent_involute(1 + Z) == 1 + ZI
    assert laurent_involute(Z + ZI) == Z + ZI
    i = Gaussian(0, 1)
    assert laurent_involute(Z * i) == ZI * Gaussian(0, -1)


def test_laurent_rendering_is_grlex_descending():
    z1, z2 = LaurentPoly.var(0, 2), LaurentPoly.var(1, 2)
    assert (1 + z1**-1 + z2**-1).to_str() == "1 + z2^(-1) + z1^(-1)"
    assert (Z**2 - 3 + ZI).to_str() == "z^2 - 3 + z^(-1)"


def test_determinant_against_sympy():
    z = sympy.Symbol("z")
    c = Z + ZI
    mat = [[c, 1 + c, Z], [1 + c, 2 * Z, LaurentPoly.const(1, 1)], [ZI, LaurentPoly.const(1, 1), c - 3]]
    ours = determinant(mat, 1)
    sm = sympy.Matrix([[z + 1 / z, 1 + z + 1 / z, z], [1 + z + 1 / z, 2 * z, 1], [1 / z, 1, z + 1 / z - 3]])
    ref = sympy.expand(sm.det())
    assert sympy.expand(sympy.sympify(ours.to_str().replace("^", "**")) - ref) == 0


terms_1d = st.dictionaries(st.tuples(st.integers(-3, 3)), st.integers(-4, 4), max_size=4)


@settings(max_examples=60, deadline=None)
@given(terms_1d, terms_1d, terms_1d)
def test_laurent_ring_axioms(a, b, c):
    a, b, c = lp(1, a), lp(1, b), lp(1, c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (-a) == LaurentPoly.zero(1)


gauss_terms = st.dictionaries(
    st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
    st.builds(Gaussian, st.integers(-3, 3), st.integers(-3, 3)),
    max_size=4,
)


@settings(max_examples=60, deadline=None)
@given(gauss_terms, gauss_terms)
def test_involution_is_antiautomorphism(a, b):
    a, b = lp(2, a), lp(2, b)
    assert a.involute().involute() == a
    assert (a * b).involute() == a.involute() * b.involute()
    assert (a + b).involute() == a.involute() + b.involute()


# ---------------------------------------------------------------- UniPoly


def test_gcd_examples():
    assert unipoly_gcd(up(2, 2), up(1, 0, -1)) == up(1, 1)
    assert unipoly_gcd(up(1, 0), up(1, 0, 0)) == up(1, 0)
    assert unipoly_gcd(up(1, 0, 1), up(1, 0, 2)) == up(1)
    assert unipoly_gcd(up(3, 6), UniPoly()) == up(1, 2)


def test_gcd_both_zero():
    with pytest.raises(ValueError):
        unipoly_gcd(UniPoly(), UniPoly())


int_poly = st.lists(st.integers(-5, 5), min_size=1, max_size=5).map(UniPoly).filter(lambda p: not p.is_zero())


@settings(max_examples=80, deadline=None)
@given(int_poly, int_poly, int_poly)
def test_gcd_divides_and_catches_common_roots(a, b, c):
    a2, b2 = a * c, b * c
    g = unipoly_gcd(a2, b2)
    assert g.divides(a2) and g.divides(b2)
    assert c.degree <= g.degree
    ref = sympy.gcd(to_sympy(a2), to_sympy(b2))
    assert ref.degree() == g.degree


@settings(max_examples=60, deadline=None)
@given(int_poly, int_poly, int_poly)
def test_unipoly_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    q, r = (a * b + c).divmod(b)
    assert q * b + r == a * b + c and r.degree < b.degree


def test_isolate_golden_ratio():
    roots = isolate_real_roots(up(1, -1, -1))
    assert [m for _, m in roots] == [1, 1]
    lo, hi = roots
    assert lo[0].lo >= -1 and lo[0].hi <= 0
    assert hi[0].lo >= 1 and hi[0].hi <= 2
    assert str(hi[0]) == "(1+sqrt(5))/2"
    assert str(lo[0]) == "(1-sqrt(5))/2"


def test_isolate_simple_cases():
    assert [str(r) for r, _ in isolate_real_roots(up(1, 0, -1, 0))] == ["-1", "0", "1"]
    assert isolate_real_roots(up(1, 0, 1)) == []
    with pytest.raises(ValueError):
        isolate_real_roots(UniPoly())


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=6).map(UniPoly).filter(lambda p: p.degree >= 1))
def test_root_count_and_sign_change(p):
    roots = isolate_real_roots(p)
    assert sum(m for _, m in roots) + count_nonreal_roots(p) == p.degree
    for r, _ in roots:
        if r.is_rational():
            assert p(r.as_fraction()) == 0
        else:
            f = r.minpoly
            assert f(r.lo) * f(r.hi) < 0
    ref = sympy.real_roots(to_sympy(p))
    assert len(ref) == sum(m for _, m in roots)


def test_factor_against_sympy():
    cases = [
        up(1, 0, -5, 0, 4),
        up(1, -1, -4, 4) * up(1, 1) * up(1, 1),
        up(1, 0, -3, 0, 1),
        up(1, 0, -4, 0, 2) * up(1, 1, -1),
        up(6, 5, -2, -1),
    ]
    for p in cases:
        ours = sorted((f.degree, m) for f, m in factor_integer(p))
        _, ref = sympy.factor_list(to_sympy(p))
        assert ours == sorted((f.degree(), m) for f, m in ref)


def test_charpoly_faddeev_against_sympy():
    m = [[0, 1, 1, 0], [1, 0, 1, 1], [1, 1, 0, 1], [0, 1, 1, 0]]
    ours = charpoly_faddeev(m)
    ref = sympy.Matrix(m).charpoly(X).all_coeffs()
    assert list(reversed(ours.coeffs)) == ref


# ---------------------------------------------------------------- algebraic numbers and fields


def test_algebraic_number_equality_and_order():
    a = AlgebraicNumber.from_sqrt(2)
    b = isolate_real_roots(up(1, 0, -2))[1][0]
    assert a == b and hash(a) == hash(b)
    assert -a < AlgebraicNumber.rational(0) < a
    assert AlgebraicNumber.rational(1) < a < AlgebraicNumber.rational(Fraction(3, 2))
    assert a.is_algebraic_integer() and a.is_totally_real()


def test_field_inverse_examples():
    k = NumberField(up(1, 0, -5))
    lam = k.gen()
    assert field_inverse(lam) == lam / 5
    assert field_inverse(k.one()) == k.one()
    phi = NumberField(up(1, -1, -1))
    g = phi.gen()
    assert field_inverse(g) == g - 1


def test_field_inverse_of_zero():
    k = NumberField(up(1, 0, -5))
    with pytest.raises(ZeroDivisionError):
        field_inverse(k.zero())


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-5, 5), min_size=3, max_size=3),
    st.lists(st.integers(-5, 5), min_size=3, max_size=3).filter(any),
)
def test_field_division_roundtrip(xs, ys):
    k = NumberField(up(1, 0, -3, -1))  # irreducible cubic with three real roots
    x, y = k.element(xs), k.element(ys)
    assert (x * y) * field_inverse(y) == x


# ---------------------------------------------------------------- lattices


def test_hnf_and_full_lattice():
    assert hermite_normal_form([[2], [4], [-6]], 1) == [[2]]
    assert not lattice_is_full([[2], [4]], 1)
    assert lattice_is_full([[2], [3]], 1)
    assert lattice_is_full([[1, 1], [0, 1]], 2)
    assert not lattice_is_full([[1, 1], [2, 2]], 2)
    assert not lattice_is_full([], 1)
