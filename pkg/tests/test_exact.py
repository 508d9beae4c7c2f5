import itertools
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from antitri.errors import NotTriangular, SingularMatrix, ZeroPolynomial
from antitri.exact import (
    Matrix,
    Poly,
    all_roots_real,
    char_poly,
    count_roots_below,
    det,
    det_poly,
    interpolate,
    nullspace,
    poly_gcd,
    rank,
    squarefree_check,
    squarefree_part,
    sturm_count,
    to_fraction,
    triangular_inverse,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def square_matrices(max_size=4):
    return st.integers(1, max_size).flatmap(
        lambda k: st.lists(st.lists(rationals, min_size=k, max_size=k), min_size=k, max_size=k)
    )


def leibniz_char_poly(m: Matrix) -> Poly:
    """det(tI - M) summed over permutations."""
    t = Poly.x()
    k = m.size
    total = Poly()
    for perm in itertools.permutations(range(k)):
        sign = (-1) ** sum(perm[a] > perm[b] for a in range(k) for b in range(a + 1, k))
        term = Poly.constant(sign)
        for i, j in enumerate(perm):
            term = term * ((t if i == j else Poly()) - m[i, j])
        total = total + term
    return total


def to_sympy(p: Poly):
    x = sympy.Symbol("x")
    return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs)), x)


def test_to_fraction_rejects_floats_and_bools():
    assert to_fraction("3/6") == F(1, 2)
    assert to_fraction(-4) == -4
    with pytest.raises(TypeError):
        to_fraction(0.5)
    with pytest.raises(TypeError):
        to_fraction(True)


@given(square_matrices())
@settings(max_examples=60, deadline=None)
def test_char_poly_matches_leibniz(rows):
    m = Matrix(rows)
    assert char_poly(m) == leibniz_char_poly(m)


@given(square_matrices(5))
@settings(max_examples=40, deadline=None)
def test_cayley_hamilton_and_trace(rows):
    m = Matrix(rows)
    cp = char_poly(m)
    assert cp(m).is_zero()
    assert cp.coeff(m.size - 1) == -m.trace()
    assert cp.coeff(0) == (-1) ** m.size * det(m)


def test_char_poly_against_sympy_larger():
    m = Matrix.from_function(9, lambda i, j: F((i * 7 + j * 3) % 11 - 5, 1 + (i + j) % 4))
    sm = sympy.Matrix(9, 9, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))
    want = sympy.Poly(sm.charpoly().as_expr(), sympy.Symbol("lambda")).all_coeffs()[::-1]
    assert char_poly(m).coeffs == tuple(F(int(c.p), int(c.q)) for c in want)


@given(square_matrices(5))
@settings(max_examples=40, deadline=None)
def test_det_against_sympy(rows):
    m = Matrix(rows)
    sm = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in m.rows])
    assert det(m) == F(str(sm.det()))


@given(st.lists(rationals, min_size=1, max_size=6), st.lists(rationals, min_size=1, max_size=4))
def test_divmod_identity(a, b):
    pa, pb = Poly(a), Poly(b)
    if pb.is_zero():
        with pytest.raises(ZeroPolynomial):
            divmod(pa, pb)
        return
    q, r = divmod(pa, pb)
    assert q * pb + r == pa
    assert r.degree < pb.degree


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=1, max_size=6))
def test_squarefree_part_against_sympy(roots):
    p = Poly.from_roots(roots)
    sq = squarefree_part(p)
    assert sq.monic() == Poly.from_roots(set(roots))
    assert squarefree_check(p) == (len(set(roots)) == len(roots))
    assert to_sympy(sq).monic() == sympy.sqf_part(to_sympy(p)).monic()


def test_gcd_is_monic_common_factor():
    a = Poly.from_roots([1, 2, 2, F(1, 3)])
    b = Poly.from_roots([2, F(1, 3), 5])
    assert poly_gcd(a, b).monic() == Poly.from_roots([2, F(1, 3)])


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=7),
       rationals, rationals)
@settings(max_examples=80, deadline=None)
def test_sturm_count_is_distinct_roots_in_half_open_interval(roots, a, b):
    assume(a != b)
    lo, hi = min(a, b), max(a, b)
    p = Poly.from_roots(roots) * Poly([1, 0, 1])  # x^2 + 1 adds no real roots
    assert sturm_count(p) == len(set(roots))
    assert sturm_count(p, lo, hi) == len({r for r in roots if lo < r <= hi})
    assert count_roots_below(p, lo, inclusive=False) == len({r for r in roots if r < lo})
    assert count_roots_below(p, lo, inclusive=True) == len({r for r in roots if r <= lo})
    assert not all_roots_real(p)
    assert all_roots_real(Poly.from_roots(roots))


def test_sturm_count_matches_sympy_irrational_roots():
    p = Poly([-2, 0, 0, 1]) * Poly([-3, 0, 1])  # roots 2^(1/3), +-sqrt(3)
    want = len(sympy.real_roots(to_sympy(p).as_expr()))
    assert sturm_count(p) == want == 3
    assert sturm_count(p, 0, 2) == 2


@given(st.lists(rationals, min_size=1, max_size=4), st.integers(0, 5))
def test_interpolate_recovers_polynomial(coeffs, extra):
    p = Poly(coeffs)
    xs = list(range(len(coeffs) + extra))
    assert interpolate(xs, [p(x) for x in xs]) == p


def test_det_poly_against_sympy():
    t = Poly.x()
    entries = [[t - 1, Poly([2]), t * t], [Poly([F(1, 2)]), t + 3, Poly()], [t, Poly([-1]), t - F(2, 3)]]
    x = sympy.Symbol("x")
    sm = sympy.Matrix(3, 3, lambda i, j: to_sympy(entries[i][j]).as_expr() if not entries[i][j].is_zero() else 0)
    want = sympy.Poly(sm.det(), x)
    assert to_sympy(det_poly(entries)) == want


def test_rank_and_nullspace():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, F(1, 2)]]
    assert rank(rows) == 2
    basis = nullspace(rows, 4)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(F(r[k]) * v[k] for k in range(4)) == 0 for r in rows)


def test_triangular_inverse_and_errors():
    m = Matrix([[2, 0, 0], [1, F(1, 3), 0], [4, 5, -1]])
    assert m @ triangular_inverse(m) == Matrix.identity(3)
    with pytest.raises(NotTriangular):
        triangular_inverse(Matrix([[1, 1], [0, 1]]))
    with pytest.raises(SingularMatrix):
        triangular_inverse(Matrix([[1, 0], [1, 0]]))


def test_poly_text_form_and_zero_degree():
    assert Poly().degree == -1
    assert Poly.from_roots([1, -1]) == Poly([-1, 0, 1])
    assert Poly([F(1, 2), 0, -3])(2) == F(-23, 2)
