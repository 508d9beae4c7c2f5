import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from antitri.eigenprop import (
    admissible_last_rows,
    cofactor_grid,
    en_membership,
    full_adep_check,
    hk_evaluate,
    property_report,
    small_n_family,
    uniqueness_rank_check,
    weak_adep_check,
)
from antitri.errors import ConstraintViolated, IndexOutOfRange
from antitri.exact import Matrix, Poly, char_poly
from antitri.pascal import anti_identity, pi_map
from antitri.repro import s_matrix, t_matrix

values = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def sympy_h(n):
    """H_n from the cofactor construction carried out symbolically."""
    z = sympy.symbols(f"z0:{n}")
    t = sympy.Symbol("t")
    q = sympy.Matrix(n + 1, n + 1, lambda i, j: (-1) ** i * sympy.binomial(n - i, j - i) if j >= i else 0)
    d = sympy.diag(*z, 0)
    system = t * sympy.eye(n + 1) - d * q
    top = system[:n, :]
    grid = sympy.zeros(n, n)
    for j in range(n):
        minor = top[:, [c for c in range(n + 1) if c != j]]
        cof = sympy.Poly(sympy.expand((-1) ** (n + j) * minor.det()), t)
        for m in range(n):
            grid[m, j] = cof.coeff_monomial(t**m)
    return z, sympy.factor(grid.det())


@pytest.fixture(scope="module")
def symbolic_h():
    return {n: sympy_h(n) for n in (1, 2, 3)}


def test_t_and_s_have_full_property():
    for n in range(8):
        assert full_adep_check(t_matrix(n))
        assert full_adep_check(s_matrix(n))


def test_weak_fails_for_generic_triangular():
    x = Matrix([[1, 0, 0], [1, 2, 0], [0, 1, 3]])
    rep = property_report(x)
    assert not rep.weak and not rep.full and rep.witness == "char_poly_mismatch"


def test_weak_without_full():
    # n=1 family with a = -b: eigenvalue a twice, one Jordan block
    x = small_n_family(1, (1, -1))
    rep = property_report(x)
    assert rep.weak and not rep.full
    assert rep.witness == "not_diagonalizable"


def test_repeated_signed_diagonal_can_still_be_full():
    x = pi_map([1, F(1, 2), F(1, 2), F(1, 2)])
    rep = property_report(x)
    assert rep.full and rep.witness == "squarefree_part_annihilates"


def test_report_invariant_and_json():
    with pytest.raises(ValueError):
        type(property_report(t_matrix(1)))(False, True, ())
    assert property_report(s_matrix(2)).to_json()["spectrum"] == ["1", "-1/2", "1/4"]


@given(values, values)
def test_n1_family(a, b):
    x = small_n_family(1, (a, b))
    assert weak_adep_check(x)
    assert char_poly(x @ anti_identity(1)) == Poly.from_roots([a, -b])


@given(values, values, values, values.filter(lambda v: v != 0))
@settings(max_examples=50)
def test_n2_family(a, b, c, p):
    q = 2 * (a - b) * (b - c) / p
    assert weak_adep_check(small_n_family(2, (a, b, c, p, q)))


def test_n2_family_constraint():
    with pytest.raises(ConstraintViolated):
        small_n_family(2, (3, 2, 1, 1, 1))


def test_h_matches_symbolic(symbolic_h):
    rng = random.Random(3)
    for n, (z, h) in symbolic_h.items():
        for _ in range(5):
            pt = [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
            want = h.subs(dict(zip(z, [sympy.Rational(v.numerator, v.denominator) for v in pt])))
            assert hk_evaluate(pt, n) == F(str(want))


def test_symbolic_h_small_forms(symbolic_h):
    z0, z1 = symbolic_h[2][0]
    assert sympy.expand(symbolic_h[1][1] - symbolic_h[1][0][0]) == 0
    assert sympy.expand(symbolic_h[2][1] + z0 * z1 * (z0 - z1)) == 0


@given(st.lists(values, min_size=2, max_size=2))
def test_reduced_h1_h2(pt):
    assert hk_evaluate(pt, 1, reduced=True) == 1
    assert hk_evaluate(pt, 2, reduced=True) == -(pt[0] - pt[1])


def test_reduced_h3_divides_out_monomial(symbolic_h):
    z, h = symbolic_h[3]
    reduced = sympy.cancel(h / (z[0] * z[1] * z[2]))
    for pt in ([0, 1, 2], [F(1, 2), 0, 3], [1, F(-2, 3), F(5, 4)]):
        want = reduced.subs(dict(zip(z, [sympy.nsimplify(str(v)) for v in pt])))
        assert hk_evaluate(pt, 3, reduced=True) == F(str(want))


def test_hk_index_range():
    with pytest.raises(IndexOutOfRange):
        hk_evaluate([1, 2], 3)
    with pytest.raises(IndexOutOfRange):
        hk_evaluate([1, 2], 0)


def test_en_certificate():
    cert = en_membership([1, F(1, 2), F(1, 3)])
    assert cert.in_e and cert.first_failure is None
    assert [r.k for r in cert.rows] == [1, 2]
    assert all(r.nonzero for r in cert.rows)
    bad = en_membership([1, 1, F(1, 3)])
    assert not bad.in_e and bad.first_failure == 2
    repeated = en_membership([1, -1])  # signed diagonal (1, 1)
    assert repeated.in_e and not repeated.in_e_tilde


def test_certificate_json_uses_rational_text():
    js = en_membership([1, F(1, 2), F(1, 3)]).to_json()
    assert js["rows"][-1]["h_value"] == "-1/4"


def test_uniqueness_rank_matches_h(symbolic_h):
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 3)
        lam = [F(rng.randint(-2, 2)) for _ in range(n + 1)]
        assert uniqueness_rank_check(lam) == (hk_evaluate(lam, n) != 0)
        assert len(cofactor_grid(lam, n)) == n


def test_uniqueness_rank_at_zero_leading_value():
    # the rank test is sufficient, not necessary: W = 0 is still the only solution
    assert uniqueness_rank_check([1, 5])
    assert not uniqueness_rank_check([0, 5])
    assert admissible_last_rows([0, 5]) == []


def test_admissible_last_rows():
    assert admissible_last_rows([1, F(1, 2), F(1, 3)]) == []
    family = admissible_last_rows([2, 2, 2])
    assert len(family) == 1
    lam = [2, 2, 2]
    w = family[0]
    x = pi_map(lam) + Matrix.from_function(3, lambda i, j: w[j] if i == 2 and j < 2 else 0)
    assert weak_adep_check(x)


def test_random_en_members_are_unique():
    rng = random.Random(5)
    for _ in range(6):
        n = rng.randint(1, 4)
        lam = [F(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(n + 1)]
        if en_membership(lam).in_e:
            assert admissible_last_rows(lam) == []
