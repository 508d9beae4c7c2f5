"""Anti-diagonal eigenvalue property and the uniqueness certificates.

For lower triangular ``X`` and the anti-identity ``G``, the *weak* property
asks that ``det(t I - X G) = prod_i (t - (-1)^i x_ii)``; the *full* property
additionally asks that ``X G`` be diagonalisable.

Uniqueness of a weak-property matrix with prescribed diagonal is certified by
polynomials ``H_k``: the determinant of the coefficient grid of the last-row
cofactors of ``t I - D Q`` (``Q = P^-1 G P``).  ``H_k`` is only ever
evaluated at rational points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ConstraintViolated, IndexOutOfRange
from .exact import (
    Matrix,
    Poly,
    char_poly,
    det,
    det_poly,
    interpolate,
    nullspace,
    rank,
    squarefree_part,
    to_fraction,
)
from .pascal import anti_identity, conjugate_q, pi_map


def signed_diagonal(x: Matrix) -> tuple[Fraction, ...]:
    return tuple((-1) ** i * x[i, i] for i in range(x.size))


def expected_char_poly(x: Matrix) -> Poly:
    return Poly.from_roots(signed_diagonal(x))


def weak_adep_check(x: Matrix) -> bool:
    return char_poly(x @ anti_identity(x.n)) == expected_char_poly(x)


def _diagonalizable(m: Matrix, cp: Poly) -> bool:
    # minimal polynomial has simple roots iff the squarefree part annihilates m
    return squarefree_part(cp)(m).is_zero()


@dataclass(frozen=True)
class PropertyReport:
    weak: bool
    full: bool
    spectrum: tuple
    witness: Optional[str] = None

    def __post_init__(self):
        if self.full and not self.weak:
            raise ValueError("full property implies the weak one")

    def to_json(self) -> dict:
        return {
            "weak": self.weak,
            "full": self.full,
            "spectrum": [str(v) for v in self.spectrum],
            "witness": self.witness,
        }


def property_report(x: Matrix) -> PropertyReport:
    spectrum = signed_diagonal(x)
    xg = x @ anti_identity(x.n)
    cp = char_poly(xg)
    if cp != Poly.from_roots(spectrum):
        return PropertyReport(False, False, spectrum, "char_poly_mismatch")
    if len(set(spectrum)) == len(spectrum):
        return PropertyReport(True, True, spectrum, "distinct_signed_diagonal")
    if _diagonalizable(xg, cp):
        return PropertyReport(True, True, spectrum, "squarefree_part_annihilates")
    return PropertyReport(True, False, spectrum, "not_diagonalizable")


def full_adep_check(x: Matrix) -> bool:
    return property_report(x).full


# ---------------------------------------------------------------------------
# H_k certificates
# ---------------------------------------------------------------------------


def _shifted_system(z: Sequence[Fraction], k: int) -> list[list[Poly]]:
    """Rows of ``t I - D Q`` at size ``k+1`` with ``D = diag(z_0..z_k)``."""
    q = conjugate_q(k)
    z = list(z) + [Fraction(0)] * (k + 1 - len(z))
    t = Poly.x()
    return [
        [(t if i == j else Poly()) - z[i] * q[i, j] for j in range(k + 1)]
        for i in range(k + 1)
    ]


def last_row_cofactors(z: Sequence, k: int) -> list[Poly]:
    """Cofactors ``C_j = (-1)^(k+j) minor(k, j)`` for ``j = 0..k``, as polynomials in t."""
    z = [to_fraction(v) for v in z]
    system = _shifted_system(z, k)
    upper = system[:k]
    out = []
    for j in range(k + 1):
        minor = [[row[c] for c in range(k + 1) if c != j] for row in upper]
        out.append(det_poly(minor) * (-1) ** (k + j))
    return out


def cofactor_grid(z: Sequence, k: int) -> list[list[Fraction]]:
    """``f[m][j]`` = coefficient of ``t^m`` in ``C_j``, for ``m, j < k``."""
    cof = last_row_cofactors(z, k)
    return [[cof[j].coeff(m) for j in range(k)] for m in range(k)]


def _check_k(lam: Sequence, k: int):
    if not 1 <= k <= len(lam):
        raise IndexOutOfRange(f"k={k} outside 1..{len(lam)}")


def hk_evaluate(lam: Sequence, k: int, *, reduced: bool = False) -> Fraction:
    """Value of ``H_k`` at ``(lam_0, ..., lam_(k-1))``.

    The raw determinant always carries the monomial factor
    ``lam_0 * ... * lam_(k-1)``.  With ``reduced=True`` that factor is
    divided out (exactly, also when some ``lam_i`` vanish), which gives
    ``H_1 = 1`` and ``H_2 = -(lam_0 - lam_1)``.  Membership certificates use
    the raw value.
    """
    _check_k(lam, k)
    z = [to_fraction(v) for v in lam[:k]]
    if not reduced:
        return det(Matrix(cofactor_grid(z, k)))
    # H_k(z + e) as a polynomial in e, then strip prod(z_i + e)
    degree = k * (k + 1) // 2
    nodes = list(range(1, degree + 2))
    values = [det(Matrix(cofactor_grid([v + e for v in z], k))) for e in nodes]
    shifted = interpolate(nodes, values)
    content = Poly.from_roots(-v for v in z)
    return shifted.exact_div(content)(0)


@dataclass(frozen=True)
class CertificateRow:
    k: int
    h_value: Fraction
    nonzero: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "nonzero", self.h_value != 0)

    def to_json(self) -> dict:
        return {"k": self.k, "h_value": str(self.h_value), "nonzero": self.nonzero}


@dataclass(frozen=True)
class EnCertificate:
    rows: tuple
    in_e: bool
    in_e_tilde: bool
    first_failure: Optional[int]

    def to_json(self) -> dict:
        return {
            "rows": [r.to_json() for r in self.rows],
            "in_E": self.in_e,
            "in_E_tilde": self.in_e_tilde,
            "first_failure": self.first_failure,
        }


def en_membership(lam: Sequence) -> EnCertificate:
    lam = [to_fraction(v) for v in lam]
    n = len(lam) - 1
    rows = tuple(CertificateRow(k, hk_evaluate(lam, k)) for k in range(1, n + 1))
    failure = next((r.k for r in rows if not r.nonzero), None)
    in_e = failure is None
    signed = [(-1) ** i * v for i, v in enumerate(lam)]
    return EnCertificate(rows, in_e, in_e and len(set(signed)) == len(signed), failure)


def uniqueness_rank_check(lam: Sequence) -> bool:
    """Full rank of the cofactor system for the last row; same as ``H_n != 0``."""
    lam = [to_fraction(v) for v in lam]
    n = len(lam) - 1
    if n == 0:
        return True
    return rank(cofactor_grid(lam, n)) == n


def admissible_last_rows(lam: Sequence) -> list[list[Fraction]]:
    """Brute-force: all last-row perturbations ``W`` keeping the weak property.

    ``X = pi_map(lam) + W`` with ``W`` supported on ``(n, 0..n-1)``.  The
    characteristic polynomial of ``X G`` is affine in the last row, so the
    admissible ``W`` form the null space returned here (empty means only
    ``W = 0``).
    """
    lam = [to_fraction(v) for v in lam]
    n = len(lam) - 1
    if n == 0:
        return []
    g = anti_identity(n)
    base = pi_map(lam)
    p0 = char_poly(base @ g)
    columns = []
    for k in range(n):
        bump = Matrix.from_function(n + 1, lambda i, j: 1 if (i, j) == (n, k) else 0)
        d = char_poly((base + bump) @ g) - p0
        columns.append([d.coeff(m) for m in range(n + 1)])
    system = [[columns[k][m] for k in range(n)] for m in range(n + 1)]
    return nullspace(system, n)


def small_n_family(n: int, params: Sequence) -> Matrix:
    """Closed-form weak-property matrices for ``n = 1`` and ``n = 2``.

    ``n=1``: ``params = (a, b)`` and ``X G = [[0, a], [b, a-b]]``.
    ``n=2``: ``params = (a, b, c, p, q)`` with ``p q = 2 (a-b)(b-c)`` and
    ``X G = [[0,0,a], [0,b,p], [c,q,a-2b+c]]``.
    """
    vals = [to_fraction(v) for v in params]
    if n == 1:
        if len(vals) != 2:
            raise ValueError("n=1 takes (a, b)")
        a, b = vals
        xg = Matrix([[0, a], [b, a - b]])
    elif n == 2:
        if len(vals) != 5:
            raise ValueError("n=2 takes (a, b, c, p, q)")
        a, b, c, p, q = vals
        if p * q != 2 * (a - b) * (b - c):
            raise ConstraintViolated(f"p*q = {p * q} but 2(a-b)(b-c) = {2 * (a - b) * (b - c)}")
        xg = Matrix([[0, 0, a], [0, b, p], [c, q, a - 2 * b + c]])
    else:
        raise ValueError("closed forms exist only for n = 1, 2")
    return xg @ anti_identity(n)
