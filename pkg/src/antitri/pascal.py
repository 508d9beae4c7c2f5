"""Anti-identity, Pascal matrix and the diagonalising conjugation by it.

A lower triangular ``X`` belongs to ``V_P`` when ``P^-1 X P`` is diagonal,
where ``P`` is the lower Pascal matrix of binomial coefficients.  Such an
``X`` is determined by its diagonal: ``X = P diag(lam) P^-1``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .exact import Matrix, to_fraction


def anti_identity(n: int) -> Matrix:
    """``(n+1) x (n+1)`` matrix with ones on the anti-diagonal; its own inverse."""
    return Matrix.from_function(n + 1, lambda i, j: 1 if i + j == n else 0)


def pascal(n: int) -> Matrix:
    return Matrix.from_function(n + 1, lambda i, j: comb(i, j) if i >= j else 0)


def pascal_inverse(n: int) -> Matrix:
    """Closed form ``(-1)^(i-j) C(i, j)``."""
    return Matrix.from_function(
        n + 1, lambda i, j: (-1) ** (i - j) * comb(i, j) if i >= j else 0
    )


def conjugate_q(n: int) -> Matrix:
    """``P^-1 G P`` from its closed form ``(-1)^i C(n-i, j-i)``, upper triangular."""
    return Matrix.from_function(
        n + 1, lambda i, j: (-1) ** i * comb(n - i, j - i) if j >= i else 0
    )


def pi_map(lam: Sequence) -> Matrix:
    """``P diag(lam) P^-1``: the unique V_P matrix with diagonal ``lam``."""
    lam = [to_fraction(v) for v in lam]
    if not lam:
        raise ValueError("spectrum must be nonempty")
    n = len(lam) - 1
    return pascal(n) @ Matrix.diagonal(lam) @ pascal_inverse(n)


def phi_map(x: Matrix) -> tuple[Fraction, ...]:
    return x.diag()


def vp_conjugate(x: Matrix) -> Matrix:
    return pascal_inverse(x.n) @ x @ pascal(x.n)


def vp_membership(x: Matrix) -> bool:
    return vp_conjugate(x).is_diagonal()


def forward_differences(seq: Sequence, order: int, start: int) -> Fraction:
    """``(Delta^order a)_start`` with ``(Delta a)_i = a_(i+1) - a_i``, by repeated differencing."""
    row = [to_fraction(v) for v in seq[start : start + order + 1]]
    if len(row) != order + 1:
        raise IndexError("sequence too short for the requested difference")
    for _ in range(order):
        row = [b - a for a, b in zip(row, row[1:])]
    return row[0]


def reconstruct_by_differences(lam: Sequence) -> Matrix:
    """Entries ``(-1)^(i-j) C(i, j) (Delta^(i-j) lam)_j``; an independent route to :func:`pi_map`."""
    lam = [to_fraction(v) for v in lam]
    return Matrix.from_function(
        len(lam),
        lambda i, j: (-1) ** (i - j) * comb(i, j) * forward_differences(lam, i - j, j)
        if i >= j
        else 0,
    )


def from_upper_anti(y: Matrix) -> Matrix:
    """Triangular ``X`` whose ``X G`` is similar (by ``G``) to the upper anti-triangular ``y``.

    ``G y G`` is lower anti-triangular and equals ``(G y) G``.
    """
    return anti_identity(y.n) @ y


def from_lower_anti(y: Matrix) -> Matrix:
    """Triangular ``X`` with ``X G = y``."""
    return y @ anti_identity(y.n)
