"""Probability measures on [0, 1], their moments and the mixture matrices.

``A(u)`` is the Bernstein transition matrix ``C(i,j) u^j (1-u)^(i-j)``;
mixing it over a measure gives ``A_mu`` whose entries only involve moments,
so every supported family stays exactly rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .errors import IndexOutOfRange, PreconditionViolated
from .exact import Matrix, rank, to_fraction
from .pascal import pi_map, vp_membership

DISCRETE = "discrete"
LEBESGUE = "lebesgue"
BETA = "beta"


@dataclass(frozen=True)
class Measure:
    kind: str
    atoms: tuple = ()
    t: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind == DISCRETE:
            atoms = tuple((to_fraction(u), to_fraction(w)) for u, w in self.atoms)
            object.__setattr__(self, "atoms", atoms)
            locs = [u for u, _ in atoms]
            if not atoms:
                raise ValueError("discrete measure needs at least one atom")
            if any(not 0 <= u <= 1 for u in locs):
                raise ValueError("atoms must lie in [0, 1]")
            if len(set(locs)) != len(locs):
                raise ValueError("atom locations must be distinct")
            if any(w <= 0 for _, w in atoms):
                raise ValueError("atom weights must be positive")
            if sum(w for _, w in atoms) != 1:
                raise ValueError("atom weights must sum to 1")
        elif self.kind == BETA:
            t = to_fraction(self.t)
            if t <= 0:
                raise ValueError("beta parameter must be positive")
            object.__setattr__(self, "t", t)
        elif self.kind != LEBESGUE:
            raise ValueError(f"unknown measure kind {self.kind!r}")

    @classmethod
    def discrete(cls, atoms) -> "Measure":
        return cls(DISCRETE, tuple(atoms))

    @classmethod
    def dirac(cls, u) -> "Measure":
        return cls(DISCRETE, ((u, 1),))

    @classmethod
    def lebesgue(cls) -> "Measure":
        return cls(LEBESGUE)

    @classmethod
    def beta(cls, t) -> "Measure":
        """Symmetric Beta(t, t)."""
        return cls(BETA, t=t)

    def support_in_endpoints(self) -> bool:
        """Support contained in {0, 1}."""
        return self.kind == DISCRETE and all(u in (0, 1) for u, _ in self.atoms)

    def to_json(self) -> dict:
        if self.kind == DISCRETE:
            return {"kind": DISCRETE, "atoms": [[str(u), str(w)] for u, w in self.atoms]}
        if self.kind == BETA:
            return {"kind": BETA, "t": str(self.t)}
        return {"kind": LEBESGUE}

    @classmethod
    def from_json(cls, data: dict) -> "Measure":
        kind = data["kind"]
        if kind == DISCRETE:
            return cls.discrete((u, w) for u, w in data["atoms"])
        if kind == BETA:
            return cls.beta(data["t"])
        return cls(kind)


def rising(t: Fraction, i: int) -> Fraction:
    """Pochhammer symbol ``t (t+1) ... (t+i-1)``."""
    out = Fraction(1)
    for k in range(i):
        out *= t + k
    return out


def moment(mu: Measure, i: int) -> Fraction:
    if mu.kind == DISCRETE:
        return sum((w * u**i for u, w in mu.atoms), Fraction(0))
    if mu.kind == LEBESGUE:
        return Fraction(1, i + 1)
    return rising(mu.t, i) / rising(2 * mu.t, i)


def moments(mu: Measure, count: int) -> list[Fraction]:
    return [moment(mu, i) for i in range(count)]


def bernstein_matrix(u, n: int) -> Matrix:
    u = to_fraction(u)
    return Matrix.from_function(
        n + 1, lambda i, j: comb(i, j) * u**j * (1 - u) ** (i - j) if i >= j else 0
    )


def a_mu_matrix(mu: Measure, n: int) -> Matrix:
    """Mixture of ``A(u)`` over ``mu``, built from moments by expanding ``(1-u)^(i-j)``."""
    a = moments(mu, n + 1)

    def entry(i, j):
        if i < j:
            return 0
        s = sum(comb(i - j, k) * (-1) ** k * a[j + k] for k in range(i - j + 1))
        return comb(i, j) * s

    return Matrix.from_function(n + 1, entry)


def b_symmetric_matrix(u, n: int) -> Matrix:
    u = to_fraction(u)
    return (bernstein_matrix(u, n) + bernstein_matrix(1 - u, n)) * Fraction(1, 2)


def is_stochastic(x: Matrix) -> bool:
    return all(v >= 0 for r in x.rows for v in r) and all(sum(r) == 1 for r in x.rows)


def is_row_symmetric(x: Matrix) -> bool:
    """Row-reversal symmetry ``x[i, i-j] == x[i, j]`` on the triangle."""
    return all(x[i, i - j] == x[i, j] for i in range(x.size) for j in range(i + 1))


def signed_difference(a: Sequence, i: int, j: int) -> Fraction:
    """``(-1)^j (Delta^j a)_i`` from the binomial sum."""
    s = sum(comb(j, k) * (-1) ** (j - k) * to_fraction(a[k + i]) for k in range(j + 1))
    return (-1) ** j * s


def cm_violation(a: Sequence, depth: int) -> Optional[tuple[int, int]]:
    """First ``(i, j)`` with ``i + j <= depth`` where complete monotonicity fails."""
    if depth < 0 or depth > len(a) - 1:
        raise IndexOutOfRange(f"depth {depth} needs {depth + 1} terms, have {len(a)}")
    for total in range(depth + 1):
        for j in range(total + 1):
            i = total - j
            if signed_difference(a, i, j) < 0:
                return (i, j)
    return None


def cm_check(a: Sequence, depth: int) -> bool:
    return cm_violation(a, depth) is None


def d_defect(lam: Sequence, odd_index: int) -> Fraction:
    """``lam_(2i+1) - 1/2 sum_(k<=2i) C(2i+1, k) (-1)^k lam_k`` for ``odd_index = 2i+1``."""
    m = odd_index
    s = sum(comb(m, k) * (-1) ** k * to_fraction(lam[k]) for k in range(m))
    return to_fraction(lam[m]) - s / 2


def d_violation(lam: Sequence) -> Optional[int]:
    return next((m for m in range(1, len(lam), 2) if d_defect(lam, m) != 0), None)


def d_condition_check(lam: Sequence) -> bool:
    return d_violation(lam) is None


def complete_to_d(lam: Sequence) -> list[Fraction]:
    """Keep the even entries and overwrite each odd one so the D-condition holds."""
    out = [to_fraction(v) for v in lam]
    for m in range(1, len(out), 2):
        out[m] = sum(comb(m, k) * (-1) ** k * out[k] for k in range(m)) / 2
    return out


def reflect_measure(mu: Measure) -> Measure:
    if mu.kind == DISCRETE:
        return Measure.discrete(sorted((1 - u, w) for u, w in mu.atoms))
    return mu


def reflected_moment(mu: Measure, i: int) -> Fraction:
    """Moment of the reflection ``u -> 1 - u``, from the moments of ``mu``."""
    return sum((comb(i, k) * (-1) ** k * moment(mu, k) for k in range(i + 1)), Fraction(0))


def reflection_invariant(mu: Measure, depth: int) -> bool:
    """Moments of ``mu`` and of its reflection agree up to ``depth``."""
    return all(moment(mu, i) == reflected_moment(mu, i) for i in range(depth + 1))


def symmetric_vp_dimension(n: int) -> int:
    """Dimension of the symmetric V_P matrices of size n+1, by exact rank.

    ``pi_map`` is linear in the diagonal; the symmetric ones form the kernel
    of ``lam -> (x[i,j] - x[i,i-j])``.
    """
    size = n + 1
    images = [pi_map([1 if k == b else 0 for k in range(size)]) for b in range(size)]
    defects = []
    for i in range(size):
        for j in range(i + 1):
            if j < i - j:
                defects.append([x[i, j] - x[i, i - j] for x in images])
    return size - (rank(defects) if defects else 0)


def symmetric_basis_check(n: int, points: Sequence) -> bool:
    """Do the ``B(u)`` (plus ``B(1/2)`` for even n) form a basis of symmetric V_P matrices?"""
    pts = [to_fraction(u) for u in points]
    want = (n + 2) // 2
    closure = {u for p in pts for u in (p, 1 - p)}
    if n % 2:
        ok = len(pts) == (n + 1) // 2 and len(closure) == n + 1
    else:
        ok = len(pts) == n // 2 and len(closure) == n
    if not ok:
        raise PreconditionViolated("points do not satisfy the distinctness condition")
    mats = [b_symmetric_matrix(u, n) for u in pts]
    if n % 2 == 0:
        mats.append(b_symmetric_matrix(Fraction(1, 2), n))
    if not all(vp_membership(m) and is_row_symmetric(m) for m in mats):
        return False
    vectors = [[v for r in m.rows for v in r] for m in mats]
    return rank(vectors) == len(mats) == want == symmetric_vp_dimension(n)
