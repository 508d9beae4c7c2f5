"""Two- and three-site conditional matrices of product-measure particle systems.

A site distribution ``nu`` is stored unnormalised with ``w(0) = 1``; every
quantity below depends only on ratios ``g(i) = w(i-1) / w(i)``, so Poisson
and negative-binomial shapes stay rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    NoPositiveExtension,
    NotClassified,
    NotNormalizable,
    PreconditionViolated,
    TooFewValues,
)
from .exact import (
    Matrix,
    Poly,
    all_roots_real,
    char_poly,
    count_roots_below,
    to_fraction,
)
from .pascal import anti_identity

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SiteDistribution:
    weights: tuple

    def __post_init__(self):
        w = tuple(to_fraction(v) for v in self.weights)
        if not w:
            raise ValueError("need at least w(0)")
        if any(v <= 0 for v in w):
            raise ValueError("all weights must be strictly positive")
        if w[0] != 1:
            w = tuple(v / w[0] for v in w)
        object.__setattr__(self, "weights", w)

    @property
    def depth(self) -> int:
        """Largest index N with a known weight."""
        return len(self.weights) - 1

    @classmethod
    def geometric(cls, q, depth: int) -> "SiteDistribution":
        q = to_fraction(q)
        return cls(tuple(q**i for i in range(depth + 1)))

    @classmethod
    def poisson(cls, lam, depth: int) -> "SiteDistribution":
        lam = to_fraction(lam)
        out, w = [], Fraction(1)
        for i in range(depth + 1):
            if i:
                w = w * lam / i
            out.append(w)
        return cls(tuple(out))

    @classmethod
    def negative_binomial(cls, t, p, depth: int) -> "SiteDistribution":
        """Shape ``(t)_i / i! * (1-p)^i``; ``p^t`` normalisation dropped."""
        t, p = to_fraction(t), to_fraction(p)
        out, w = [], Fraction(1)
        for i in range(depth + 1):
            if i:
                w = w * (t + i - 1) * (1 - p) / i
            out.append(w)
        return cls(tuple(out))

    def to_json(self) -> dict:
        return {"weights": [str(v) for v in self.weights]}


@dataclass(frozen=True)
class JumpRate:
    """Values ``g(1..N)``; ``values[0]`` is ``g(1)``."""

    values: tuple
    family: str = "tabulated"
    params: tuple = ()

    def __post_init__(self):
        vals = tuple(to_fraction(v) for v in self.values)
        if any(v <= 0 for v in vals):
            raise ValueError("jump rates must be positive")
        object.__setattr__(self, "values", vals)

    def __call__(self, i: int) -> Fraction:
        if i < 1:
            raise IndexError("g is defined on 1, 2, ...")
        return self.values[i - 1]

    def __len__(self):
        return len(self.values)

    @classmethod
    def alpha_g_t(cls, alpha, t, upto: int) -> "JumpRate":
        alpha, t = to_fraction(alpha), to_fraction(t)
        vals = tuple(alpha * i * t / (i + t - 1) for i in range(1, upto + 1))
        return cls(vals, "alpha_G_t", (alpha, t))

    @classmethod
    def alpha_id(cls, alpha, upto: int) -> "JumpRate":
        alpha = to_fraction(alpha)
        return cls(tuple(alpha * i for i in range(1, upto + 1)), "alpha_Id", (alpha,))


def g_from_nu(nu: SiteDistribution) -> JumpRate:
    w = nu.weights
    return JumpRate(tuple(w[i - 1] / w[i] for i in range(1, len(w))))


def g_factorials(g: JumpRate, upto: int) -> list[Fraction]:
    """``g(0)! = 1, g(i)! = g(i) g(i-1) ... g(1)``."""
    out = [Fraction(1)]
    for i in range(1, upto + 1):
        out.append(out[-1] * g(i))
    return out


def g_binomial(fact: Sequence[Fraction], i: int, j: int) -> Fraction:
    return fact[i] / (fact[j] * fact[i - j])


@dataclass(frozen=True)
class PartitionValues:
    """``z[i] = Z_i`` for ``i = 0..upto``; ``z_tilde[i]`` for ``i = 0..upto-1`` (empty sum at 0)."""

    z: tuple
    z_tilde: tuple

    def check_recursion(self, g: JumpRate) -> bool:
        return all(self.z[i] == 2 + g(i) * self.z_tilde[i - 1] for i in range(2, len(self.z)))


def _z_tilde(fact: Sequence[Fraction], i: int) -> Fraction:
    return sum((fact[i] / (fact[j] * fact[i + 1 - j]) for j in range(1, i + 1)), Fraction(0))


def partition_values(g: JumpRate, upto: int) -> PartitionValues:
    if upto < 1 or upto > len(g):
        raise PreconditionViolated(f"upto={upto} outside 1..{len(g)}")
    fact = g_factorials(g, upto)
    z = tuple(
        sum((g_binomial(fact, i, j) for j in range(i + 1)), Fraction(0)) for i in range(upto + 1)
    )
    zt = tuple(_z_tilde(fact, i) for i in range(upto))
    return PartitionValues(z, zt)


def a_g_matrix(g: JumpRate, n: int) -> Matrix:
    """``(A_g)_ij = C_g(i, j) / Z_i`` on the lower triangle."""
    fact = g_factorials(g, n)
    rows = []
    for i in range(n + 1):
        b = [g_binomial(fact, i, j) for j in range(i + 1)]
        zi = sum(b, Fraction(0))
        rows.append([v / zi for v in b] + [0] * (n - i))
    return Matrix(rows)


def rtilde_from_nu(nu: SiteDistribution, n: int) -> Matrix:
    """Two-site conditional law ``nu(j) nu(i-j) / sum_k nu(k) nu(i-k)``."""
    if n > nu.depth:
        raise PreconditionViolated(f"n={n} exceeds the weight table depth {nu.depth}")
    w = nu.weights
    rows = []
    for i in range(n + 1):
        b = [w[j] * w[i - j] for j in range(i + 1)]
        s = sum(b, Fraction(0))
        rows.append([v / s for v in b] + [0] * (n - i))
    return Matrix(rows)


def rn_matrix(nu: SiteDistribution, n: int) -> Matrix:
    """Upper anti-triangular three-site matrix ``G * rtilde|_n``."""
    return anti_identity(n) @ rtilde_from_nu(nu, n)


def detailed_balance_check(nu: SiteDistribution, n: int) -> bool:
    if n > nu.depth:
        raise PreconditionViolated(f"n={n} exceeds the weight table depth {nu.depth}")
    w = nu.weights
    r = rn_matrix(nu, n)
    pi = [w[i] * sum((w[k] * w[n - i - k] for k in range(n - i + 1)), Fraction(0)) for i in range(n + 1)]
    return all(pi[i] * r[i, j] == pi[j] * r[j, i] for i in range(n + 1) for j in range(n + 1))


# ---------------------------------------------------------------------------
# Extending g(1), g(2) uniquely
# ---------------------------------------------------------------------------


def extend_g(g1, g2, upto: int) -> JumpRate:
    """Unique positive continuation of ``(g(1), g(2))`` with ``A_g`` in V_P.

    Step ``i >= 3`` solves ``g(i) (i Zt_(i-1) - Z_(i-1)) = i (Z_(i-1) - 2)``.
    Raises :class:`NoPositiveExtension` at the first ``i`` whose coefficient
    ``i Zt_(i-1) - Z_(i-1)`` is not positive.
    """
    g1, g2 = to_fraction(g1), to_fraction(g2)
    if g1 != 1:
        raise PreconditionViolated("normalise so that g(1) = 1")
    if g2 <= 0:
        raise PreconditionViolated("g(2) must be positive")
    if upto < 2:
        raise PreconditionViolated("need upto >= 2")
    vals = [g1, g2]
    fact = [Fraction(1), g1, g1 * g2]
    for i in range(3, upto + 1):
        prev = i - 1
        z_prev = sum((fact[prev] / (fact[j] * fact[prev - j]) for j in range(prev + 1)), Fraction(0))
        zt_prev = _z_tilde(fact, prev)
        coef = i * zt_prev - z_prev
        if coef <= 0:
            raise NoPositiveExtension(i, coef)
        gi = i * (z_prev - 2) / coef
        vals.append(gi)
        fact.append(fact[-1] * gi)
    s = g2
    if s == 2:
        return JumpRate(tuple(vals), "alpha_Id", (Fraction(1),))
    if s < 2:
        return JumpRate(tuple(vals), "alpha_G_t", (Fraction(1), s / (2 - s)))
    return JumpRate(tuple(vals))


def pole_index(s) -> Optional[int]:
    """First ``i`` with ``2(i-1) - (i-2) s <= 0``, i.e. where ``i s / (2(i-1) - (i-2) s)`` stops being positive."""
    s = to_fraction(s)
    if s <= 2:
        return None
    # 2(i-1) - (i-2)s <= 0  <=>  i >= (2s - 2) / (s - 2)
    bound = (2 * s - 2) / (s - 2)
    i = -(-bound.numerator // bound.denominator)
    return max(i, 3)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    family: str
    params: dict = field(default_factory=dict)
    witness: Optional[int] = None

    @property
    def in_vp(self) -> bool:
        return self.witness is None

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": {k: str(v) for k, v in self.params.items()},
            "witness": self.witness,
        }


def classify_g(g: JumpRate) -> Classification:
    if len(g) < 3:
        raise TooFewValues("need g(1), g(2), g(3) at least")
    alpha = g(1)
    s = g(2) / alpha
    if s == 2:
        expected = [alpha * i for i in range(1, len(g) + 1)]
        result = Classification("alpha_Id", {"alpha": alpha})
    elif s < 2:
        t = s / (2 - s)
        expected = [alpha * i * t / (i + t - 1) for i in range(1, len(g) + 1)]
        result = Classification("alpha_G_t", {"alpha": alpha, "t": t})
    else:
        return Classification("outside_V_P", {"s": s}, pole_index(s))
    bad = next((i for i in range(3, len(g) + 1) if g(i) != expected[i - 1]), None)
    if bad is not None:
        return Classification("outside_V_P", {"s": s}, bad)
    return result


def nu_classification(nu: SiteDistribution) -> Classification:
    if nu.depth < 3:
        raise TooFewValues("need weights w(0..3) at least")
    c = classify_g(g_from_nu(nu))
    if c.family == "alpha_G_t":
        alpha, t = c.params["alpha"], c.params["t"]
        if alpha * t <= 1:
            raise NotNormalizable(f"alpha*t = {alpha * t} <= 1")
        return Classification("negative_binomial", {"t": t, "p": 1 - 1 / (alpha * t)})
    if c.family == "alpha_Id":
        return Classification("poisson", {"lambda": 1 / c.params["alpha"]})
    return c


# ---------------------------------------------------------------------------
# Spectral conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralReport:
    classification: Classification
    horizon: int
    sup_value: Optional[Fraction]
    sup_below_half: Optional[bool]
    inf_g_even: Optional[Fraction]
    inf_g_even_positive: Optional[bool]
    per_n: tuple

    @property
    def lower_bound_holds(self) -> bool:
        return all(row["below_minus_half"] == 0 for row in self.per_n)

    def to_json(self) -> dict:
        frac = lambda v: None if v is None else str(v)  # noqa: E731
        return {
            "classification": self.classification.to_json(),
            "horizon": self.horizon,
            "sup_value": frac(self.sup_value),
            "sup_below_half": self.sup_below_half,
            "inf_g_even": frac(self.inf_g_even),
            "inf_g_even_positive": self.inf_g_even_positive,
            "min_eigenvalue_bound_holds": self.lower_bound_holds,
            "per_n": [dict(row) for row in self.per_n],
        }


def _spectrum_row(nu: SiteDistribution, n: int) -> dict:
    r = rn_matrix(nu, n)
    rt = rtilde_from_nu(nu, n)
    cp = char_poly(r)
    signed = [(-1) ** i * rt[i, i] for i in range(n + 1)]
    return {
        "n": n,
        "weak_property": cp == Poly.from_roots(signed),
        "all_real": all_roots_real(cp),
        "below_minus_half": count_roots_below(cp, -HALF, inclusive=False),
        "at_or_below_minus_half": count_roots_below(cp, -HALF, inclusive=True),
    }


def spectral_conditions(nu: SiteDistribution, n_max: int) -> SpectralReport:
    """Finite-horizon check of the two spectral conditions on ``R_n``, ``n <= n_max``."""
    c = nu_classification(nu)
    if not c.in_vp:
        raise NotClassified(f"distribution is outside V_P (witness {c.witness})")
    if not 1 <= n_max <= nu.depth:
        raise PreconditionViolated(f"n_max={n_max} outside 1..{nu.depth}")
    g = g_from_nu(nu)
    pv = partition_values(g, n_max)
    evens = range(2, n_max + 1, 2)
    sup_value = max((1 / pv.z[i] for i in evens), default=None)
    inf_g = min((g(i) for i in evens), default=None)
    rows = tuple(_spectrum_row(nu, n) for n in range(n_max + 1))
    return SpectralReport(
        classification=c,
        horizon=n_max,
        sup_value=sup_value,
        sup_below_half=None if sup_value is None else sup_value < HALF,
        inf_g_even=inf_g,
        inf_g_even_positive=None if inf_g is None else inf_g > 0,
        per_n=rows,
    )
