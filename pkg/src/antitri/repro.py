"""Golden suite: every worked example and closed form re-derived exactly.

Each anchor is a named assertion.  ``T`` and ``S`` are fixtures so a
corrupted copy can be injected; the failing anchors are then reported by
name.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional

from .eigenprop import (
    admissible_last_rows,
    full_adep_check,
    hk_evaluate,
    small_n_family,
    weak_adep_check,
)
from .errors import NoPositiveExtension
from .exact import Matrix, Poly, all_roots_real, char_poly, count_roots_below, triangular_inverse
from .moments import (
    Measure,
    a_mu_matrix,
    bernstein_matrix,
    cm_check,
    d_condition_check,
    is_row_symmetric,
    is_stochastic,
    reflection_invariant,
    rising,
    symmetric_vp_dimension,
)
from .particle import (
    JumpRate,
    SiteDistribution,
    a_g_matrix,
    detailed_balance_check,
    extend_g,
    nu_classification,
    partition_values,
    rn_matrix,
    rtilde_from_nu,
    spectral_conditions,
)
from .pascal import (
    anti_identity,
    conjugate_q,
    pascal,
    pascal_inverse,
    phi_map,
    pi_map,
    reconstruct_by_differences,
    vp_membership,
)

F = Fraction


def t_matrix(n: int) -> Matrix:
    return Matrix.from_function(n + 1, lambda i, j: F(1, i + 1) if i >= j else 0)


def s_matrix(n: int) -> Matrix:
    return Matrix.from_function(n + 1, lambda i, j: F(comb(i, j), 2**i) if i >= j else 0)


def default_fixtures(n: int) -> dict:
    return {"T": t_matrix(n), "S": s_matrix(n)}


@dataclass
class Context:
    n: int
    fixtures: dict

    @property
    def T(self) -> Matrix:
        return self.fixtures["T"]

    @property
    def S(self) -> Matrix:
        return self.fixtures["S"]


@dataclass(frozen=True)
class Anchor:
    id: str
    title: str
    check: Callable[[Context], bool]
    min_depth: int = 1


ANCHORS: list[Anchor] = []


def anchor(id: str, title: str, min_depth: int = 1):
    def deco(fn):
        ANCHORS.append(Anchor(id, title, fn, min_depth))
        return fn

    return deco


def _sample_lambda(n: int) -> list[Fraction]:
    return [F(i + 2, i * i + 3) for i in range(n + 1)]


@anchor("tg-spectrum", "TG has eigenvalues 1, -1/2, 1/3, ..., (-1)^n/(n+1)")
def _(ctx):
    t = ctx.T
    return char_poly(t @ anti_identity(t.n)) == Poly.from_roots(
        F((-1) ** i, i + 1) for i in range(t.size)
    )


@anchor("sg-spectrum", "SG has eigenvalues 1, -1/2, 1/4, ..., (-1)^n/2^n")
def _(ctx):
    s = ctx.S
    return char_poly(s @ anti_identity(s.n)) == Poly.from_roots(
        F((-1) ** i, 2**i) for i in range(s.size)
    )


@anchor("t-s-in-vp", "T and S are diagonalised by Pascal conjugation")
def _(ctx):
    return vp_membership(ctx.T) and vp_membership(ctx.S)


@anchor("t-s-full-property", "TG and SG are diagonalisable with the signed diagonal")
def _(ctx):
    return full_adep_check(ctx.T) and full_adep_check(ctx.S)


@anchor("anti-identity-involution", "G is its own inverse")
def _(ctx):
    g = anti_identity(ctx.n)
    return g @ g == Matrix.identity(ctx.n + 1)


@anchor("pascal-inverse-closed-form", "P^-1 has entries (-1)^(i-j) C(i,j)")
def _(ctx):
    return triangular_inverse(pascal(ctx.n)) == pascal_inverse(ctx.n)


@anchor("q-closed-form", "P^-1 G P = ((-1)^i C(n-i, j-i))")
def _(ctx):
    n = ctx.n
    return pascal_inverse(n) @ anti_identity(n) @ pascal(n) == conjugate_q(n)


@anchor("q-diagonal-signs", "diagonal of P^-1 G P is (-1)^i")
def _(ctx):
    q = conjugate_q(ctx.n)
    return all(q[i, i] == (-1) ** i for i in range(q.size))


@anchor("vp-implies-weak", "every Pascal-diagonalisable matrix has the weak property")
def _(ctx):
    return weak_adep_check(pi_map(_sample_lambda(ctx.n)))


@anchor("phi-pi-identity", "diagonal of P diag(lam) P^-1 is lam")
def _(ctx):
    lam = _sample_lambda(ctx.n)
    return list(phi_map(pi_map(lam))) == lam


@anchor("pi-phi-identity", "a V_P matrix is rebuilt from its diagonal")
def _(ctx):
    return pi_map(phi_map(ctx.T)) == ctx.T and pi_map(phi_map(ctx.S)) == ctx.S


@anchor("n1-closed-form", "n=1: XG = [[0,a],[b,a-b]] has eigenvalues a, -b")
def _(ctx):
    x = small_n_family(1, (3, 5))
    return (
        x == Matrix([[3, 0], [-2, 5]])
        and weak_adep_check(x)
        and char_poly(x @ anti_identity(1)) == Poly.from_roots((3, -5))
    )


@anchor("n2-closed-form", "n=2 family with pq = 2(a-b)(b-c) has the weak property", 2)
def _(ctx):
    return weak_adep_check(small_n_family(2, (3, 2, 1, 2, 1))) and weak_adep_check(
        small_n_family(2, (1, 1, 1, 0, 0))
    )


@anchor("n2-unique-completion", "n=2 completion with all leading blocks weak is P diag P^-1", 2)
def _(ctx):
    l0, l1, l2 = F(1), F(1, 2), F(1, 3)
    shown = Matrix([[0, 0, l0], [0, l1, l0 - l1], [l2, 2 * (l1 - l2), l0 - 2 * l1 + l2]])
    return pi_map((l0, l1, l2)) @ anti_identity(2) == shown


@anchor("h1-h2", "H_1 = 1 and H_2 = z0 - z1 up to sign, after removing z0...z_(k-1)")
def _(ctx):
    pts = [(F(1), F(1, 2)), (F(0), F(3)), (F(-2, 3), F(5, 7)), (F(4), F(4))]
    ok = all(hk_evaluate(p, 1, reduced=True) == 1 for p in pts)
    return ok and all(hk_evaluate(p, 2, reduced=True) == -(p[0] - p[1]) for p in pts)


@anchor("hk-nonzero", "H_k does not vanish at lam_i = 1/(i+1)")
def _(ctx):
    lam = [F(1, i + 1) for i in range(ctx.n + 1)]
    return all(hk_evaluate(lam, k) != 0 for k in range(1, min(ctx.n, 4) + 1))


@anchor("e2-injectivity", "for lam0 != lam1 only W = 0 keeps the weak property; lam0 = lam1 admits a family", 2)
def _(ctx):
    m = min(ctx.n, 4)
    unique = admissible_last_rows([F(1, i + 1) for i in range(m + 1)]) == []
    return unique and len(admissible_last_rows([F(1), F(1), F(1)])) > 0


@anchor("bernstein-diagonalisation", "P^-1 A(u) P = diag(u^i)")
def _(ctx):
    u = F(1, 3)
    n = ctx.n
    return pascal_inverse(n) @ bernstein_matrix(u, n) @ pascal(n) == Matrix.diagonal(
        [u**i for i in range(n + 1)]
    )


@anchor("lebesgue-gives-T", "mixing A(u) over Lebesgue measure gives T")
def _(ctx):
    return a_mu_matrix(Measure.lebesgue(), ctx.T.n) == ctx.T


@anchor("dirac-half-gives-S", "mixing A(u) over delta_1/2 gives S")
def _(ctx):
    return a_mu_matrix(Measure.dirac(F(1, 2)), ctx.S.n) == ctx.S


@anchor("a-mu-stochastic-vp", "A_mu is stochastic, in V_P and weak for Beta(2,2)")
def _(ctx):
    a = a_mu_matrix(Measure.beta(2), ctx.n)
    return is_stochastic(a) and vp_membership(a) and weak_adep_check(a)


@anchor("a-mu-full-property", "support not inside {0,1} gives the full property")
def _(ctx):
    mu = Measure.discrete([(F(1, 5), F(1, 3)), (F(3, 4), F(2, 3))])
    return full_adep_check(a_mu_matrix(mu, ctx.n))


@anchor("difference-reconstruction", "entries of a V_P matrix are binomial-weighted differences of its diagonal")
def _(ctx):
    lam = _sample_lambda(ctx.n)
    return reconstruct_by_differences(lam) == pi_map(lam)


@anchor("diagonal-completely-monotone", "the diagonal of a stochastic V_P matrix is completely monotone")
def _(ctx):
    return all(
        cm_check(list(phi_map(a_mu_matrix(mu, ctx.n))), ctx.n)
        for mu in (Measure.lebesgue(), Measure.dirac(F(1, 2)), Measure.beta(F(1, 2)))
    )


@anchor("reflection-symmetry", "A_mu is row-symmetric iff mu is reflection invariant")
def _(ctx):
    n = ctx.n
    sym = Measure.beta(3)
    asym = Measure.dirac(F(1, 3))
    return (
        is_row_symmetric(a_mu_matrix(sym, n))
        and reflection_invariant(sym, n)
        and not is_row_symmetric(a_mu_matrix(asym, n))
        and not reflection_invariant(asym, n)
    )


@anchor("d-condition", "diagonals of T and S satisfy the odd-index identity, delta_1/3 does not")
def _(ctx):
    return (
        d_condition_check(phi_map(ctx.T))
        and d_condition_check(phi_map(ctx.S))
        and not d_condition_check(phi_map(a_mu_matrix(Measure.dirac(F(1, 3)), ctx.n)))
    )


@anchor("symmetric-dimension", "symmetric V_P matrices of size m+1 form a space of dimension floor((m+2)/2)")
def _(ctx):
    return all(symmetric_vp_dimension(m) == (m + 2) // 2 for m in range(ctx.n + 1))


@anchor("geometric-rtilde-is-T", "geometric site law gives rtilde = T")
def _(ctx):
    nu = SiteDistribution.geometric(F(2, 3), ctx.T.n)
    return rtilde_from_nu(nu, ctx.T.n) == ctx.T


@anchor("poisson-rtilde-is-S", "Poisson site law gives rtilde = S")
def _(ctx):
    nu = SiteDistribution.poisson(F(5, 2), ctx.S.n)
    return rtilde_from_nu(nu, ctx.S.n) == ctx.S


def _example_site_laws(n):
    return [
        SiteDistribution.geometric(F(1, 2), n),
        SiteDistribution.poisson(1, n),
        SiteDistribution([F(1), F(3), F(1, 2), F(7), F(2, 9), F(5)] * (n // 6 + 1)),
    ]


@anchor("rn-structure", "R_n is stochastic, vanishes below the anti-diagonal and is row-reversal symmetric")
def _(ctx):
    for nu in _example_site_laws(ctx.n):
        r = rn_matrix(nu, ctx.n)
        n = ctx.n
        if not (all(sum(row) == 1 for row in r.rows) and all(v >= 0 for row in r.rows for v in row)):
            return False
        if any(r[i, j] != 0 for i in range(n + 1) for j in range(n + 1) if i + j > n):
            return False
        if any(r[i, j] != r[i, n - i - j] for i in range(n + 1) for j in range(n - i + 1)):
            return False
    return True


@anchor("rn-real-spectrum-bound", "R_n has real eigenvalues, all >= -1/2")
def _(ctx):
    for nu in _example_site_laws(ctx.n):
        for m in range(ctx.n + 1):
            cp = char_poly(rn_matrix(nu, m))
            if not all_roots_real(cp) or count_roots_below(cp, F(-1, 2), inclusive=False):
                return False
    return True


@anchor("rn-detailed-balance", "R_n is reversible for the first-site marginal")
def _(ctx):
    return all(detailed_balance_check(nu, ctx.n) for nu in _example_site_laws(ctx.n))


@anchor("min-eigenvalue-attained", "geometric R_1 has eigenvalue exactly -1/2")
def _(ctx):
    cp = char_poly(rn_matrix(SiteDistribution.geometric(F(1, 2), 1), 1))
    return count_roots_below(cp, F(-1, 2), inclusive=False) == 0 and count_roots_below(
        cp, F(-1, 2), inclusive=True
    ) == 1


@anchor("scaling-invariance", "A_g = A_(c g)")
def _(ctx):
    g = JumpRate([F(1), F(2, 5), F(7, 3), F(1, 9), F(4)] * (ctx.n // 5 + 1))
    cg = JumpRate([F(7, 2) * v for v in g.values])
    return a_g_matrix(g, ctx.n) == a_g_matrix(cg, ctx.n)


@anchor("beta-extension", "g(1)=1, g(2)=s<2 extends uniquely to G_t with t = s/(2-s)", 2)
def _(ctx):
    upto = max(ctx.n, 3)
    return all(
        extend_g(1, s, upto).values == JumpRate.alpha_g_t(1, s / (2 - s), upto).values
        for s in (F(1, 2), F(1), F(4, 3), F(3, 2))
    )


@anchor("identity-extension", "g(2)=2 extends to g = Id", 2)
def _(ctx):
    upto = max(ctx.n, 3)
    return extend_g(1, 2, upto).values == tuple(F(i) for i in range(1, upto + 1))


@anchor("no-extension-above-two", "g(2) = s > 2 has no positive extension (s=5/2 at 6, s=3 at 4, s=4 at 3)")
def _(ctx):
    for s, where in ((F(5, 2), 6), (F(3), 4), (F(4), 3)):
        try:
            extend_g(1, s, 12)
        except NoPositiveExtension as exc:
            if exc.index != where:
                return False
        else:
            return False
    return True


@anchor("z-closed-form", "for g = G_t, Z_i = (2t)_i / (t)_i", 1)
def _(ctx):
    ok = True
    for t in (F(1, 2), F(2), F(3)):
        pv = partition_values(JumpRate.alpha_g_t(1, t, ctx.n), ctx.n)
        ok &= all(pv.z[i] == rising(2 * t, i) / rising(t, i) for i in range(ctx.n + 1))
    return ok


@anchor("beta-mixture-is-a-g", "A_(Beta(t,t)) = A_(G_t)")
def _(ctx):
    return all(
        a_mu_matrix(Measure.beta(t), ctx.n) == a_g_matrix(JumpRate.alpha_g_t(1, t, ctx.n), ctx.n)
        for t in (F(1, 2), F(1), F(2), F(3))
    )


@anchor("nu-classification", "geometric -> NB(1, p), Poisson -> Poisson, NB(2,1/2) shape -> NB(2,1/2)", 3)
def _(ctx):
    n = max(ctx.n, 3)
    geo = nu_classification(SiteDistribution.geometric(F(2, 3), n))
    poi = nu_classification(SiteDistribution.poisson(2, n))
    nb = nu_classification(SiteDistribution.negative_binomial(2, F(1, 2), n))
    bad = nu_classification(SiteDistribution([1, 1, 1, 2] + [1] * (n - 3)))
    return (
        (geo.family, geo.params) == ("negative_binomial", {"t": 1, "p": F(1, 3)})
        and (poi.family, poi.params) == ("poisson", {"lambda": 2})
        and (nb.family, nb.params) == ("negative_binomial", {"t": 2, "p": F(1, 2)})
        and (bad.family, bad.witness) == ("outside_V_P", 3)
    )


@anchor("spectral-sup-values", "sup of (-1)^i rtilde_ii over i >= 2 is 1/3, 1/4, 3/10 (< 1/2)", 2)
def _(ctx):
    n = ctx.n
    depth = max(n, 3)
    got = [
        spectral_conditions(nu, n).sup_value
        for nu in (
            SiteDistribution.geometric(F(1, 2), depth),
            SiteDistribution.poisson(1, depth),
            SiteDistribution.negative_binomial(2, F(1, 2), depth),
        )
    ]
    return got == [F(1, 3), F(1, 4), F(3, 10)]


@dataclass(frozen=True)
class Outcome:
    id: str
    title: str
    status: str  # "pass" | "fail" | "skip" | "error"
    detail: Optional[str] = None

    def to_json(self) -> dict:
        return {"anchor": self.id, "title": self.title, "status": self.status, "detail": self.detail}


def run_golden(depth: int, fixtures: Optional[dict] = None) -> list[Outcome]:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    fx = default_fixtures(depth)
    if fixtures:
        fx.update(fixtures)
    ctx = Context(depth, fx)
    out = []
    for a in ANCHORS:
        if depth < a.min_depth:
            out.append(Outcome(a.id, a.title, "skip", f"needs depth >= {a.min_depth}"))
            continue
        try:
            ok = bool(a.check(ctx))
        except Exception as exc:  # a broken fixture must still name its anchor
            out.append(Outcome(a.id, a.title, "error", f"{type(exc).__name__}: {exc}"))
            continue
        out.append(Outcome(a.id, a.title, "pass" if ok else "fail"))
    return out
