"""Exact rational matrices and polynomials.

Everything here works over :class:`fractions.Fraction`; there is no floating
point anywhere.  Matrices are small dense immutable grids, polynomials are
stored with ascending coefficients.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Callable, Iterable, Sequence, Union

from .errors import NotTriangular, SingularMatrix, ZeroPolynomial

Scalar = Union[int, Fraction]

INF = float("inf")


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` text to a Fraction.

    Floats are rejected on purpose: silently importing a binary approximation
    would defeat the point of the library.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_fraction(q: Fraction) -> str:
    return str(q)


# --------------------------------------------------------------------------
# Matrices
# --------------------------------------------------------------------------


class Matrix:
    """Dense square matrix of Fractions, indexed from 0."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in rows)
        if not rows:
            raise ValueError("matrix must have at least one row")
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows

    @classmethod
    def _trusted(cls, rows) -> "Matrix":
        m = cls.__new__(cls)
        m.rows = rows
        return m

    @classmethod
    def from_function(cls, size: int, f: Callable[[int, int], Scalar]) -> "Matrix":
        return cls(((f(i, j) for j in range(size)) for i in range(size)))

    @classmethod
    def identity(cls, size: int) -> "Matrix":
        return cls.from_function(size, lambda i, j: 1 if i == j else 0)

    @classmethod
    def zeros(cls, size: int) -> "Matrix":
        return cls.from_function(size, lambda i, j: 0)

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        values = [to_fraction(v) for v in values]
        return cls.from_function(len(values), lambda i, j: values[i] if i == j else 0)

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        """Largest index, i.e. ``size - 1``."""
        return len(self.rows) - 1

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}])"

    def _check_same(self, other: "Matrix"):
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._trusted(
            tuple(tuple(map(operator.add, a, b)) for a, b in zip(self.rows, other.rows))
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._trusted(
            tuple(tuple(map(operator.sub, a, b)) for a, b in zip(self.rows, other.rows))
        )

    def __neg__(self) -> "Matrix":
        return Matrix._trusted(tuple(tuple(-x for x in r) for r in self.rows))

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return NotImplemented
        c = to_fraction(c)
        return Matrix._trusted(tuple(tuple(c * x for x in r) for r in self.rows))

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        cols = tuple(zip(*other.rows))
        return Matrix._trusted(
            tuple(
                tuple(sum(map(operator.mul, r, c), Fraction(0)) for c in cols)
                for r in self.rows
            )
        )

    def transpose(self) -> "Matrix":
        return Matrix._trusted(tuple(zip(*self.rows)))

    def diag(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.size))

    def trace(self) -> Fraction:
        return sum(self.diag(), Fraction(0))

    def leading(self, m: int) -> "Matrix":
        """Leading principal submatrix with indices ``0..m``."""
        if not 0 <= m < self.size:
            raise IndexError(f"leading block {m} out of range for size {self.size}")
        return Matrix._trusted(tuple(r[: m + 1] for r in self.rows[: m + 1]))

    def is_lower_triangular(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.size) for j in range(i + 1, self.size))

    def is_diagonal(self) -> bool:
        return all(
            self.rows[i][j] == 0 for i in range(self.size) for j in range(self.size) if i != j
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def tolist(self) -> list:
        return [list(r) for r in self.rows]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a (not necessarily square) rational matrix by exact elimination."""
    work = [[to_fraction(x) for x in r] for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r][c]
        for i in range(r + 1, len(work)):
            f = work[i][c]
            if f:
                f /= p
                row_r = work[r]
                work[i] = [a - f * b for a, b in zip(work[i], row_r)]
        r += 1
        if r == len(work):
            break
    return r


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right null space ``{x : rows @ x = 0}`` via reduced row echelon form."""
    work = [[to_fraction(x) for x in r] for r in rows]
    if ncols is None:
        if not work:
            raise ValueError("ncols required for an empty system")
        ncols = len(work[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r][c]
        work[r] = [x / p for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -work[row_idx][fc]
        basis.append(v)
    return basis


def det(m: Matrix) -> Fraction:
    work = [list(r) for r in m.rows]
    size = len(work)
    result = Fraction(1)
    for c in range(size):
        pivot = next((i for i in range(c, size) if work[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            result = -result
        p = work[c][c]
        result *= p
        for i in range(c + 1, size):
            f = work[i][c]
            if f:
                f /= p
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return result


def triangular_inverse(m: Matrix) -> Matrix:
    """Inverse of a lower triangular matrix by forward substitution."""
    if not m.is_lower_triangular():
        raise NotTriangular("matrix is not lower triangular")
    size = m.size
    if any(m[i, i] == 0 for i in range(size)):
        raise SingularMatrix("zero on the diagonal")
    inv = [[Fraction(0)] * size for _ in range(size)]
    for j in range(size):
        inv[j][j] = 1 / m[j, j]
        for i in range(j + 1, size):
            s = sum((m[i, k] * inv[k][j] for k in range(j, i)), Fraction(0))
            inv[i][j] = -s / m[i, i]
    return Matrix._trusted(tuple(tuple(r) for r in inv))


# --------------------------------------------------------------------------
# Polynomials
# --------------------------------------------------------------------------


class Poly:
    """Univariate polynomial over Q, coefficients in ascending degree order.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        """Monic polynomial ``prod(x - r)``."""
        p = cls((1,))
        for r in roots:
            p = p * cls((-to_fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    def __call__(self, x):
        if isinstance(x, Matrix):
            return self._eval_matrix(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _eval_matrix(self, m: Matrix) -> Matrix:
        acc = Matrix.zeros(m.size)
        ident = Matrix.identity(m.size)
        for c in reversed(self.coeffs):
            acc = acc @ m + ident * c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroPolynomial("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lc = other.lc
        if len(rem) - 1 < dd:
            return Poly(), Poly(rem)
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            c = rem[k + dd] / lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return Poly(c / self.lc for c in self.coeffs)

    def primitive(self) -> "Poly":
        """Positive rational multiple with coprime integer coefficients.

        The sign is kept, so sign evaluations are unaffected.
        """
        if self.is_zero():
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [c.numerator * (den // c.denominator) for c in self.coeffs]
        g = reduce(gcd, (abs(v) for v in ints))
        return Poly(Fraction(v // g) for v in ints)


def _as_poly(p) -> Poly:
    if isinstance(p, Poly):
        return p
    return Poly((p,))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no squarefree part")
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def squarefree_check(p: Poly) -> bool:
    """True iff ``gcd(p, p')`` is a constant."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree check of the zero polynomial")
    return poly_gcd(p, p.derivative()).degree == 0


# --------------------------------------------------------------------------
# Characteristic polynomial and real roots
# --------------------------------------------------------------------------


def char_poly(m: Matrix) -> Poly:
    """Monic ``det(x*I - m)`` via the Faddeev-LeVerrier recurrence.

    The matrix is first scaled by the lcm ``L`` of its denominators so the
    recurrence runs on integers (every trace division is then exact); the
    coefficients are rescaled by powers of ``L`` at the end.
    """
    size = m.size
    den = lcm(*(x.denominator for r in m.rows for x in r))
    b = [[x.numerator * (den // x.denominator) for x in r] for r in m.rows]
    # integer coefficients of det(y*I - b), highest first
    c = [1]
    work = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    mul = operator.mul
    for k in range(1, size + 1):
        cols = tuple(zip(*work))
        prod = [[sum(map(mul, row, col)) for col in cols] for row in b]
        tr = sum(prod[i][i] for i in range(size))
        q, r = divmod(-tr, k)
        assert r == 0
        c.append(q)
        for i in range(size):
            prod[i][i] += q
        work = prod
    # det(x I - m) = den^-size * det(den x I - b)
    coeffs = [Fraction(c[size - d], den ** (size - d)) for d in range(size + 1)]
    return Poly(coeffs)


def _sign(q) -> int:
    return (q > 0) - (q < 0)


def _sign_at(p: Poly, x) -> int:
    if x == INF:
        return _sign(p.lc)
    if x == -INF:
        return _sign(p.lc) * (-1 if p.degree % 2 else 1)
    return _sign(p(x))


def sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm chain of the squarefree part of ``p``, with content removed."""
    q = squarefree_part(p).primitive()
    chain = [q, q.derivative().primitive()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        rem = -(chain[-2] % chain[-1])
        if rem.is_zero():
            break
        chain.append(rem.primitive())
    return [c for c in chain if not c.is_zero()]


def _variations(chain: list[Poly], x) -> int:
    signs = [s for s in (_sign_at(c, x) for c in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: Poly, lo=-INF, hi=INF) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval ``(lo, hi]``.

    Endpoints may be rationals or ``±inf``.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    if not lo < hi:
        raise ValueError("need lo < hi")
    if p.degree == 0:
        return 0
    if lo != -INF:
        lo = to_fraction(lo)
    if hi != INF:
        hi = to_fraction(hi)
    chain = sturm_sequence(p)
    return _variations(chain, lo) - _variations(chain, hi)


def count_roots_below(p: Poly, bound, *, inclusive: bool) -> int:
    """Distinct real roots ``< bound`` (or ``<= bound`` when inclusive)."""
    bound = to_fraction(bound)
    closed = sturm_count(p, -INF, bound)
    if not inclusive and p(bound) == 0:
        closed -= 1
    return closed


def all_roots_real(p: Poly) -> bool:
    """Every complex root of ``p`` is real (checked on the squarefree part)."""
    return sturm_count(p, -INF, INF) == squarefree_part(p).degree


# --------------------------------------------------------------------------
# Determinants of polynomial matrices
# --------------------------------------------------------------------------


def det_poly(entries: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square matrix with polynomial entries (Bareiss)."""
    work = [[_as_poly(e) for e in row] for row in entries]
    size = len(work)
    if size == 0:
        return Poly((1,))
    sign = 1
    prev = Poly((1,))
    for k in range(size - 1):
        if work[k][k].is_zero():
            swap = next((i for i in range(k + 1, size) if not work[i][k].is_zero()), None)
            if swap is None:
                return Poly()
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                work[i][j] = (work[i][j] * pivot - work[i][k] * work[k][j]).exact_div(prev)
        prev = pivot
    return work[-1][-1] * sign


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Unique polynomial of degree < len(xs) through the points (Newton form)."""
    xs = [to_fraction(x) for x in xs]
    coef = [to_fraction(y) for y in ys]
    if len(xs) != len(coef) or len(set(xs)) != len(xs):
        raise ValueError("need distinct nodes, one value per node")
    m = len(xs)
    for level in range(1, m):
        for i in range(m - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    p = Poly((coef[-1],))
    for i in range(m - 2, -1, -1):
        p = p * Poly((-xs[i], 1)) + coef[i]
    return p
