"""
Positive-definite quadratic forms over Q and their reduction under GL_N(Z).

A form phi(x) = sum a_ij x_i x_j is stored through its symmetric coefficient
matrix a.  The action of gamma in GL_N(Z) is (gamma.phi)(x) = phi(gamma^T x),
whose coefficient matrix is gamma a gamma^T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import InputError, Matrix, as_int_matrix, fmt, rat
from .modular import HPoint

HALF = Fraction(1, 2)
FOUR_THIRDS = Fraction(4, 3)


class NotPositiveDefinite(InputError):
    """Raised with the (1-based) index of the first non-positive Jacobi pivot."""

    def __init__(self, index, pivot):
        super().__init__(f"form is not positive definite: pivot t_{index} = {fmt(pivot)} <= 0")
        self.index = index
        self.pivot = pivot


@dataclass(frozen=True)
class QuadraticForm:
    a: Matrix

    def __post_init__(self):
        a = self.a if isinstance(self.a, Matrix) else Matrix(self.a)
        if not a.is_symmetric():
            raise InputError("coefficient matrix must be square and symmetric")
        object.__setattr__(self, "a", a)

    @property
    def n(self):
        return self.a.rows

    @classmethod
    def binary(cls, a, b, c):
        """The form a x^2 + b xy + c y^2 (so a_12 = b/2)."""
        a, b, c = rat(a), rat(b), rat(c)
        return cls(Matrix([[a, Fraction(b) / 2], [Fraction(b) / 2, c]]))

    @classmethod
    def identity(cls, n):
        return cls(Matrix.identity(n))

    @classmethod
    def from_json(cls, doc):
        try:
            a = Matrix.from_json(doc["a"])
        except (KeyError, TypeError) as exc:
            raise InputError("form document needs an 'a' array") from exc
        if "n" in doc and doc["n"] != a.rows:
            raise InputError("'n' does not match the size of 'a'")
        return cls(a)

    def to_json(self):
        return {"n": self.n, "a": [[fmt(x) for x in row] for row in self.a]}

    def __call__(self, x):
        n = self.n
        return sum(self.a[i, j] * x[i] * x[j] for i in range(n) for j in range(n))

    def is_integral(self):
        """Integer polynomial coefficients: a_ii and 2 a_ij in Z."""
        n = self.n
        return all(
            Fraction(self.a[i, j] * (1 if i == j else 2)).denominator == 1 for i in range(n) for j in range(i, n)
        )

    def swap_variables(self):
        P = Matrix([[int(i + j == self.n - 1) for j in range(self.n)] for i in range(self.n)])
        return act(P, self)


@dataclass(frozen=True)
class JacobiDecomposition:
    """phi(x) = sum_i t_i (x_i + sum_{j>i} u_ij x_j)^2."""

    t: tuple
    u: Matrix

    def reconstruct(self) -> QuadraticForm:
        n = len(self.t)
        U = Matrix([[1 if i == j else (self.u[i, j] if j > i else 0) for j in range(n)] for i in range(n)])
        return QuadraticForm(U.T * Matrix.diag(self.t) * U)

    def to_json(self):
        n = len(self.t)
        return {
            "t": [fmt(x) for x in self.t],
            "u": [[fmt(self.u[i, j]) for j in range(n)] for i in range(n)],
        }


def act(gamma, phi: QuadraticForm) -> QuadraticForm:
    """(gamma . phi)(x) = phi(gamma^T x); coefficient matrix gamma a gamma^T."""
    gamma = as_int_matrix(gamma)
    if gamma.shape != (phi.n, phi.n):
        raise InputError("gamma has the wrong size")
    if gamma.det() not in (1, -1):
        raise InputError("gamma is not unimodular")
    return QuadraticForm(gamma * phi.a * gamma.T)


def _jacobi(a):
    """Completion of squares; returns (t, u) lists, stopping at a bad pivot."""
    n = len(a)
    s = [[Fraction(x) for x in row] for row in a]
    t = []
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        piv = s[i][i]
        if piv <= 0:
            raise NotPositiveDefinite(i + 1, piv)
        t.append(piv)
        for j in range(i + 1, n):
            u[i][j] = s[i][j] / piv
        # Schur complement on the trailing block
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                s[j][k] -= s[j][i] * s[i][k] / piv
    return t, u


def jacobi_decompose(phi: QuadraticForm) -> JacobiDecomposition:
    t, u = _jacobi(phi.a.tolist())
    return JacobiDecomposition(tuple(_n(x) for x in t), Matrix(u))


def _n(x):
    return x.numerator if x.denominator == 1 else x


def is_positive_definite(phi: QuadraticForm) -> bool:
    try:
        _jacobi(phi.a.tolist())
    except NotPositiveDefinite:
        return False
    return True


def in_siegel_set(phi: QuadraticForm) -> bool:
    """|u_ij| <= 1/2 for all i < j and t_i <= (4/3) t_{i+1}, both exact."""
    return _siegel_ok(*_jacobi(phi.a.tolist()))


def _siegel_ok(t, u):
    n = len(t)
    if any(abs(u[i][j]) > HALF for i in range(n) for j in range(i + 1, n)):
        return False
    return all(t[i] <= FOUR_THIRDS * t[i + 1] for i in range(n - 1))


@dataclass(frozen=True)
class ReductionCertificate:
    gamma: Matrix
    reduced: QuadraticForm
    jacobi: JacobiDecomposition
    # product of leading principal minors, recorded before each swap and at the end
    potentials: tuple = field(default=(), compare=False)

    def check(self, phi: QuadraticForm) -> bool:
        return (
            self.gamma.is_unimodular()
            and act(self.gamma, phi) == self.reduced
            and in_siegel_set(self.reduced)
        )

    def to_json(self):
        doc = {"gamma": self.gamma.to_json(), "reduced": self.reduced.to_json()}
        doc.update(self.jacobi.to_json())
        return doc


def _potential(a):
    """Product of the leading principal minors of a (all positive here)."""
    t, _ = _jacobi(a)
    out = Fraction(1)
    minor = Fraction(1)
    for x in t:
        minor *= x
        out *= minor
    return out


def siegel_reduce(phi: QuadraticForm) -> ReductionCertificate:
    """
    Find gamma in GL_N(Z) with gamma.phi in the Siegel set.

    Exact LLL on the coefficient matrix with Lovasz parameter 1: size-reduce
    so |u_ij| <= 1/2, swap i, i+1 whenever t_{i+1} + u_{i,i+1}^2 t_i < t_i.
    At the end t_{i+1} >= (3/4) t_i.  Each swap strictly lowers the product of
    leading principal minors, a positive rational with bounded denominator.
    """
    t, u = _jacobi(phi.a.tolist())  # validates positive definiteness
    n = phi.n
    G = [[Fraction(x) for x in row] for row in phi.a]
    gam = [[int(i == j) for j in range(n)] for i in range(n)]
    potentials = []

    def shear(j, i, q):
        # basis_j -= q * basis_i, i.e. row_j of gamma; Gram updated to match
        gam[j] = [x - q * y for x, y in zip(gam[j], gam[i])]
        for k in range(n):
            G[j][k] -= q * G[i][k]
        for k in range(n):
            G[k][j] -= q * G[k][i]

    def size_reduce(k):
        for i in range(k - 1, -1, -1):
            _, uu = _jacobi(G)
            mu = uu[i][k]
            if abs(mu) > HALF:
                shear(k, i, math.floor(mu + HALF))

    k = 1
    while k < n:
        size_reduce(k)
        t, u = _jacobi(G)
        if t[k] + u[k - 1][k] ** 2 * t[k - 1] < t[k - 1]:
            potentials.append(_potential(G))
            gam[k], gam[k - 1] = gam[k - 1], gam[k]
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            k = max(k - 1, 1)
        else:
            k += 1
    # earlier columns may have lost size reduction after late swaps
    for k in range(1, n):
        size_reduce(k)
    potentials.append(_potential(G))
    gamma = Matrix(gam)
    reduced = act(gamma, phi)
    if reduced.a != Matrix(G):
        raise AssertionError("Gram bookkeeping diverged from gamma")
    return ReductionCertificate(gamma, reduced, jacobi_decompose(reduced), tuple(potentials))


def binary_to_point(phi: QuadraticForm):
    """
    phi(x, y) = a (z x + y)(conj(z) x + y) with a = a_22, Re z = a_12/a_22,
    |z|^2 = a_11/a_22.  Returns ``(a, z)``.
    """
    if phi.n != 2:
        raise InputError("binary_to_point needs a binary form")
    _jacobi(phi.a.tolist())
    a11, a12, a22 = Fraction(phi.a[0, 0]), Fraction(phi.a[0, 1]), Fraction(phi.a[1, 1])
    re = a12 / a22
    return _n(a22), HPoint.from_im_squared(re, a11 / a22 - re**2)


def point_to_binary(a, z: HPoint) -> QuadraticForm:
    """Inverse of binary_to_point: a(|z|^2 x^2 + 2 Re(z) xy + y^2)."""
    a = Fraction(rat(a))
    return QuadraticForm(Matrix([[a * z.abs2, a * z.re], [a * z.re, a]]))


def represented_values(phi: QuadraticForm, bound: int) -> set:
    """
    All values phi(x) <= bound for x in Z^N.

    Enumeration follows the Jacobi decomposition from the last coordinate
    back (t_i (x_i + c_i)^2 <= remaining budget), with exact comparisons.
    """
    if not phi.is_integral():
        raise InputError("represented_values needs integer coefficients")
    if bound < 0:
        return set()
    t, u = _jacobi(phi.a.tolist())
    n = phi.n
    out = set()
    x = [0] * n

    def rec(i, budget):
        if i < 0:
            v = phi(x)
            if v <= bound:
                out.add(int(v))
            return
        c = sum((u[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        r2 = budget / t[i]  # (x_i + c)^2 <= r2
        r = math.isqrt(math.floor(r2)) + 1
        lo = math.floor(-c) - r
        hi = math.ceil(-c) + r
        for xi in range(lo, hi + 1):
            d = t[i] * (xi + c) ** 2
            if d <= budget:
                x[i] = xi
                rec(i - 1, budget - d)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return out
