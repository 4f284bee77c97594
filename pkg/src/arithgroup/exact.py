"""
Exact rational and integer linear algebra.

Every scalar is either a Python ``int`` or a ``fractions.Fraction``; nothing
in here ever touches a float.  Matrices are small and dense, stored as a
tuple of row tuples and never mutated after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


class InputError(ValueError):
    """Malformed or out-of-domain input."""


def rat(x) -> Fraction | int:
    """Coerce ``x`` to an exact scalar; integral values come back as ``int``."""
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        raise InputError("floating point input is not accepted; use 'p/q' strings")
    try:
        q = Fraction(x) if not isinstance(x, Fraction) else x
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"cannot parse rational {x!r}") from exc
    return q.numerator if q.denominator == 1 else q


def fmt(x) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when q = 1."""
    return str(Fraction(x))


class Matrix:
    """Immutable dense matrix over Q (entries ``int`` or ``Fraction``)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data):
        data = tuple(tuple(rat(x) for x in row) for row in data)
        if not data or not data[0]:
            raise InputError("matrix must have at least one row and one column")
        cols = len(data[0])
        if any(len(r) != cols for r in data):
            raise InputError("ragged matrix rows")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def _raw(cls, data):
        m = object.__new__(cls)
        m.rows = len(data)
        m.cols = len(data[0])
        m._data = data
        return m

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, m, n=None):
        n = m if n is None else n
        return cls._raw(tuple((0,) * n for _ in range(m)))

    @classmethod
    def diag(cls, entries):
        entries = [rat(x) for x in entries]
        n = len(entries)
        return cls._raw(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def column(cls, entries):
        return cls([[x] for x in entries])

    @classmethod
    def from_json(cls, rows):
        return cls([[rat(x) for x in row] for row in rows])

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._data[i][j]
        return self._data[key]

    def __iter__(self):
        return iter(self._data)

    def tolist(self):
        return [list(r) for r in self._data]

    def to_json(self):
        if self.is_integral():
            return [list(r) for r in self._data]
        return [[fmt(x) for x in r] for r in self._data]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        return f"Matrix({[[fmt(x) for x in r] for r in self._data]})"

    def __add__(self, other):
        self._check_same_shape(other)
        return Matrix._raw(tuple(tuple(_norm(a + b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __sub__(self, other):
        self._check_same_shape(other)
        return Matrix._raw(tuple(tuple(_norm(a - b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __neg__(self):
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._data))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise InputError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other._data))
            return Matrix._raw(
                tuple(tuple(_norm(sum(a * b for a, b in zip(r, c) if a and b)) for c in cols) for r in self._data)
            )
        s = rat(other)
        return Matrix._raw(tuple(tuple(_norm(s * a) for a in r) for r in self._data))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k):
        if not self.is_square:
            raise InputError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @property
    def T(self):
        return Matrix._raw(tuple(zip(*self._data)))

    def trace(self):
        return _norm(sum(self._data[i][i] for i in range(min(self.rows, self.cols))))

    def is_integral(self):
        return all(isinstance(x, int) for r in self._data for x in r)

    def is_symmetric(self):
        return self.is_square and all(self._data[i][j] == self._data[j][i] for i in range(self.rows) for j in range(i))

    def is_unimodular(self):
        return self.is_square and self.is_integral() and self.det() in (1, -1)

    def det(self):
        if not self.is_square:
            raise InputError("determinant of a non-square matrix")
        a = [[Fraction(x) for x in r] for r in self._data]
        n = self.rows
        sign = 1
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                return 0
            if p != k:
                a[k], a[p] = a[p], a[k]
                sign = -sign
            for i in range(k + 1, n):
                f = a[i][k] / a[k][k]
                if f:
                    for j in range(k, n):
                        a[i][j] -= f * a[k][j]
        d = Fraction(sign)
        for k in range(n):
            d *= a[k][k]
        return _norm(d)

    def inverse(self):
        n = self.rows
        if not self.is_square:
            raise InputError("inverse of a non-square matrix")
        a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._data)]
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                raise InputError("matrix is singular")
            a[k], a[p] = a[p], a[k]
            piv = a[k][k]
            a[k] = [x / piv for x in a[k]]
            for i in range(n):
                if i != k and a[i][k]:
                    f = a[i][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return Matrix._raw(tuple(tuple(_norm(x) for x in r[n:]) for r in a))

    def submatrix(self, rows, cols):
        return Matrix._raw(tuple(tuple(self._data[i][j] for j in cols) for i in rows))

    def _check_same_shape(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            raise InputError("shape mismatch")


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def as_int_matrix(m) -> Matrix:
    """Coerce to a Matrix and insist on integer entries."""
    m = m if isinstance(m, Matrix) else Matrix(m)
    if not m.is_integral():
        raise InputError("expected an integer matrix")
    return m


def parse_int_matrix(text: str, n: int | None = None) -> Matrix:
    """Parse ``"a,b,c,d"`` (row-major, square) into an integer matrix."""
    try:
        vals = [int(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad integer matrix {text!r}") from exc
    if n is None:
        n = int(round(len(vals) ** 0.5))
    if n * n != len(vals):
        raise InputError(f"{len(vals)} entries do not form a square matrix")
    return Matrix([vals[i * n:(i + 1) * n] for i in range(n)])


# --- Smith normal form -------------------------------------------------------

def smith_normal_form(A):
    """
    Smith normal form of an integer matrix.

    Returns ``(D, U, V)`` with ``D == U * A * V``, ``U`` and ``V`` unimodular and
    ``D`` diagonal with nonnegative entries d_1 | d_2 | ... .
    """
    A = as_int_matrix(A)
    m, n = A.shape
    D = [list(r) for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in D:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    for s in range(min(m, n)):
        while True:
            nz = [(abs(D[i][j]), i, j) for i in range(s, m) for j in range(s, n) if D[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(s, pi)
            swap_cols(s, pj)
            p = D[s][s]
            dirty = False
            for i in range(s + 1, m):
                if D[i][s]:
                    add_row(i, s, -(D[i][s] // p))
                    dirty = dirty or D[i][s] != 0
            for j in range(s + 1, n):
                if D[s][j]:
                    add_col(j, s, -(D[s][j] // p))
                    dirty = dirty or D[s][j] != 0
            if dirty:
                continue
            # pivot must divide the whole remaining block
            bad = next(((i, j) for i in range(s + 1, m) for j in range(s + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(s, bad[0], 1)
        if D[s][s] < 0:
            D[s] = [-x for x in D[s]]
            U[s] = [-x for x in U[s]]
    return Matrix._raw(tuple(map(tuple, D))), Matrix._raw(tuple(map(tuple, U))), Matrix._raw(tuple(map(tuple, V)))


def invariant_factors(A) -> list[int]:
    """Diagonal of the Smith normal form (length min(rows, cols))."""
    D, _, _ = smith_normal_form(A)
    return [D[i, i] for i in range(min(D.shape))]


# --- linear systems ----------------------------------------------------------

@dataclass(frozen=True)
class Solution:
    """Outcome of :func:`solve_exact`; ``particular`` is None when inconsistent."""

    particular: Matrix | None
    kernel: list = field(default_factory=list)

    @property
    def consistent(self):
        return self.particular is not None


def rref(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def solve_exact(A, b) -> Solution:
    """
    Solve ``A x = b`` exactly.

    When the system is underdetermined the kernel basis is returned alongside a
    particular solution.  An inconsistent system gives ``particular=None``.
    """
    A = A if isinstance(A, Matrix) else Matrix(A)
    b = b if isinstance(b, Matrix) else Matrix.column(b)
    if b.cols != 1 or b.rows != A.rows:
        raise InputError(f"right-hand side {b.shape} incompatible with {A.shape}")
    n = A.cols
    aug, pivots = rref([list(r) + [b[i, 0]] for i, r in enumerate(A)])
    if n in pivots:
        return Solution(None, [])
    x = [Fraction(0)] * n
    for row, c in zip(aug, pivots):
        x[c] = row[n]
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(aug, pivots):
            v[c] = -row[f]
        kernel.append(Matrix.column(v))
    return Solution(Matrix.column(x), kernel)


def rank(A) -> int:
    A = A if isinstance(A, Matrix) else Matrix(A)
    return len(rref(A.tolist())[1])


def vector_gcd(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
