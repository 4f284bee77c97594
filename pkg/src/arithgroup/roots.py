"""
Crystallographic root systems generated from simple-root data.

Roots are carried in two coordinate systems at once: integer coefficients on
the simple roots (used for heights, ordering and lattice questions) and
vectors in an ambient rational space with a given Gram matrix (used for
inner products).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import InputError, Matrix, invariant_factors, rank

ROOT_CAP = 10000


def _dot(u, v, gram):
    return sum(gram[i, j] * u[i] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j])


@dataclass(frozen=True)
class RootSystem:
    simple: tuple  # ambient vectors of the simple roots
    gram: Matrix  # ambient inner product
    roots: tuple  # coefficient tuples on the simple roots, sorted
    cartan: Matrix  # cartan[i, j] = <alpha_i, alpha_j> = 2(alpha_i, alpha_j)/(alpha_j, alpha_j)

    @property
    def rank(self):
        return len(self.simple)

    def __len__(self):
        return len(self.roots)

    @property
    def positive(self):
        return tuple(r for r in self.roots if sum(r) > 0)

    def vector(self, coeffs):
        """Ambient vector of the root with the given simple-root coefficients."""
        dim = len(self.simple[0])
        return tuple(sum(Fraction(c) * a[k] for c, a in zip(coeffs, self.simple)) for k in range(dim))

    def inner(self, u, v):
        return _dot(u, v, self.gram)

    def pairing(self, lam, i):
        """<lam, alpha_i> = 2 (lam, alpha_i)/(alpha_i, alpha_i) for an ambient vector lam."""
        a = self.simple[i]
        return Fraction(2 * self.inner(lam, a)) / self.inner(a, a)

    def coeff_pairing(self, coeffs, i):
        """<beta, alpha_i> for beta given by simple-root coefficients (always an integer)."""
        return sum(c * self.cartan[j, i] for j, c in enumerate(coeffs))

    def is_root(self, coeffs):
        return tuple(coeffs) in self._rootset

    @property
    def _rootset(self):
        cache = self.__dict__.get("_rs")
        if cache is None:
            cache = frozenset(self.roots)
            object.__setattr__(self, "_rs", cache)
        return cache

    def fundamental_weights(self):
        """Ambient vectors w_i with <w_i, alpha_j> = delta_ij."""
        M = self.cartan.inverse()
        return [self.vector([M[i, k] for k in range(self.rank)]) for i in range(self.rank)]

    def root_string(self, alpha, beta):
        """Integers k with beta + k*alpha a root (coefficient tuples)."""
        out = []
        bound = 4
        for k in range(-bound, bound + 1):
            v = tuple(b + k * a for a, b in zip(alpha, beta))
            if self.is_root(v):
                out.append(k)
        return out


def cartan_integer(u, v, gram):
    return Fraction(2 * _dot(u, v, gram)) / _dot(v, v, gram)


def generate_roots(simple, gram=None) -> RootSystem:
    """
    Close the simple roots under simple reflections.

    ``simple`` is a sequence of ambient vectors; ``gram`` the ambient inner
    product (identity by default).  Raises InputError on inconsistent data.
    """
    simple = tuple(tuple(Fraction(x) for x in v) for v in simple)
    if not simple:
        raise InputError("need at least one simple root")
    dim = len(simple[0])
    if any(len(v) != dim for v in simple):
        raise InputError("simple roots have different lengths")
    gram = Matrix.identity(dim) if gram is None else (gram if isinstance(gram, Matrix) else Matrix(gram))
    ell = len(simple)
    for v in simple:
        if _dot(v, v, gram) <= 0:
            raise InputError("simple roots must have positive length")
    C = [[cartan_integer(simple[i], simple[j], gram) for j in range(ell)] for i in range(ell)]
    for i in range(ell):
        for j in range(ell):
            c = C[i][j]
            if i == j:
                continue
            if c.denominator != 1 or c not in (0, -1, -2, -3):
                raise InputError(f"Cartan integer <alpha_{i + 1}, alpha_{j + 1}> = {c} is not in {{0,-1,-2,-3}}")
            if C[i][j] * C[j][i] not in (0, 1, 2, 3) or (C[i][j] == 0) != (C[j][i] == 0):
                raise InputError("inconsistent Cartan data")
    if rank(Matrix(simple)) != ell:
        raise InputError("simple roots are linearly dependent")
    cartan = Matrix([[int(c) for c in row] for row in C])

    start = [tuple(int(i == k) for k in range(ell)) for i in range(ell)]
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(ell):
                p = sum(c * cartan[j, i] for j, c in enumerate(beta))
                if p == 0:
                    continue
                gamma = tuple(c - (p if k == i else 0) for k, c in enumerate(beta))
                if gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
                    if len(seen) > ROOT_CAP:
                        raise InputError("root closure does not terminate (not a finite root system)")
        frontier = nxt
    if any(tuple(-c for c in r) not in seen for r in seen):
        raise InputError("closure is not symmetric under negation")
    if any(min(r) < 0 < max(r) for r in seen):
        raise InputError("mixed-sign root found; simple-root data is not a base")
    roots = tuple(sorted(seen, key=lambda r: (sum(r), r)))
    return RootSystem(simple, gram, roots, cartan)


def from_cartan(cartan) -> RootSystem:
    """Root system whose ambient space has the simple roots as basis."""
    A = cartan if isinstance(cartan, Matrix) else Matrix(cartan)
    n = A.rows
    # symmetrize: (alpha_i, alpha_j) = A_ij d_j with d_j = (alpha_j, alpha_j)/2
    d = [None] * n
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if d[i] is not None and d[j] is None and A[i, j]:
                    # A_ij d_j = A_ji d_i
                    d[j] = Fraction(A[j, i]) * d[i] / A[i, j]
                    changed = True
    if any(x is None for x in d):
        raise InputError("Cartan matrix is decomposable; pass each component separately")
    gram = Matrix([[A[i, j] * d[j] for j in range(n)] for i in range(n)])
    if not gram.is_symmetric():
        raise InputError("Cartan matrix is not symmetrizable")
    return generate_roots([[int(i == k) for k in range(n)] for i in range(n)], gram)


def cartan_matrix(kind: str) -> Matrix:
    """Cartan matrix for ``A<n>``, ``D<n>``, ``E6``, ``E7`` or ``E8`` (Bourbaki numbering)."""
    kind = kind.strip().upper()
    fam, rest = kind[0], kind[1:]
    try:
        n = int(rest)
    except ValueError:
        raise InputError(f"unknown root system type {kind!r}") from None
    edges = []
    if fam == "A" and n >= 1:
        edges = [(i, i + 1) for i in range(n - 1)]
    elif fam == "D" and n >= 4:
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif fam == "E" and n in (6, 7, 8):
        # 1-3-4-5-6-(7-8), with 2 attached to 4
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
    else:
        raise InputError(f"unsupported root system type {kind!r}")
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        A[i][j] = A[j][i] = -1
    return Matrix(A)


def root_system(kind: str) -> RootSystem:
    if kind.strip().upper() == "E7":
        return e7_root_system()
    return from_cartan(cartan_matrix(kind))


def weight_lattice_index(rs: RootSystem) -> int:
    """[L1 : L0] = |det(Cartan matrix)|."""
    return abs(rs.cartan.det())


def weight_lattice_index_snf(rs: RootSystem) -> int:
    out = 1
    for d in invariant_factors(rs.cartan):
        out *= d
    return out


# --- E7 in the coordinates eps_1..eps_8, with eps_1 + ... + eps_8 = 0 ----------

def project_sum_zero(v):
    """Representative of v modulo the all-ones vector with coordinate sum 0."""
    v = [Fraction(x) for x in v]
    mean = sum(v) / len(v)
    return tuple(x - mean for x in v)


def eps(*idx, n=8):
    """Sum of eps_i over the given 1-based indices, projected to sum zero."""
    v = [0] * n
    for i in idx:
        v[i - 1] += 1
    return project_sum_zero(v)


def eps_diff(i, j, n=8):
    v = [0] * n
    v[i - 1] += 1
    v[j - 1] -= 1
    return tuple(Fraction(x) for x in v)


# Killing normalization of the appendix: standard dot product divided by 12
E7_GRAM = Matrix.diag([Fraction(1, 12)] * 8)


def e7_simple_roots():
    return [
        eps_diff(1, 2),
        eps(4, 5, 6, 7),
        eps_diff(2, 3),
        eps_diff(3, 4),
        eps_diff(4, 5),
        eps_diff(5, 6),
        eps_diff(6, 7),
    ]


def e7_root_system() -> RootSystem:
    return generate_roots(e7_simple_roots(), E7_GRAM)
