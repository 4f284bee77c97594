"""
The Lie algebra G = sl8 + Lambda^4 W acting on V = Lambda^2 W* + Lambda^2 W.

Ordered basis of V: the 28 vectors e_i*^e_j* (i < j, lexicographic), then the
28 vectors e_i^e_j.  Operators on V are sparse dicts {(row, col): value}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exact import InputError, Matrix, fmt
from .exterior import DIM, ExtVector, basis, perm_sign, star, volume_dual, wedge

PAIRS = basis(2)
QUADS = basis(4)
NV = 2 * len(PAIRS)
V_INDEX = {("d", p): k for k, p in enumerate(PAIRS)}
V_INDEX.update({("w", p): len(PAIRS) + k for k, p in enumerate(PAIRS)})
V_LABELS = [None] * NV
for (_kind, _p), _k in V_INDEX.items():
    V_LABELS[_k] = ("e%d*^e%d*" if _kind == "d" else "e%d^e%d") % (_p[0] + 1, _p[1] + 1)


# --- sparse operators -------------------------------------------------------

def sp_clean(A):
    return {k: v for k, v in A.items() if v}


def sp_add(A, B, s=1):
    C = dict(A)
    for k, v in B.items():
        C[k] = C.get(k, 0) + s * v
    return sp_clean(C)


def sp_scale(A, s):
    return sp_clean({k: s * v for k, v in A.items()})


def sp_mul(A, B):
    rows_of_B = {}
    for (k, j), v in B.items():
        rows_of_B.setdefault(k, []).append((j, v))
    C = {}
    for (i, k), v in A.items():
        for j, w in rows_of_B.get(k, ()):
            C[(i, j)] = C.get((i, j), 0) + v * w
    return sp_clean(C)


def sp_comm(A, B):
    return sp_add(sp_mul(A, B), sp_mul(B, A), -1)


def sp_T(A):
    return {(j, i): v for (i, j), v in A.items()}


def sp_identity(n=NV):
    return {(i, i): 1 for i in range(n)}


def sp_trace(A):
    return sum((v for (i, j), v in A.items() if i == j), 0)


def sp_dense(A, n=NV):
    rows = [[0] * n for _ in range(n)]
    for (i, j), v in A.items():
        rows[i][j] = v
    return Matrix(rows)


# --- Lie algebra elements ---------------------------------------------------

@dataclass(frozen=True)
class LieElement:
    """lam: traceless 8x8 matrix as sorted ((i, j), value) items; sig: element of Lambda^4 W."""

    lam: tuple = ()
    sig: tuple = ()

    @classmethod
    def make(cls, lam=None, sig=None):
        lam = {k: v for k, v in (lam or {}).items() if v}
        if sum(v for (i, j), v in lam.items() if i == j) != 0:
            raise InputError("sl8 part must be traceless")
        if isinstance(sig, ExtVector):
            if sig.degree != 4 or sig.dual:
                raise InputError("Sigma part must lie in Lambda^4 W")
            sig = sig.as_dict()
        sig = {tuple(k): v for k, v in (sig or {}).items() if v}
        return cls(tuple(sorted(lam.items())), tuple(sorted(sig.items())))

    @property
    def lambda_part(self) -> Matrix:
        rows = [[0] * DIM for _ in range(DIM)]
        for (i, j), v in self.lam:
            rows[i][j] = v
        return Matrix(rows)

    @property
    def sigma_part(self) -> ExtVector:
        return ExtVector(4, self.sig)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, s):
        return LieElement.make({k: s * v for k, v in self.lam}, {k: s * v for k, v in self.sig})

    __rmul__ = __mul__

    def _combine(self, other, s):
        lam = dict(self.lam)
        for k, v in other.lam:
            lam[k] = lam.get(k, 0) + s * v
        sig = dict(self.sig)
        for k, v in other.sig:
            sig[k] = sig.get(k, 0) + s * v
        return LieElement.make(lam, sig)

    def __bool__(self):
        return bool(self.lam or self.sig)

    def __str__(self):
        parts = [f"{fmt(v)}*E{i + 1}{j + 1}" for (i, j), v in self.lam]
        parts += [f"{fmt(v)}*" + "^".join(f"e{i + 1}" for i in k) for k, v in self.sig]
        return " + ".join(parts) or "0"


def elementary(i, j) -> LieElement:
    """X_ij: the matrix unit with 1 at (i, j), 1-based, i != j."""
    if i == j:
        raise InputError("X_ij needs i != j")
    return LieElement.make({(i - 1, j - 1): 1})


def diagonal(entries) -> LieElement:
    return LieElement.make({(i, i): Fraction(v) for i, v in enumerate(entries)})


# --- the representation rho -------------------------------------------------

def _rho_gl(lam):
    """Natural action of a matrix on Lambda^2 W and (as -A^T) on Lambda^2 W*."""
    M = {}
    for (i, j), a in lam.items():
        for p in PAIRS:
            for pos in (0, 1):
                # e_j -> a e_i inside e_p[0] ^ e_p[1]
                if p[pos] == j:
                    new = list(p)
                    new[pos] = i
                    s = perm_sign(new)
                    if s:
                        key = (V_INDEX[("w", tuple(sorted(new)))], V_INDEX[("w", p)])
                        M[key] = M.get(key, 0) + s * a
                # e_i* -> -a e_j* inside e_p[0]* ^ e_p[1]*
                if p[pos] == i:
                    new = list(p)
                    new[pos] = j
                    s = perm_sign(new)
                    if s:
                        key = (V_INDEX[("d", tuple(sorted(new)))], V_INDEX[("d", p)])
                        M[key] = M.get(key, 0) - s * a
    return sp_clean(M)


def _rho_sigma(sig):
    """
    Lambda^4 W acting on V, twice the sum of
      Lambda^4 W x Lambda^2 W -> Lambda^6 W = (Lambda^2 W)* = Lambda^2 W*   and
      Lambda^4 W x Lambda^2 W* -> Lambda^4 W* x Lambda^2 W* -> Lambda^6 W* = Lambda^2 W.
    """
    M = {}
    x = ExtVector.make(4, sig)
    x_dual = volume_dual(x)
    for p in PAIRS:
        img = volume_dual(wedge(x, ExtVector.make(2, {p: 1})))
        for q, c in img.coeffs:
            M[(V_INDEX[("d", q)], V_INDEX[("w", p)])] = 2 * c
        img = volume_dual(wedge(x_dual, ExtVector.make(2, {p: 1}, dual=True)))
        for q, c in img.coeffs:
            M[(V_INDEX[("w", q)], V_INDEX[("d", p)])] = 2 * c
    return sp_clean(M)


def rho(X: LieElement) -> dict:
    """Sparse 56x56 matrix of X acting on V."""
    return sp_add(_rho_gl(dict(X.lam)), _rho_sigma(dict(X.sig)))


def rho_matrix(X: LieElement) -> Matrix:
    return sp_dense(rho(X))


def cartan_involution(X: LieElement) -> LieElement:
    """sigma: -transpose on sl8, x |-> -x* on Lambda^4 W."""
    lam = {(j, i): -v for (i, j), v in X.lam}
    sig = {k: -v for k, v in star(ExtVector(4, X.sig)).coeffs}
    return LieElement.make(lam, sig)


def symplectic_gram() -> dict:
    """omega(lambda, v) = <v, lambda> for lambda in Lambda^2 W*, v in Lambda^2 W; antisymmetric."""
    J = {}
    for p in PAIRS:
        d, w = V_INDEX[("d", p)], V_INDEX[("w", p)]
        J[(d, w)] = 1
        J[(w, d)] = -1
    return J


def weight_of_basis_vector(k):
    """Weight of the k-th basis vector of V as an integer 8-vector (before projection)."""
    kind, p = next(key for key, idx in V_INDEX.items() if idx == k)
    sign = -1 if kind == "d" else 1
    v = [0] * DIM
    for i in p:
        v[i] += sign
    return tuple(v)
