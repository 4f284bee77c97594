"""
Exterior powers of W = Q^8 and of its dual.

Basis vectors of Lambda^k W are strictly increasing index tuples (0-based
internally, printed 1-based).  The volume e_1 ^ ... ^ e_8 identifies
Lambda^8 W with Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..exact import InputError, fmt

DIM = 8
ALL = frozenset(range(DIM))


def perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an index repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def complement(idx):
    return tuple(sorted(ALL - set(idx)))


def basis(k):
    return list(combinations(range(DIM), k))


def label(idx, dual=False):
    star = "*" if dual else ""
    return "^".join(f"e{i + 1}{star}" for i in idx)


@dataclass(frozen=True)
class ExtVector:
    """Element of Lambda^k W (``dual=False``) or Lambda^k W* (``dual=True``)."""

    degree: int
    coeffs: tuple  # sorted ((index tuple, coefficient), ...), zero entries dropped
    dual: bool = False

    @classmethod
    def make(cls, degree, coeffs, dual=False):
        items = {}
        for idx, c in dict(coeffs).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise InputError(f"index {idx} does not have degree {degree}")
            s = perm_sign(idx)
            if s == 0 or c == 0:
                continue
            key = tuple(sorted(idx))
            items[key] = items.get(key, 0) + s * c
        return cls(degree, tuple(sorted((k, v) for k, v in items.items() if v)), dual)

    @classmethod
    def basis_vector(cls, *idx, dual=False):
        """e_{i1} ^ ... ^ e_{ik} from 1-based indices."""
        return cls.make(len(idx), {tuple(i - 1 for i in idx): 1}, dual)

    def as_dict(self):
        return dict(self.coeffs)

    def __add__(self, other):
        self._compatible(other)
        d = self.as_dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, 0) + v
        return ExtVector.make(self.degree, d, self.dual)

    def __neg__(self):
        return ExtVector(self.degree, tuple((k, -v) for k, v in self.coeffs), self.dual)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return ExtVector.make(self.degree, {k: s * v for k, v in self.coeffs}, self.dual)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.coeffs)

    def _compatible(self, other):
        if self.degree != other.degree or self.dual != other.dual:
            raise InputError("exterior vectors of different degree or variance")

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{fmt(v)}*{label(k, self.dual)}" for k, v in self.coeffs)


def wedge(u: ExtVector, v: ExtVector) -> ExtVector:
    """Exterior product, with shuffle signs."""
    if u.dual != v.dual:
        raise InputError("cannot wedge vectors of different variance")
    k = u.degree + v.degree
    if k > DIM:
        raise InputError(f"degree {k} exceeds {DIM}")
    out = {}
    for a, x in u.coeffs:
        for b, y in v.coeffs:
            s = perm_sign(a + b)
            if s:
                key = tuple(sorted(a + b))
                out[key] = out.get(key, 0) + s * x * y
    return ExtVector.make(k, out, u.dual)


def det_pairing(u: ExtVector, lam: ExtVector):
    """<v_1^...^v_k, l_1^...^l_k> = det(l_j(v_i)); basis vectors pair to delta."""
    if u.dual or not lam.dual:
        raise InputError("det_pairing takes a vector of Lambda^k W and one of Lambda^k W*")
    if u.degree != lam.degree:
        raise InputError("degree mismatch")
    d = lam.as_dict()
    total = sum((x * d.get(a, 0) for a, x in u.coeffs), Fraction(0))
    return total.numerator if total.denominator == 1 else total


def volume_dual(u: ExtVector) -> ExtVector:
    """
    Lambda^k W -> (Lambda^(8-k) W)* = Lambda^(8-k) W*, u |-> (v |-> coefficient of u ^ v).

    The same formula, read with the variance flipped, gives Lambda^k W* ->
    Lambda^(8-k) W.
    """
    out = {}
    for a, x in u.coeffs:
        c = complement(a)
        out[c] = out.get(c, 0) + perm_sign(a + c) * x
    return ExtVector.make(DIM - u.degree, out, not u.dual)


def identify_dual(u: ExtVector) -> ExtVector:
    """Identify W* with W through the chosen bases (e_i* <-> e_i)."""
    return ExtVector(u.degree, u.coeffs, not u.dual)


def star(u: ExtVector) -> ExtVector:
    """x |-> x*: Lambda^4 W -> Lambda^4 W* -> Lambda^4 W (e1^e2^e3^e4 |-> e5^e6^e7^e8)."""
    return identify_dual(volume_dual(u))
