"""
SL2(Z) acting on the upper half-plane.

Points are kept exact: the real part is rational and the imaginary part is
r*sqrt(s) with r rational and s a squarefree positive integer.  Since
Im(gz) = Im(z) / |cz + d|^2 and |cz + d|^2 is rational, the radicand s never
changes under the action, so every reduction below is a rational computation.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

from sympy import factorint, isprime

from .exact import InputError, Matrix, as_int_matrix, rat
from .minkowski import m as minkowski_m

INFINITE = math.inf


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Write n = f^2 * s with s squarefree; return (f, s)."""
    if n <= 0:
        raise InputError("squarefree_split needs a positive integer")
    f = s = 1
    for p, e in factorint(n).items():
        f *= p ** (e // 2)
        if e % 2:
            s *= p
    return f, s


@dataclass(frozen=True)
class SL2Element:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for x in (self.a, self.b, self.c, self.d):
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError("SL2 entries must be integers")
        if self.a * self.d - self.b * self.c != 1:
            raise InputError(f"determinant of {self} is not 1")

    @classmethod
    def from_matrix(cls, M):
        M = as_int_matrix(M)
        if M.shape != (2, 2):
            raise InputError("expected a 2x2 matrix")
        return cls(M[0, 0], M[0, 1], M[1, 0], M[1, 1])

    @classmethod
    def parse(cls, text):
        """Parse the CLI syntax ``"a,b,c,d"``."""
        try:
            a, b, c, d = (int(x) for x in text.split(","))
        except ValueError as exc:
            raise InputError(f"expected 'a,b,c,d', got {text!r}") from exc
        return cls(a, b, c, d)

    def __mul__(self, o):
        return SL2Element(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self):
        return SL2Element(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k):
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self):
        return SL2Element(self.d, -self.b, -self.c, self.a)

    def matrix(self):
        return Matrix([[self.a, self.b], [self.c, self.d]])

    def __str__(self):
        return f"{self.a},{self.b},{self.c},{self.d}"


IDENTITY = SL2Element(1, 0, 0, 1)
S = SL2Element(0, -1, 1, 0)
T = SL2Element(1, 1, 0, 1)
T_INV = SL2Element(1, -1, 0, 1)
TOKENS = {"S": S, "T": T, "T^-1": T_INV}


@dataclass(frozen=True)
class HPoint:
    """z = re + i * im_coeff * sqrt(im_radicand), with im_coeff > 0."""

    re: Fraction
    im_coeff: Fraction
    im_radicand: int = 1

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im_coeff", Fraction(self.im_coeff))
        if self.im_coeff <= 0:
            raise InputError("point must lie in the upper half-plane")
        if self.im_radicand < 1 or squarefree_split(self.im_radicand)[0] != 1:
            raise InputError("im_radicand must be a squarefree positive integer")

    @classmethod
    def make(cls, re, r, s=1):
        """Build a point from re + i*r*sqrt(s) for any positive integer s."""
        f, s0 = squarefree_split(int(s))
        return cls(Fraction(rat(re)), Fraction(rat(r)) * f, s0)

    @classmethod
    def from_im_squared(cls, re, im2):
        """Point with prescribed rational Im(z)^2 > 0."""
        im2 = Fraction(im2)
        if im2 <= 0:
            raise InputError("Im(z)^2 must be positive")
        # sqrt(p/q) = sqrt(p*q)/q
        f, s = squarefree_split(im2.numerator * im2.denominator)
        return cls(Fraction(re), Fraction(f, im2.denominator), s)

    @classmethod
    def parse(cls, re_text, im_text):
        """CLI syntax: re as ``"p/q"``; im as ``"r*sqrt(s)"``, ``"sqrt(s)"`` or ``"r"``."""
        mt = re.fullmatch(r"\s*(?:([-+]?[0-9/]+)\s*\*?\s*)?(?:sqrt\(\s*([0-9]+)\s*\))?\s*", im_text)
        if not mt or not (mt.group(1) or mt.group(2)):
            raise InputError(f"bad imaginary part {im_text!r}")
        r = mt.group(1) or "1"
        s = int(mt.group(2) or 1)
        return cls.make(rat(re_text), rat(r), s)

    @property
    def im2(self) -> Fraction:
        return self.im_coeff**2 * self.im_radicand

    @property
    def abs2(self) -> Fraction:
        return self.re**2 + self.im2

    def in_D(self) -> bool:
        return abs(self.re) <= Fraction(1, 2) and self.abs2 >= 1

    def in_interior_of_D(self) -> bool:
        return abs(self.re) < Fraction(1, 2) and self.abs2 > 1

    def __complex__(self):
        return complex(float(self.re), float(self.im_coeff) * math.sqrt(self.im_radicand))

    def im_str(self):
        return str(self.im_coeff) if self.im_radicand == 1 else f"{self.im_coeff}*sqrt({self.im_radicand})"

    def to_json(self):
        return {"re": str(self.re), "im": self.im_str(), "im2": str(self.im2)}

    def __str__(self):
        return f"{self.re} + i*{self.im_str()}"


def moebius(gamma: SL2Element, z: HPoint) -> HPoint:
    """gamma(z) = (a z + b)/(c z + d), computed exactly."""
    a, b, c, d = gamma.a, gamma.b, gamma.c, gamma.d
    den = (c * z.re + d) ** 2 + c * c * z.im2
    re_num = a * c * z.abs2 + (a * d + b * c) * z.re + b * d
    return HPoint(re_num / den, z.im_coeff / den, z.im_radicand)


def reduce_to_D(z: HPoint):
    """
    Move z into the fundamental domain D.

    Returns ``(gamma, z')`` with ``z' = gamma(z)``, ``|Re z'| <= 1/2`` and
    ``|z'| >= 1``.  Each inversion strictly increases Im, which bounds the loop.
    """
    moves, w = _reduction_steps(z)
    gamma = IDENTITY
    for kind, amount in moves:
        step = S if kind == "S" else SL2Element(1, amount, 0, 1)
        gamma = step * gamma
    return gamma, w


def _reduction_steps(z: HPoint):
    """Moves ("T", n) for T^n and ("S", 1), in the order reduce_to_D applies them."""
    moves = []
    w = z
    while True:
        n = floor(w.re + Fraction(1, 2)) if abs(w.re) > Fraction(1, 2) else 0
        if n:
            moves.append(("T", -n))
            w = moebius(SL2Element(1, -n, 0, 1), w)
        if w.abs2 >= 1:
            return moves, w
        moves.append(("S", 1))
        w = moebius(S, w)


def evaluate_word(word) -> SL2Element:
    out = IDENTITY
    for tok in word:
        try:
            out = out * TOKENS[tok]
        except KeyError:
            raise InputError(f"unknown token {tok!r}") from None
    return out


def decompose_ST(gamma: SL2Element) -> tuple[str, ...]:
    """
    Word in S, T, T^-1 whose product is +gamma or -gamma.

    gamma(2i) is pulled back to 2i, an interior point of D, so the reducing
    element is gamma^-1 up to the centre {+I, -I}.
    """
    base = HPoint(Fraction(0), Fraction(2), 1)
    moves, w = _reduction_steps(moebius(gamma, base))
    if w != base:
        raise AssertionError(f"reduction of gamma(2i) ended at {w}")
    # delta = g_m ... g_1 reduces; gamma = +-delta^-1 = g_1^-1 ... g_m^-1
    word = []
    for kind, amount in moves:
        if kind == "S":
            word.append("S")
        else:
            tok = "T^-1" if amount > 0 else "T"
            word.extend([tok] * abs(amount))
    return tuple(word)


def in_congruence_subgroup(gamma, a: int) -> bool:
    """True iff gamma is congruent to the identity modulo a."""
    if a < 1:
        raise InputError("modulus must be >= 1")
    M = gamma.matrix() if isinstance(gamma, SL2Element) else as_int_matrix(gamma)
    n = M.rows
    return all((M[i, j] - (i == j)) % a == 0 for i in range(n) for j in range(M.cols))


def _as_gl(gamma) -> Matrix:
    M = gamma.matrix() if isinstance(gamma, SL2Element) else as_int_matrix(gamma)
    if not M.is_unimodular():
        raise InputError("matrix is not in GL_N(Z)")
    return M


def element_order(gamma, N: int | None = None):
    """
    Order of gamma in GL_N(Z), or ``INFINITE``.

    Any element of finite order generates a finite subgroup, whose order
    divides m(N); only divisors of m(N) need to be tried.
    """
    M = _as_gl(gamma)
    N = M.rows if N is None else N
    if N != M.rows:
        raise InputError("N does not match the matrix size")
    bound = minkowski_m(N)
    one = Matrix.identity(N)
    for k in sorted(k for k in range(1, bound + 1) if bound % k == 0):
        if M**k == one:
            return k
    return INFINITE


@dataclass(frozen=True)
class Lemma9Certificate:
    p: int
    order: float
    valuation: int

    @property
    def torsion_free(self):
        return self.order == INFINITE


def lemma9_check(p: int, gamma) -> Lemma9Certificate:
    """Confirm that a non-identity element congruent to 1 mod p (p >= 3) has infinite order."""
    if p < 3 or not isprime(p):
        raise InputError("p must be a prime >= 3")
    M = _as_gl(gamma)
    if not in_congruence_subgroup(M, p):
        raise InputError(f"gamma is not congruent to the identity mod {p}")
    diff = M - Matrix.identity(M.rows)
    entries = [x for row in diff for x in row if x]
    if not entries:
        raise InputError("gamma is the identity")
    v = min(_valuation(x, p) for x in entries)
    return Lemma9Certificate(p, element_order(M), v)


def _valuation(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def free_word_check(generators, max_len: int) -> bool:
    """
    True iff no nonempty freely reduced word of length <= max_len in the
    generators and their inverses evaluates to the identity.
    """
    gens = [g.matrix() if isinstance(g, SL2Element) else as_int_matrix(g) for g in generators]
    if not gens:
        raise InputError("need at least one generator")
    letters = []
    for k, g in enumerate(gens):
        letters.append((k, 1, g))
        letters.append((k, -1, g.inverse()))
    one = Matrix.identity(gens[0].rows)

    def search(prod, last, depth):
        if depth == max_len:
            return True
        for k, e, g in letters:
            if last is not None and last == (k, -e):
                continue
            nxt = prod * g
            if nxt == one:
                return False
            if not search(nxt, (k, e), depth + 1):
                return False
        return True

    return search(one, None, 0)


def commutator_subgroup_generators():
    """The two free generators of [SL2(Z), SL2(Z)]."""
    return SL2Element(2, 1, 1, 1), SL2Element(1, 1, 1, 2)
