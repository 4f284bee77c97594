"""Minkowski's bound on the orders of finite subgroups of GL_N(Z)."""

from __future__ import annotations

from dataclasses import dataclass

from sympy import isprime, primerange

from .exact import InputError, Matrix, as_int_matrix

SUBGROUP_CAP = 20160


class GroupNotFinite(RuntimeError):
    """Subgroup enumeration exceeded its cap."""


def gl_order_mod_p(N: int, p: int) -> int:
    """Order a(N, p) of GL_N over the field with p elements."""
    if N < 1:
        raise InputError("N must be >= 1")
    if not isprime(p):
        raise InputError(f"{p} is not prime")
    q = p**N
    out = 1
    for k in range(N):
        out *= q - p**k
    return out


def minkowski_exponent(ell: int, N: int) -> int:
    """r(ell, N) = [N/(ell-1)] + [N/(ell(ell-1))] + [N/(ell^2(ell-1))] + ..."""
    if not isprime(ell):
        raise InputError(f"{ell} is not prime")
    total = 0
    d = ell - 1
    while d <= N:
        total += N // d
        d *= ell
    return total


@dataclass(frozen=True)
class MinkowskiTable:
    n: int
    factors: dict
    m: int

    def to_json(self):
        return {"n": self.n, "factors": {str(k): v for k, v in self.factors.items()}, "m": str(self.m)}


def minkowski_bound(N: int) -> MinkowskiTable:
    if N < 1:
        raise InputError("N must be >= 1")
    # r(ell, N) vanishes once ell - 1 > N
    factors = {}
    for ell in primerange(2, N + 2):
        r = minkowski_exponent(ell, N)
        if r:
            factors[int(ell)] = r
    m = 1
    for ell, r in factors.items():
        m *= ell**r
    return MinkowskiTable(N, factors, m)


def m(N: int) -> int:
    return minkowski_bound(N).m


def enumerate_group(generators, cap=SUBGROUP_CAP):
    """All elements of the group generated by ``generators`` (assumed finite)."""
    gens = [as_int_matrix(g) for g in generators]
    if not gens:
        raise InputError("need at least one generator")
    n = gens[0].rows
    e = Matrix.identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise GroupNotFinite(f"more than {cap} elements; group not verified finite")
                    nxt.append(y)
        frontier = nxt
    return seen


def reduce_mod(M, p):
    return tuple(tuple(x % p for x in row) for row in M)


@dataclass(frozen=True)
class InjectivityVerdict:
    order: int
    image_order: int
    p: int
    m: int

    @property
    def injective(self):
        return self.order == self.image_order

    @property
    def divides_m(self):
        return self.m % self.order == 0

    @property
    def ok(self):
        return self.injective and self.divides_m


def verify_injective_mod_p(generators, p: int, cap=SUBGROUP_CAP) -> InjectivityVerdict:
    """Check that a finite subgroup of GL_N(Z) embeds in GL_N(Z/p), p >= 3."""
    if p < 3 or not isprime(p):
        raise InputError("p must be a prime >= 3")
    group = enumerate_group(generators, cap)
    N = next(iter(group)).rows
    image = {reduce_mod(g, p) for g in group}
    return InjectivityVerdict(len(group), len(image), p, m(N))
