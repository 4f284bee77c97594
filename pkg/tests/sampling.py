"""Random inputs shared by the property and acceptance tests."""

from fractions import Fraction

from arithgroup.exact import Matrix
from arithgroup.forms import QuadraticForm, is_positive_definite
from arithgroup.modular import HPoint, SL2Element


def random_rational(rng, bound=100, positive=False):
    p = rng.randint(1, bound) if positive else rng.randint(-bound, bound)
    return Fraction(p, rng.randint(1, bound))


def random_pd_form(rng, n, bound=100, tries=100000):
    """
    Positive-definite form with every entry p/q, |p|, q <= bound, by rejection.
    Off-diagonal entries are redrawn until the 2x2 minor a_ii a_jj - a_ij^2 is
    positive (necessary for definiteness), then the whole form is tested.
    """
    for _ in range(tries):
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = random_rational(rng, bound, positive=True)
        for i in range(n):
            for j in range(i):
                x = random_rational(rng, bound)
                while x * x >= a[i][i] * a[j][j]:
                    x = random_rational(rng, bound)
                a[i][j] = a[j][i] = x
        phi = QuadraticForm(Matrix(a))
        if is_positive_definite(phi):
            return phi
    raise RuntimeError("no positive-definite sample found")


def random_unimodular(rng, n, steps=12, bound=3):
    g = Matrix.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        rows = [[int(r == c) for c in range(n)] for r in range(n)]
        rows[i][j] = rng.randint(-bound, bound)
        g = g * Matrix(rows)
    if rng.random() < 0.5:
        g = Matrix.diag([-1] + [1] * (n - 1)) * g
    return g


def random_sl2(rng, steps=8):
    g = SL2Element(1, 0, 0, 1)
    for _ in range(steps):
        k = rng.randint(-3, 3)
        g = g * SL2Element(1, k, 0, 1) * SL2Element(0, -1, 1, 0)
    return g


def random_hpoint(rng, radicands=(1, 2, 3, 7, 11)):
    re = Fraction(rng.randint(-500, 500), rng.randint(1, 60))
    r = Fraction(rng.randint(1, 200), rng.randint(1, 300))
    return HPoint.make(re, r, rng.choice(radicands))
