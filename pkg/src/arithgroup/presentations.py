"""
Finitely presented groups checked against explicit matrices: relator
evaluation, abelianization, and elementary-matrix words in SL_N(Z).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations

from .exact import InputError, Matrix, as_int_matrix, invariant_factors
from .report import Check


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word: ((generator, nonzero exponent), ...) with distinct neighbours."""

    letters: tuple = ()

    @classmethod
    def make(cls, letters):
        out = []
        for g, e in letters:
            if not isinstance(e, int) or isinstance(e, bool):
                raise InputError(f"exponent of {g!r} must be an integer")
            if out and out[-1][0] == g:
                e += out.pop()[1]
            if e:
                out.append((g, e))
        return cls(tuple(out))

    @classmethod
    def gen(cls, g, e=1):
        return cls.make([(g, e)])

    def __mul__(self, other):
        return FreeWord.make(self.letters + other.letters)

    def inverse(self):
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** -k
        out = FreeWord()
        for _ in range(k):
            out = out * self
        return out

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def generators(self):
        return {g for g, _ in self.letters}

    def exponent_sum(self, g):
        return sum(e for h, e in self.letters if h == g)

    def evaluate(self, assignment):
        """Product of the assigned matrices; an empty word needs some assignment for its size."""
        missing = self.generators() - set(assignment)
        if missing:
            raise InputError(f"no matrix assigned to {sorted(missing)}")
        n = next(iter(assignment.values())).rows
        out = Matrix.identity(n)
        for g, e in self.letters:
            out = out * assignment[g] ** e
        return out

    def to_json(self):
        return [[g, e] for g, e in self.letters]

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.letters)


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple
    relators: tuple  # FreeWord relators, each meaning "= 1"
    labels: tuple = ()  # human-readable relation per relator

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise InputError("duplicate generator names")
        for r in self.relators:
            extra = r.generators() - set(self.generators)
            if extra:
                raise InputError(f"relator uses undeclared generators {sorted(extra)}")

    def to_json(self):
        return {"generators": list(self.generators), "relators": [r.to_json() for r in self.relators]}

    @classmethod
    def from_json(cls, doc, name="custom"):
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            gens = tuple(doc["generators"])
            rels = tuple(FreeWord.make((g, e) for g, e in r) for r in doc["relators"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed presentation: {exc}") from exc
        return cls(name, gens, rels, tuple(str(r) for r in rels))


def _relation(lhs: FreeWord, rhs: FreeWord) -> FreeWord:
    return lhs * rhs.inverse()


def sl2_presentation_xy() -> Presentation:
    """x y^-1 x = y^-1 x y^-1 and (x^-1 y x^-1)^4 = 1."""
    x, y = FreeWord.gen("x"), FreeWord.gen("y")
    yi, xi = y.inverse(), x.inverse()
    return Presentation(
        "sl2a", ("x", "y"),
        (_relation(x * yi * x, yi * x * yi), (xi * y * xi) ** 4),
        ("x y^-1 x = y^-1 x y^-1", "(x^-1 y x^-1)^4 = 1"),
    )


def sl2_presentation_wa() -> Presentation:
    """W^2 = A^3 and W^4 = 1."""
    W, A = FreeWord.gen("W"), FreeWord.gen("A")
    return Presentation("sl2b", ("W", "A"), (_relation(W ** 2, A ** 3), W ** 4), ("W^2 = A^3", "W^4 = 1"))


def xname(i, j):
    return f"x{i}{j}" if max(i, j) < 10 else f"x{i}_{j}"


def steinberg_presentation(N: int) -> Presentation:
    """The Steinberg relations among the elementary matrices x_ij of SL_N(Z)."""
    if N < 3:
        raise InputError("the Steinberg presentation needs N >= 3")
    idx = range(1, N + 1)
    pairs = [(i, j) for i in idx for j in idx if i != j]
    gens = tuple(xname(i, j) for i, j in pairs)
    x = {p: FreeWord.gen(xname(*p)) for p in pairs}
    rels, labels = [], []
    for (i, j) in pairs:
        for (k, l) in pairs:
            if (i, j) < (k, l) and j != k and i != l:
                rels.append(commutator(x[i, j], x[k, l]))
                labels.append(f"[x{i}{j}, x{k}{l}] = 1")
    for i, j, k in permutations(idx, 3):
        rels.append(_relation(commutator(x[i, j], x[j, k]), x[i, k]))
        labels.append(f"[x{i}{j}, x{j}{k}] = x{i}{k}")
    rels.append((x[1, 2] * x[2, 1].inverse() * x[1, 2]) ** 4)
    labels.append("(x12 x21^-1 x12)^4 = 1")
    return Presentation(f"steinberg:{N}", gens, tuple(rels), tuple(labels))


def elementary_matrix(N, i, j, a=1) -> Matrix:
    """x_ij^a: identity plus a at (i, j), 1-based."""
    if i == j:
        raise InputError("x_ij needs i != j")
    rows = [[int(r == c) for c in range(N)] for r in range(N)]
    rows[i - 1][j - 1] = a
    return Matrix(rows)


def standard_assignment(name: str) -> dict:
    if name == "sl2a":
        return {"x": Matrix([[1, 1], [0, 1]]), "y": Matrix([[1, 0], [1, 1]])}
    if name == "sl2b":
        return {"W": Matrix([[0, -1], [1, 0]]), "A": Matrix([[1, -1], [1, 0]])}
    N = _steinberg_n(name)
    return {xname(i, j): elementary_matrix(N, i, j) for i in range(1, N + 1) for j in range(1, N + 1) if i != j}


def _steinberg_n(name):
    if not name.startswith("steinberg:"):
        raise InputError(f"unknown group {name!r}; expected sl2a, sl2b or steinberg:<N>")
    try:
        return int(name.split(":", 1)[1])
    except ValueError:
        raise InputError(f"bad N in {name!r}") from None


def named_presentation(name: str) -> Presentation:
    if name == "sl2a":
        return sl2_presentation_xy()
    if name == "sl2b":
        return sl2_presentation_wa()
    return steinberg_presentation(_steinberg_n(name))


def verify_relations(pres: Presentation, assignment: dict) -> Check:
    """Evaluate every relator as an exact matrix product; failures name the relation."""
    missing = set(pres.generators) - set(assignment)
    if missing:
        raise InputError(f"no matrix assigned to {sorted(missing)}")
    mats = {g: as_int_matrix(m) for g, m in assignment.items()}
    for g, m in mats.items():
        if not m.is_square or not m.is_unimodular():
            raise InputError(f"matrix for {g} is not square unimodular")
    n = next(iter(mats.values())).rows
    I = Matrix.identity(n)
    failures = []
    labels = pres.labels or tuple(str(r) for r in pres.relators)
    for r, lab in zip(pres.relators, labels):
        if r.evaluate(mats) != I:
            failures.append({"identity": lab, "roots": []})
    return Check(f"relations_{pres.name}", not failures, {"relators": len(pres.relators)}, failures)


def relation_matrix(pres: Presentation) -> Matrix:
    """Exponent sums: one row per relator, one column per generator."""
    rows = [[r.exponent_sum(g) for g in pres.generators] for r in pres.relators]
    if not rows:
        rows = [[0] * len(pres.generators)]
    return Matrix(rows)


def abelianization(pres: Presentation) -> list[int]:
    """
    Invariant factors of F/[F,F]<R>, e.g. [12] for Z/12 and [0, 0] for Z^2.
    Trivial factors 1 are dropped; an empty list is the trivial group.
    """
    d = invariant_factors(relation_matrix(pres))
    d = d + [0] * (len(pres.generators) - len(d))
    return [x for x in d if x != 1]


def abelian_order(factors):
    """Order of the abelian group with the given invariant factors (None if infinite)."""
    out = 1
    for d in factors:
        if d == 0:
            return None
        out *= d
    return out


# -- elementary matrices ---------------------------------------------------------

def elementary_decompose(g) -> list[tuple[int, int, int]]:
    """
    [(i, j, a), ...] with g = x_{i1 j1}^{a1} x_{i2 j2}^{a2} ..., for g in SL_N(Z), N >= 3.

    Euclidean row reduction of each column; a pivot of -1 is turned into +1
    with three row operations through a lower row (the workspace row), which is
    where N >= 3 matters for the last two columns: the sign can always be
    pushed down to the final pivot, which det = 1 forces to be +1.
    """
    M = [list(r) for r in as_int_matrix(g).tolist()]
    N = len(M)
    if N < 3 or any(len(r) != N for r in M):
        raise InputError("elementary_decompose needs a square matrix of size N >= 3")
    if Matrix(M).det() != 1:
        raise InputError("matrix is not in SL_N(Z)")
    ops = []  # row operations applied on the left: row_i += a row_j

    def add(i, j, a):
        if a:
            for c in range(N):
                M[i][c] += a * M[j][c]
            ops.append((i, j, a))

    for c in range(N):
        while True:
            live = [r for r in range(c, N) if M[r][c]]
            p = min(live, key=lambda r: abs(M[r][c]))
            others = [r for r in live if r != p]
            if not others:
                break
            for r in others:
                add(r, p, -(M[r][c] // M[p][c]))
        if p != c:
            add(c, p, 1)
            add(p, c, -M[p][c] // M[c][c])
        if M[c][c] == -1 and c < N - 1:
            w = c + 1
            add(w, c, -1)
            add(c, w, 2)
            add(w, c, -1)
        if M[c][c] != 1:
            raise AssertionError("pivot is not 1 after reduction")
        for r in range(N):
            if r != c:
                add(r, c, -M[r][c])
    # E_k ... E_1 g = I, so g = E_1^-1 ... E_k^-1
    word = []
    for i, j, a in ops:
        if word and word[-1][:2] == (i + 1, j + 1):
            a = -a + word.pop()[2]
            if a:
                word.append((i + 1, j + 1, a))
        else:
            word.append((i + 1, j + 1, -a))
    return word


def evaluate_elementary(N, word) -> Matrix:
    out = Matrix.identity(N)
    for i, j, a in word:
        out = out * elementary_matrix(N, i, j, a)
    return out


def two_generator_pair(N: int) -> tuple[Matrix, Matrix]:
    """
    (x_21, g) with g the signed cyclic shift: 1 at (i, i+1) and the corner
    (N, 1) set to (-1)^(N-1), which is what det g = 1 requires.
    """
    if N < 3:
        raise InputError("two_generator_pair needs N >= 3")
    rows = [[0] * N for _ in range(N)]
    for i in range(N - 1):
        rows[i][i + 1] = 1
    rows[N - 1][0] = (-1) ** (N - 1)
    return elementary_matrix(N, 2, 1), Matrix(rows)


def elementary_words_from_pair(N: int) -> dict:
    """
    Words in {x, g} (x = x_21) evaluating exactly to every x_ij: conjugation by
    g shifts indices down by one, and [x_ij, x_jk] = x_ik fills in the rest.
    """
    x, g = two_generator_pair(N)
    assignment = {"x": x, "g": g}
    words = {(2, 1): FreeWord.gen("x")}
    G = FreeWord.gen("g")
    target = N * (N - 1)
    while len(words) < target:
        before = len(words)
        for (i, j), w in list(words.items()):
            conj = G * w * G.inverse()
            M = conj.evaluate(assignment)
            for (k, l) in [(a, b) for a in range(1, N + 1) for b in range(1, N + 1) if a != b]:
                if (k, l) in words:
                    continue
                if M == elementary_matrix(N, k, l):
                    words[(k, l)] = conj
                elif M == elementary_matrix(N, k, l, -1):
                    words[(k, l)] = conj.inverse()
        for (i, j), u in list(words.items()):
            for (j2, k), v in list(words.items()):
                if j2 == j and k != i and (i, k) not in words:
                    words[(i, k)] = commutator(u, v)
        if len(words) == before:
            raise AssertionError("x_21 and g did not regenerate every x_ij")
    return dict(sorted(words.items()))
