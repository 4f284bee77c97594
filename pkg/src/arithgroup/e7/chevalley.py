"""
Chevalley basis of the E7 algebra and its structure constants.

Brackets are taken in End(V) and pulled back to coordinates on the 133
basis elements by an exact sparse elimination; nothing here uses a closed
formula for the bracket on Lambda^4 W.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from ..exact import InputError, Matrix, solve_exact
from ..roots import e7_root_system, project_sum_zero
from .algebra import (
    LieElement,
    QUADS,
    V_INDEX,
    cartan_involution,
    diagonal,
    rho,
    sp_add,
    sp_comm,
    sp_identity,
    sp_mul,
    sp_scale,
    sp_trace,
)
from .exterior import DIM, complement, perm_sign


class IntegrityError(RuntimeError):
    """A computed commutator left the 133-dimensional span."""


def root_label(vec8):
    """'e1-e2' for type Lambda, 'e1+e2+e3+e4' for type Sigma (vec8 is the unprojected weight)."""
    plus = [i + 1 for i, x in enumerate(vec8) if x > 0]
    minus = [i + 1 for i, x in enumerate(vec8) if x < 0]
    if len(plus) == 1 and len(minus) == 1:
        return f"e{plus[0]}-e{minus[0]}"
    return "+".join(f"e{i}" for i in plus)


class LinearSpan:
    """Exact reduced echelon form of sparse vectors, remembering how to express them."""

    def __init__(self, vectors):
        self.rows = []  # (pivot key, reduced vector, combination of inputs)
        for n, vec in enumerate(vectors):
            vec, combo = self._reduce(dict(vec), {n: Fraction(1)})
            if not vec:
                raise InputError(f"vector {n} is linearly dependent on the previous ones")
            piv = min(vec)
            c = vec[piv]
            vec = {k: Fraction(v) / c for k, v in vec.items()}
            combo = {k: v / c for k, v in combo.items()}
            new_rows = []
            for p, r, cb in self.rows:
                f = r.get(piv, 0)
                if f:
                    r = sp_add(r, vec, -f)
                    cb = sp_add(cb, combo, -f)
                new_rows.append((p, r, cb))
            new_rows.append((piv, vec, combo))
            self.rows = new_rows

    def _reduce(self, vec, combo):
        for piv, r, cb in self.rows:
            f = vec.get(piv, 0)
            if f:
                vec = sp_add(vec, r, -f)
                combo = sp_add(combo, cb, -f)
        return vec, combo

    def coordinates(self, vec):
        """Coefficients on the input vectors, or None when vec is outside the span."""
        coords = {}
        residual = dict(vec)
        for piv, r, cb in self.rows:
            f = residual.get(piv, 0)
            if f:
                residual = sp_add(residual, r, -f)
                coords = sp_add(coords, cb, f)
        if residual:
            return None
        return {k: (v.numerator if v.denominator == 1 else v) for k, v in coords.items()}

    def __len__(self):
        return len(self.rows)


class E7Algebra:
    """
    Chevalley basis {X_alpha, H_i} of G = sl8 + Lambda^4 W, with
    H_i = [X_alpha_i, X_-alpha_i] for the seven appendix simple roots.

    ``flip`` names a root whose X_alpha is negated (negative control).
    """

    def __init__(self, flip=None):
        self.rs = e7_root_system()
        by_vector = {self.rs.vector(c): c for c in self.rs.roots}
        self.roots = []  # (label, kind, coeffs, element)
        for i in range(DIM):
            for j in range(DIM):
                if i != j:
                    v = [0] * DIM
                    v[i], v[j] = 1, -1
                    coeffs = by_vector[project_sum_zero(v)]
                    self.roots.append([root_label(v), "Lambda", coeffs, LieElement.make({(i, j): 1})])
        for quad in QUADS:
            v = [1 if k in quad else 0 for k in range(DIM)]
            coeffs = by_vector[project_sum_zero(v)]
            # e_I for I containing 1; the opposite root gets the star of its partner
            s = 1 if 0 in quad else perm_sign(complement(quad) + quad)
            self.roots.append([root_label(v), "Sigma", coeffs, LieElement.make(sig={quad: Fraction(s, 2)})])
        if flip is not None:
            hit = [r for r in self.roots if r[0] == flip]
            if not hit:
                raise InputError(f"unknown root {flip!r}")
            hit[0][3] = -hit[0][3]
        self.roots = [tuple(r) for r in self.roots]
        self.roots.sort(key=lambda r: (sum(r[2]), r[2]))
        self.index_of = {r[2]: k for k, r in enumerate(self.roots)}
        self.label_of = {r[2]: r[0] for r in self.roots}
        self.flipped = flip

        self.X = [r[3] for r in self.roots]
        self.simple = [self.index_of[tuple(int(i == k) for k in range(7))] for i in range(7)]
        self.H = []
        for k in self.simple:
            neg = self.index_of[tuple(-c for c in self.roots[k][2])]
            self.H.append(self._commutator_element(self.X[k], self.X[neg]))
        self.basis = self.X + self.H
        self.rho_basis = [rho(b) for b in self.basis]
        self.span = LinearSpan(self.rho_basis)
        self._brackets = {}

    # -- indexing helpers --

    @property
    def dim(self):
        return len(self.basis)

    @property
    def n_roots(self):
        return len(self.X)

    def neg(self, k):
        return self.index_of[tuple(-c for c in self.roots[k][2])]

    def coeffs(self, k):
        return self.roots[k][2]

    def label(self, k):
        return self.roots[k][0] if k < self.n_roots else f"H{k - self.n_roots + 1}"

    def kind(self, k):
        return self.roots[k][1] if k < self.n_roots else "Lambda"

    def root_sum(self, a, b):
        s = tuple(x + y for x, y in zip(self.coeffs(a), self.coeffs(b)))
        return self.index_of.get(s), all(x == 0 for x in s)

    def _commutator_element(self, A, B):
        """[A, B] read back through the diagonal: only valid when the result is diagonal."""
        C = sp_comm(rho(A), rho(B))
        # rho(diag(h)) on e_i^e_j is h_i + h_j; recover h from three of them
        def w(i, j):
            return C.get((V_INDEX[("w", (i, j))], V_INDEX[("w", (i, j))]), 0)

        h0 = Fraction(w(0, 1) + w(0, 2) - w(1, 2), 2)
        h = [h0] + [w(0, j) - h0 for j in range(1, DIM)]
        H = diagonal(h)
        if rho(H) != C:
            raise IntegrityError("[X_alpha, X_-alpha] is not diagonal")
        return H

    # -- brackets --

    def coordinates(self, op):
        """Coordinates of an operator on V in the Chevalley basis."""
        c = self.span.coordinates(op)
        if c is None:
            raise IntegrityError("operator is not in the image of the Lie algebra")
        return c

    def bracket_basis(self, a, b):
        """[b_a, b_b] as {basis index: coefficient}."""
        key = (a, b)
        if key not in self._brackets:
            if (b, a) in self._brackets:
                self._brackets[key] = {k: -v for k, v in self._brackets[(b, a)].items()}
            else:
                self._brackets[key] = self.coordinates(sp_comm(self.rho_basis[a], self.rho_basis[b]))
        return self._brackets[key]

    def element(self, coords) -> LieElement:
        out = LieElement()
        for k, v in coords.items():
            out = out + self.basis[k] * v
        return out

    def to_coords(self, X: LieElement):
        return self.coordinates(rho(X))

    def bracket(self, X: LieElement, Y: LieElement) -> LieElement:
        """[X, Y] computed in End(V) and expressed in the Chevalley basis."""
        return self.element(self.coordinates(sp_comm(rho(X), rho(Y))))

    def bracket_coords(self, x, y):
        """Bilinear extension of the structure constants to coordinate dicts."""
        out = {}
        for a, u in x.items():
            for b, v in y.items():
                for k, w in self.bracket_basis(a, b).items():
                    out[k] = out.get(k, 0) + u * v * w
        return {k: v for k, v in out.items() if v}

    # -- invariant forms --

    def ad(self, a):
        """ad(b_a) as sparse {(row, col): value} on the Chevalley basis."""
        M = {}
        for b in range(self.dim):
            for k, v in self.bracket_basis(a, b).items():
                M[(k, b)] = v
        return M

    @cached_property
    def _ad_all(self):
        return [self.ad(a) for a in range(self.dim)]

    def killing_basis(self, a, b):
        """tr(ad b_a ad b_b), the Killing form."""
        return sp_trace(sp_mul(self._ad_all[a], self._ad_all[b]))

    def killing(self, X: LieElement, Y: LieElement):
        x, y = self.to_coords(X), self.to_coords(Y)
        return sum((u * v * self.killing_basis(a, b) for a, u in x.items() for b, v in y.items()), 0)

    def trace_form(self, X: LieElement, Y: LieElement):
        """tr(rho(X) rho(Y)) on the 56-dimensional module."""
        return sp_trace(sp_mul(rho(X), rho(Y)))

    def cartan_gram(self, form):
        """Gram matrix of ``form`` on H_1..H_7."""
        return Matrix([[form(h, g) for g in self.H] for h in self.H])

    def root_length(self, k, form):
        """
        (alpha, alpha) = form(T_alpha, T_alpha), where form(T_alpha, H) = alpha(H)
        on the Cartan subalgebra; alpha(H_i) is read off [H_i, X_alpha].
        """
        values = []
        for h in range(self.n_roots, self.dim):
            values.append(self.bracket_basis(h, k).get(k, 0))
        G = self.cartan_gram(form)
        sol = solve_exact(G, values)
        c = [sol.particular[i, 0] for i in range(7)]
        T = LieElement()
        for ci, h in zip(c, self.H):
            T = T + h * ci
        return form(T, T), T

    def sigma(self, X: LieElement) -> LieElement:
        return cartan_involution(X)

    def generator(self, k, sign=1):
        """x_alpha = exp(rho(X_alpha)) = I + rho(X_alpha), or its inverse for sign=-1."""
        return sp_add(sp_identity(), sp_scale(self.rho_basis[k], sign))
