"""
Certificate suite for the E7 construction: Chevalley-basis axioms, Killing
form values, admissibility of the standard lattice, weights of V, and the
Behr relations among the generators x_alpha = exp(rho(X_alpha)).

Every check records the roots involved in each failed identity, so a
deliberately corrupted basis vector can be traced back from the report.
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from math import comb

from ..exact import Matrix, invariant_factors, solve_exact
from ..report import Check, Report
from ..roots import project_sum_zero
from .algebra import (
    LieElement,
    NV,
    PAIRS,
    rho,
    sp_T,
    sp_add,
    sp_identity,
    sp_mul,
    sp_scale,
    sp_trace,
    symplectic_gram,
    weight_of_basis_vector,
)
from .chevalley import E7Algebra, IntegrityError

APPENDIX_LAMBDA_FIGURE = 63
SEED = 20160
N_JACOBI = 200
N_BEHR = 200


def _fail(failures, identity, *roots):
    failures.append({"identity": identity, "roots": [r for r in roots if r is not None]})


def _join(values):
    return ",".join(str(v) for v in values)


def _only(coords, k, value):
    return coords == ({k: value} if value else {})


def _kind_of_coords(G, coords):
    return {G.kind(k) for k in coords}


# -- structure of the algebra --------------------------------------------------

def check_dimensions(G: E7Algebra) -> Check:
    n_lambda = sum(1 for r in G.roots if r[1] == "Lambda")
    n_sigma = sum(1 for r in G.roots if r[1] == "Sigma")
    ok = (len(G.span) == 133 and G.dim == 133 and NV == 56 and G.n_roots == 126
          and n_lambda == 56 and n_sigma == 70 and 63 + comb(8, 4) == 133)
    return Check("dimensions", ok, {
        "dim_G": len(G.span), "dim_V": NV, "roots": G.n_roots,
        "lambda_roots": n_lambda, "sigma_roots": n_sigma,
        "appendix_lambda_figure": APPENDIX_LAMBDA_FIGURE,
    })


def check_closure_and_grading(G: E7Algebra) -> Check:
    failures = []
    for a in range(G.dim):
        for b in range(a, G.dim):
            try:
                c = G.bracket_basis(a, b)
            except IntegrityError:
                _fail(failures, f"[{G.label(a)}, {G.label(b)}] outside the span", G.label(a), G.label(b))
                continue
            expect = "Lambda" if G.kind(a) == G.kind(b) else "Sigma"
            if c and _kind_of_coords(G, c) != {expect}:
                _fail(failures, f"[{G.label(a)}, {G.label(b)}] not in {expect}", G.label(a), G.label(b))
    n = G.dim * (G.dim + 1) // 2
    return Check("bracket_closure_grading", not failures, {"pairs": n}, failures)


def check_jacobi(G: E7Algebra, samples=N_JACOBI, seed=SEED) -> Check:
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        a, b, c = (rng.randrange(G.dim) for _ in range(3))
        x, y, z = {a: 1}, {b: 1}, {c: 1}
        total = {}
        for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
            for k, s in G.bracket_coords(u, G.bracket_coords(v, w)).items():
                total[k] = total.get(k, 0) + s
        if any(total.values()):
            _fail(failures, f"Jacobi({G.label(a)}, {G.label(b)}, {G.label(c)}) != 0",
                  G.label(a), G.label(b), G.label(c))
    return Check("jacobi_identity", not failures, {"triples": samples, "seed": seed}, failures)


def check_chevalley_axioms(G: E7Algebra) -> list[Check]:
    rs = G.rs
    H0 = G.n_roots

    f_cartan = []
    for i in range(7):
        for j in range(i + 1, 7):
            if G.bracket_basis(H0 + i, H0 + j):
                _fail(f_cartan, f"[H{i + 1}, H{j + 1}] != 0", f"H{i + 1}", f"H{j + 1}")

    f_h = []
    for i in range(7):
        for k in range(G.n_roots):
            want = rs.coeff_pairing(G.coeffs(k), i)
            if not _only(G.bracket_basis(H0 + i, k), k, want):
                _fail(f_h, f"[H{i + 1}, X_{G.label(k)}] != {want} X_{G.label(k)}", f"H{i + 1}", G.label(k))

    f_int = []
    for k in range(G.n_roots):
        c = G.bracket_basis(k, G.neg(k))
        if any(j < H0 for j in c) or any(Fraction(v).denominator != 1 for v in c.values()):
            _fail(f_int, f"[X_{G.label(k)}, X_-({G.label(k)})] not in the Z-span of the H_i", G.label(k))

    f_n = []
    n_values = {}
    for a in range(G.n_roots):
        for b in range(G.n_roots):
            if a == b or b == G.neg(a):
                continue
            c = G.bracket_basis(a, b)
            s, _ = G.root_sum(a, b)
            if s is None:
                if c:
                    _fail(f_n, f"[X_{G.label(a)}, X_{G.label(b)}] != 0", G.label(a), G.label(b))
                continue
            N = c.get(s, 0)
            if N not in (1, -1) or len(c) != 1:
                _fail(f_n, f"[X_{G.label(a)}, X_{G.label(b)}] is not +-X_{G.label(s)}",
                      G.label(a), G.label(b), G.label(s))
                continue
            n_values[(a, b)] = N
    for (a, b), N in n_values.items():
        M = n_values.get((G.neg(a), G.neg(b)))
        if M is not None and M != -N and a < b:
            s, _ = G.root_sum(a, b)
            _fail(f_n, f"N(-{G.label(a)}, -{G.label(b)}) != -N({G.label(a)}, {G.label(b)})",
                  G.label(a), G.label(b), G.label(s), G.label(G.neg(a)), G.label(G.neg(b)), G.label(G.neg(s)))
    plus = sum(1 for v in n_values.values() if v == 1)

    return [
        Check("cartan_abelian", not f_cartan, {"pairs": 21}, f_cartan),
        Check("h_action", not f_h, {"identities": 7 * G.n_roots}, f_h),
        Check("coroot_integrality", not f_int, {"roots": G.n_roots}, f_int),
        Check("structure_constants", not f_n,
              {"nonzero_N": len(n_values), "N_plus": plus, "N_minus": len(n_values) - plus}, f_n),
    ]


def check_cartan_involution(G: E7Algebra) -> Check:
    failures = []
    for k in range(G.n_roots):
        if G.sigma(G.X[k]) != -G.X[G.neg(k)]:
            _fail(failures, f"sigma(X_{G.label(k)}) != -X_-({G.label(k)})", G.label(k), G.label(G.neg(k)))
    for k, X in enumerate(G.basis):
        if G.sigma(G.sigma(X)) != X:
            _fail(failures, f"sigma^2(X_{G.label(k)}) != X_{G.label(k)}", G.label(k))
        if rho(G.sigma(X)) != sp_scale(sp_T(G.rho_basis[k]), -1):
            _fail(failures, f"rho(sigma X_{G.label(k)}) != -rho(X_{G.label(k)})^T", G.label(k))
    return Check("cartan_involution", not failures, {"roots": G.n_roots}, failures)


# -- invariant forms -------------------------------------------------------------

def _h_ij(i, j):
    return LieElement.make({(i, i): 1, (j, j): -1})


def _sl8_spanning_set(G: E7Algebra):
    """Basis elements lying in sl8: the 56 X_ij and the 7 H_i (all diagonal)."""
    return [k for k in range(G.dim) if G.kind(k) == "Lambda"]


def _lambda_trace(X: LieElement, Y: LieElement):
    return (X.lambda_part * Y.lambda_part).trace()


class _Forms:
    """Both invariant forms evaluated on basis indices, with cached Gram data on the Cartan."""

    def __init__(self, G: E7Algebra):
        self.G = G
        self.H0 = G.n_roots
        self.gram = {
            "adjoint": Matrix([[G.killing_basis(self.H0 + i, self.H0 + j) for j in range(7)] for i in range(7)]),
            "module": Matrix([[G.trace_form(G.H[i], G.H[j]) for j in range(7)] for i in range(7)]),
        }

    def value(self, name, a, b):
        if name == "adjoint":
            return self.G.killing_basis(a, b)
        return sp_trace(sp_mul(self.G.rho_basis[a], self.G.rho_basis[b]))

    def root_length(self, name, k):
        """((alpha, alpha), coefficients of T_alpha on H_1..H_7) for the given form."""
        G = self.G
        values = [G.bracket_basis(self.H0 + i, k).get(k, 0) for i in range(7)]
        sol = solve_exact(self.gram[name], values)
        c = [sol.particular[i, 0] for i in range(7)]
        return sum((v * x for v, x in zip(values, c)), Fraction(0)), c

    def t_alpha(self, name, k):
        _, c = self.root_length(name, k)
        T = LieElement()
        for ci, h in zip(c, self.G.H):
            T = T + h * ci
        return T


def check_killing(G: E7Algebra, forms: _Forms | None = None) -> list[Check]:
    forms = forms or _Forms(G)
    lam = _sl8_spanning_set(G)
    targets = {"K_root": 12, "K_Hij": 24, "alpha_alpha": Fraction(1, 6), "trace_factor": 12}

    f_2new = []
    seen = {"adjoint": {}, "module": {}}
    lengths = {"adjoint": set(), "module": set()}
    for k in range(G.n_roots):
        for name in ("adjoint", "module"):
            K = forms.value(name, k, G.neg(k))
            aa, _ = forms.root_length(name, k)
            seen[name].setdefault("K_root", set()).add(K)
            lengths[name].add(aa)
            if name == "adjoint" and K != 2 / aa:
                _fail(f_2new, f"K(X_{G.label(k)}, X_-({G.label(k)})) = {K} != 2/(alpha,alpha) = {2 / aa}",
                      G.label(k), G.label(G.neg(k)))

    rng = random.Random(SEED)
    f_orth = []
    for _ in range(N_JACOBI):
        a, b = rng.randrange(G.n_roots), rng.randrange(G.n_roots)
        if b != G.neg(a) and forms.value("adjoint", a, b) != 0:
            _fail(f_orth, f"K(X_{G.label(a)}, X_{G.label(b)}) != 0", G.label(a), G.label(b))

    # K(X, Y) against tr(XY) on the 63 sl8 basis elements (bilinear, so this covers sl8)
    ratios = {"adjoint": set(), "module": set()}
    f_ratio = []
    for a in lam:
        for b in lam:
            t = _lambda_trace(G.basis[a], G.basis[b])
            kad, kv = forms.value("adjoint", a, b), forms.value("module", a, b)
            for name, K in (("adjoint", kad), ("module", kv)):
                if t:
                    ratios[name].add(Fraction(K) / t)
                elif K:
                    ratios[name].add(None)
            if kad != 3 * kv:
                _fail(f_ratio, f"K_ad({G.label(a)}, {G.label(b)}) != 3 tr_V", G.label(a), G.label(b))
    for k in range(G.n_roots):
        if forms.value("adjoint", k, G.neg(k)) != 3 * forms.value("module", k, G.neg(k)):
            _fail(f_ratio, f"K_ad(X_{G.label(k)}, X_-) != 3 tr_V", G.label(k), G.label(G.neg(k)))

    hij = {}
    for name in ("adjoint", "module"):
        H = _h_ij(0, 1)
        form = G.killing if name == "adjoint" else G.trace_form
        hij[name] = form(H, H)

    # T_alpha = H_ij / 12 for alpha = e_i - e_j, with the module trace form
    f_t = []
    for k in range(G.n_roots):
        if G.kind(k) != "Lambda":
            continue
        (i, j), = [key for key, _ in G.X[k].lam]
        if forms.t_alpha("module", k) != _h_ij(i, j) * Fraction(1, 12):
            _fail(f_t, f"T_{G.label(k)} != H_{i + 1}{j + 1}/12", G.label(k))

    def literal(name):
        fails = []
        Ks, aas, rs = seen[name]["K_root"], lengths[name], ratios[name]
        if Ks != {12}:
            fails.append({"identity": f"K(X_alpha, X_-alpha) takes values {_join(sorted(Ks))}, expected 12", "roots": []})
        if hij[name] != 24:
            fails.append({"identity": f"K(H_12, H_12) = {hij[name]}, expected 24", "roots": []})
        if aas != {Fraction(1, 6)}:
            fails.append({"identity": f"(alpha, alpha) takes values {_join(sorted(aas))}, expected 1/6", "roots": []})
        if rs != {12}:
            fails.append({"identity": f"K / tr(XY) on sl8 takes values {_join(sorted(rs, key=str))}, expected 12",
                          "roots": []})
        # when the values disagree, blame the roots off the majority value
        per_root = [forms.value(name, k, G.neg(k)) for k in range(G.n_roots)]
        common = Counter(per_root).most_common(1)[0][0]
        for k, K in enumerate(per_root):
            if K != common:
                fails.append({"identity": f"K(X_{G.label(k)}, X_-) = {K}", "roots": [G.label(k), G.label(G.neg(k))]})
        return fails

    f_adj = literal("adjoint")
    f_mod = literal("module") + f_t

    def witness(name):
        return {
            "K_root": ",".join(str(v) for v in sorted(seen[name]["K_root"])),
            "K_H12": hij[name],
            "alpha_alpha": ",".join(str(v) for v in sorted(lengths[name])),
            "K_over_tr_sl8": ",".join(str(v) for v in sorted(ratios[name], key=str)),
        }

    return [
        Check("killing_eq2new", not (f_2new or f_orth), {"roots": G.n_roots, **{
            "K_root": witness("adjoint")["K_root"], "alpha_alpha": witness("adjoint")["alpha_alpha"]}},
            f_2new + f_orth),
        Check("killing_adjoint_appendix_values", not f_adj,
              {**witness("adjoint"), **{f"target_{k}": v for k, v in targets.items()}}, f_adj),
        Check("trace_form_appendix_values", not f_mod, witness("module"), f_mod),
        Check("killing_vs_trace_form", not f_ratio, {"ratio": 3}, f_ratio),
    ]


# -- lattice and representation ----------------------------------------------------

def check_admissible(G: E7Algebra) -> Check:
    failures = []
    nnz = set()
    for k in range(G.n_roots):
        R = G.rho_basis[k]
        nnz.add(len(R))
        if sp_mul(R, R):
            _fail(failures, f"rho(X_{G.label(k)})^2 != 0", G.label(k))
        if any(v not in (1, -1) for v in R.values()):
            _fail(failures, f"rho(X_{G.label(k)}) has entries outside {{0, +-1}}", G.label(k))
        if sp_mul(G.generator(k), G.generator(k, -1)) != sp_identity():
            _fail(failures, f"exp(rho X_{G.label(k)}) exp(-rho X_{G.label(k)}) != I", G.label(k))
    return Check("admissible_lattice", not failures,
                 {"roots": G.n_roots, "nonzeros_per_root": ",".join(map(str, sorted(nnz)))}, failures)


def check_symplectic(G: E7Algebra) -> Check:
    J = symplectic_gram()
    failures = []
    for k, R in enumerate(G.rho_basis):
        if sp_add(sp_mul(sp_T(R), J), sp_mul(J, R)):
            _fail(failures, f"rho({G.label(k)}) is not in sp56", G.label(k))
    n = 0
    for k in range(G.n_roots):
        for sign in (1, -1):
            x = G.generator(k, sign)
            n += 1
            if sp_mul(sp_T(x), sp_mul(J, x)) != J:
                _fail(failures, f"x_{G.label(k)}^{sign} does not preserve omega", G.label(k))
            if any(Fraction(v).denominator != 1 for v in x.values()):
                _fail(failures, f"x_{G.label(k)}^{sign} is not integral", G.label(k))
    # det x_alpha = 1 on a sample (unipotent, so this is a consistency check)
    for k in range(0, G.n_roots, 25):
        if _dense_det(G.generator(k)) != 1:
            _fail(failures, f"det x_{G.label(k)} != 1", G.label(k))
    return Check("symplectic_generators", not failures, {"generators": n}, failures)


def _dense_det(sp):
    rows = [[0] * NV for _ in range(NV)]
    for (i, j), v in sp.items():
        rows[i][j] = v
    return Matrix(rows).det()


def weights_of_V(G: E7Algebra):
    """The 56 weights as 8-vectors and in fundamental-weight coordinates <w, alpha_i>."""
    rs = G.rs
    out = []
    for k in range(NV):
        w8 = weight_of_basis_vector(k)
        w = project_sum_zero(w8)
        out.append((w8, [rs.pairing(w, i) for i in range(7)]))
    return out


def check_weights(G: E7Algebra) -> Check:
    rs = G.rs
    failures = []
    weights = weights_of_V(G)
    coords = [c for _, c in weights]
    if any(Fraction(x).denominator != 1 for c in coords for x in c):
        _fail(failures, "a weight of V is not in the weight lattice")
    factors = invariant_factors(Matrix([[int(x) for x in c] for c in coords]))
    if factors != [1] * 7:
        _fail(failures, f"weights span a sublattice of L1 with invariant factors {factors}")
    # rho(H_i) is diagonal with entries <weight, alpha_i>
    for i, h in enumerate(G.H):
        R = rho(h)
        for k, (_, c) in enumerate(weights):
            if R.get((k, k), 0) != c[i] or any(a == k and b != k for a, b in R):
                _fail(failures, f"rho(H{i + 1}) disagrees with the weight of basis vector {k}", f"H{i + 1}")
                break
    e12 = coords[weights.index(next(w for w in weights if w[0] == (1, 1, 0, 0, 0, 0, 0, 0)))]
    sol = solve_exact(rs.cartan.T, e12)
    in_root_lattice = all(Fraction(sol.particular[i, 0]).denominator == 1 for i in range(7))
    if in_root_lattice:
        _fail(failures, "e1+e2 lies in the root lattice")
    expected = {tuple(s * x for x in (1 if m in p else 0 for m in range(8))) for p in PAIRS for s in (1, -1)}
    if {w for w, _ in weights} != expected:
        _fail(failures, "weights of V are not +-(e_i + e_j)")
    return Check("weights_span_L1", not failures, {
        "weights": len(weights), "invariant_factors": ",".join(map(str, factors)),
        "e1+e2_in_root_lattice_coords": ",".join(str(sol.particular[i, 0]) for i in range(7)),
    }, failures)


# -- group level ---------------------------------------------------------------

def _inverse(G, k):
    return G.generator(k, -1)


def _commutator(x, xi, y, yi):
    return sp_mul(sp_mul(x, y), sp_mul(xi, yi))


def behr_pairs(G: E7Algebra, count=N_BEHR, seed=SEED):
    """Half the pairs with alpha+beta a root, half with alpha+beta neither a root nor zero."""
    rng = random.Random(seed)
    summing = [(a, b) for a in range(G.n_roots) for b in range(G.n_roots) if G.root_sum(a, b)[0] is not None]
    other = [(a, b) for a in range(G.n_roots) for b in range(G.n_roots)
             if a != b and G.root_sum(a, b)[0] is None and not G.root_sum(a, b)[1]]
    return sorted(rng.sample(summing, count // 2)) + sorted(rng.sample(other, count - count // 2))


def check_behr(G: E7Algebra, pairs=None) -> Check:
    pairs = behr_pairs(G) if pairs is None else pairs
    I = sp_identity()
    failures = []
    for i, k in enumerate(G.simple):
        w = sp_mul(sp_mul(_inverse(G, k), G.generator(G.neg(k))), _inverse(G, k))
        w2 = sp_mul(w, w)
        if sp_mul(w2, w2) != I:
            _fail(failures, f"(x_{G.label(k)}^-1 x_-{G.label(k)} x_{G.label(k)}^-1)^4 != 1",
                  G.label(k), G.label(G.neg(k)))
    signs = {1: 0, -1: 0}
    for a, b in pairs:
        c = _commutator(G.generator(a), _inverse(G, a), G.generator(b), _inverse(G, b))
        s, _ = G.root_sum(a, b)
        if s is None:
            if c != I:
                _fail(failures, f"[x_{G.label(a)}, x_{G.label(b)}] != 1", G.label(a), G.label(b))
            continue
        N = G.bracket_basis(a, b).get(s, 0)
        if N in signs:
            signs[N] += 1
        if c != sp_add(I, sp_scale(G.rho_basis[s], N)):
            _fail(failures, f"[x_{G.label(a)}, x_{G.label(b)}] != x_{G.label(s)}^{N}",
                  G.label(a), G.label(b), G.label(s))
    return Check("behr_relations", not failures, {
        "simple_roots": len(G.simple), "pairs": len(pairs),
        "pairs_with_sum_root": signs[1] + signs[-1], "N_plus": signs[1], "N_minus": signs[-1],
    }, failures)


# -- the whole suite -----------------------------------------------------------

def verify(flip=None, command="e7 verify") -> Report:
    """Run every check; ``flip`` negates one X_alpha as a negative control."""
    G = E7Algebra(flip=flip)
    report = Report(command)
    report.add(check_dimensions(G))
    report.add(check_closure_and_grading(G))
    report.add(check_jacobi(G))
    for c in check_chevalley_axioms(G):
        report.add(c)
    report.add(check_cartan_involution(G))
    for c in check_killing(G):
        report.add(c)
    report.add(check_admissible(G))
    report.add(check_symplectic(G))
    report.add(check_weights(G))
    report.add(check_behr(G))
    return report

