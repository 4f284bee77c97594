import json
from fractions import Fraction
from importlib.resources import files

import jsonschema
import pytest

from arithgroup.e7.algebra import (
    NV,
    V_INDEX,
    LieElement,
    cartan_involution,
    diagonal,
    elementary,
    rho,
    weight_of_basis_vector,
)
from arithgroup.e7.chevalley import E7Algebra
from arithgroup.e7.exterior import ExtVector
from arithgroup.e7.verify import behr_pairs, verify, weights_of_V

Q = Fraction
e = ExtVector.basis_vector


def idx(G, label):
    return next(k for k, r in enumerate(G.roots) if r[0] == label)


def vidx(kind, i, j):
    return V_INDEX[(kind, (i - 1, j - 1))]


def test_lie_element_validation():
    with pytest.raises(ValueError):
        LieElement.make({(0, 0): 1})
    X = elementary(1, 2) + LieElement.make(sig=e(1, 2, 3, 4))
    assert str(X) == "1*E12 + 1*e1^e2^e3^e4"


def test_rho_diagonal_weights():
    h = [Q(k, 3) for k in (1, -2, 5, 0, 3, -7, 2, -2)]
    R = rho(diagonal(h))
    for k in range(NV):
        w = weight_of_basis_vector(k)
        assert R.get((k, k), 0) == sum(a * b for a, b in zip(w, h))
    assert all(i == j for i, j in R)


def test_rho_sigma_examples():
    R = rho(LieElement.make(sig=e(1, 2, 3, 4)))
    col = {i: v for (i, j), v in R.items() if j == vidx("w", 5, 6)}
    assert list(col) == [vidx("d", 7, 8)] and abs(col[vidx("d", 7, 8)]) == 2
    assert not any(j == vidx("w", 1, 5) for _, j in R)
    # with the 1/2 normalization the image is +-1
    R = rho(LieElement.make(sig={(0, 1, 2, 3): Q(1, 2)}))
    assert {abs(v) for v in R.values()} == {1} and len(R) == 12


def test_cartan_involution_examples():
    assert cartan_involution(elementary(1, 2)) == -elementary(2, 1)
    x = LieElement.make(sig=e(1, 2, 3, 4))
    assert cartan_involution(x) == -LieElement.make(sig=e(5, 6, 7, 8))
    for X in (x, elementary(3, 7), diagonal([1, -1, 0, 0, 0, 0, 0, 0])):
        assert cartan_involution(cartan_involution(X)) == X


def test_basis_sizes(e7):
    assert e7.dim == 133 and len(e7.span) == 133 and e7.n_roots == 126
    assert sum(1 for r in e7.roots if r[1] == "Lambda") == 56


def test_bracket_examples(e7):
    X12, X21 = elementary(1, 2), elementary(2, 1)
    assert e7.bracket(X12, X21) == diagonal([1, -1, 0, 0, 0, 0, 0, 0])
    a = idx(e7, "e1+e2+e3+e4")
    H = e7.bracket(e7.X[a], e7.X[e7.neg(a)])
    assert H == diagonal([Q(1, 2)] * 4 + [Q(-1, 2)] * 4)
    h = diagonal([1, 2, 3, 4, 5, 6, 7, -28])
    for k in (a, idx(e7, "e3-e5")):
        alpha = sum(x * y for x, y in zip([1, 2, 3, 4, 5, 6, 7, -28], _weight8(e7, k)))
        assert e7.bracket(h, e7.X[k]) == e7.X[k] * alpha


def _weight8(G, k):
    label = G.roots[k][0]
    v = [0] * 8
    if "-" in label:
        i, j = (int(t) for t in label.replace("e", "").split("-"))
        v[i - 1], v[j - 1] = 1, -1
    else:
        for t in label.split("+"):
            v[int(t[1:]) - 1] = 1
    return v


def test_killing_form(e7):
    a = idx(e7, "e1-e2")
    s = idx(e7, "e1+e2+e3+e4")
    for k in (a, s):
        K = e7.killing(e7.X[k], e7.X[e7.neg(k)])
        aa, _ = e7.root_length(k, e7.killing)
        assert K == 2 / aa
        assert e7.trace_form(e7.X[k], e7.X[e7.neg(k)]) == 12
        assert e7.root_length(k, e7.trace_form)[0] == Q(1, 6)
    assert e7.killing(e7.X[a], e7.X[s]) == 0
    H12 = diagonal([1, -1, 0, 0, 0, 0, 0, 0])
    assert e7.trace_form(H12, H12) == 24
    assert e7.killing(H12, H12) == 3 * 24


def test_t_alpha(e7):
    k = idx(e7, "e2-e5")
    _, T = e7.root_length(k, e7.trace_form)
    assert T == diagonal([0, 1, 0, 0, -1, 0, 0, 0]) * Q(1, 12)


def test_generators_are_unipotent_and_integral(e7):
    from arithgroup.e7.algebra import sp_identity, sp_mul
    for k in range(0, e7.n_roots, 9):
        x, xi = e7.generator(k), e7.generator(k, -1)
        assert sp_mul(x, xi) == sp_identity()
        assert all(Q(v).denominator == 1 for v in x.values())
        assert len(x) - NV <= 12


def test_weights(e7):
    weights = weights_of_V(e7)
    assert len(weights) == 56
    k = vidx("w", 1, 2)
    assert weights[k][0] == (1, 1, 0, 0, 0, 0, 0, 0)
    assert weight_of_basis_vector(vidx("d", 3, 4)) == (0, 0, -1, -1, 0, 0, 0, 0)


def test_behr_pair_sample(e7):
    pairs = behr_pairs(e7)
    assert len(pairs) == 200 == len(set(pairs))
    with_sum = [p for p in pairs if e7.root_sum(*p)[0] is not None]
    assert len(with_sum) == 100
    assert all(not e7.root_sum(*p)[1] for p in pairs)


def test_full_report(e7_report):
    by_name = {c.name: c for c in e7_report.checks}
    expected_fail = {"killing_adjoint_appendix_values"}
    assert {n for n, c in by_name.items() if not c.passed} == expected_fail
    assert by_name["dimensions"].witness["appendix_lambda_figure"] == 63
    assert by_name["killing_eq2new"].witness["K_root"] == "36"
    assert by_name["trace_form_appendix_values"].witness["alpha_alpha"] == "1/6"


def test_report_schema(e7_report):
    schema = json.loads(files("arithgroup").joinpath("schemas/report.schema.json").read_text())
    doc = json.loads(json.dumps(e7_report.to_json()))
    jsonschema.validate(doc, schema)
    assert doc["verdict"] == "fail"
    assert [c["name"] for c in doc["checks"]] == sorted(c["name"] for c in doc["checks"])


def _touches(failure, names):
    return bool(set(failure["roots"]) & names) or not failure["roots"]


@pytest.mark.parametrize("flip,simple_index", [("e1-e2", 1), ("e4+e5+e6+e7", 2), ("e3-e7", None)])
def test_negative_control(flip, simple_index):
    report = verify(flip=flip)
    G = E7Algebra()
    k = idx(G, flip)
    names = {flip, G.label(G.neg(k))}
    if simple_index:
        names.add(f"H{simple_index}")
    failing = {c.name: c for c in report.checks if not c.passed}
    assert "killing_adjoint_appendix_values" in failing
    assert {"structure_constants", "cartan_involution", "killing_eq2new"} <= set(failing)
    for c in failing.values():
        for f in c.failures:
            assert _touches(f, names), (c.name, f)
    assert ("behr_relations" in failing) == bool(simple_index)
    for name in ("dimensions", "bracket_closure_grading", "jacobi_identity", "admissible_lattice",
                 "symplectic_generators", "coroot_integrality", "killing_vs_trace_form"):
        assert name not in failing


def test_unknown_flip():
    with pytest.raises(ValueError):
        E7Algebra(flip="e9-e1")
