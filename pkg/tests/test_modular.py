import random
from fractions import Fraction

import pytest

from arithgroup.exact import InputError, Matrix
from arithgroup.minkowski import m
from arithgroup.modular import (
    INFINITE,
    S,
    T,
    T_INV,
    HPoint,
    SL2Element,
    commutator_subgroup_generators,
    decompose_ST,
    element_order,
    evaluate_word,
    free_word_check,
    in_congruence_subgroup,
    lemma9_check,
    moebius,
    reduce_to_D,
    squarefree_split,
)
from sampling import random_hpoint, random_sl2

Q = Fraction
A = SL2Element(1, -1, 1, 0)
I2 = HPoint.make(0, 1)


def test_sl2_element_validates():
    with pytest.raises(InputError):
        SL2Element(1, 1, 1, 1)
    assert SL2Element.parse("2,1,1,1") == SL2Element(2, 1, 1, 1)
    assert str(S) == "0,-1,1,0"
    assert S * S == -SL2Element(1, 0, 0, 1)
    assert T * T_INV == SL2Element(1, 0, 0, 1)


def test_hpoint_parse_and_normalization():
    z = HPoint.parse("1/2", "3*sqrt(12)")
    assert z.im_radicand == 3 and z.im_coeff == 6
    assert HPoint.parse("0", "sqrt(2)").im2 == 2
    assert HPoint.parse("0", "2/3").im2 == Q(4, 9)
    assert squarefree_split(72) == (6, 2)
    with pytest.raises(InputError):
        HPoint.parse("0", "abc")
    with pytest.raises(InputError):
        HPoint.make(0, -1)


def test_moebius_examples():
    assert moebius(S, I2) == I2
    z = HPoint.make(Q(1, 3), Q(2, 5), 7)
    assert moebius(T, z) == HPoint.make(Q(4, 3), Q(2, 5), 7)
    assert moebius(S, HPoint.make(0, 2)) == HPoint.make(0, Q(1, 2))


def test_moebius_action_law():
    rng = random.Random(1)
    for _ in range(100):
        g1, g2, z = random_sl2(rng), random_sl2(rng), random_hpoint(rng)
        assert moebius(g1 * g2, z) == moebius(g1, moebius(g2, z))
        w = moebius(g1, z)
        assert w.im_radicand == z.im_radicand


def test_reduce_examples():
    g, w = reduce_to_D(I2)
    assert g == SL2Element(1, 0, 0, 1) and w == I2
    g, w = reduce_to_D(HPoint.make(5, 2))
    assert g == T_INV ** 5 and w == HPoint.make(0, 2)
    g, w = reduce_to_D(HPoint.make(0, Q(1, 2)))
    assert g == S and w == HPoint.make(0, 2)


def test_reduce_random_points():
    rng = random.Random(7)
    for _ in range(300):
        z = random_hpoint(rng)
        g, w = reduce_to_D(z)
        assert abs(w.re) <= Q(1, 2) and w.abs2 >= 1
        assert moebius(g, z) == w


def test_reduced_point_maximizes_im():
    rng = random.Random(8)
    small = [SL2Element(a, b, c, d) for a in range(-4, 5) for b in range(-4, 5)
             for c in range(-4, 5) for d in range(-4, 5) if a * d - b * c == 1]
    for _ in range(20):
        _, w = reduce_to_D(random_hpoint(rng))
        assert all(moebius(g, w).im2 <= w.im2 for g in small)


def test_decompose_examples():
    assert decompose_ST(S) == ("S",)
    assert decompose_ST(T ** 3) == ("T", "T", "T")
    g = SL2Element(2, 1, 1, 1)
    assert evaluate_word(decompose_ST(g)) in (g, -g)


def test_decompose_round_trip():
    rng = random.Random(5)
    for _ in range(100):
        g = random_sl2(rng, steps=rng.randint(0, 12))
        word = decompose_ST(g)
        assert evaluate_word(word) in (g, -g)
        assert all(tok in ("S", "T", "T^-1") for tok in word)
        assert not any(a == "T" and b == "T^-1" or a == "T^-1" and b == "T" for a, b in zip(word, word[1:]))


def test_congruence_examples():
    assert in_congruence_subgroup(SL2Element(1, 0, 0, 1), 7)
    assert not in_congruence_subgroup(T, 2)
    g = SL2Element(4, 3, 5, 4)
    assert not in_congruence_subgroup(g, 3)
    assert in_congruence_subgroup(g, 1)
    assert in_congruence_subgroup(SL2Element(4, 3, 9, 7), 3)
    with pytest.raises(InputError):
        in_congruence_subgroup(g, 0)


def test_element_order_examples():
    assert element_order(S) == 4
    assert element_order(A) == 6
    assert element_order(T) == INFINITE
    assert element_order(-SL2Element(1, 0, 0, 1)) == 2
    with pytest.raises(InputError):
        element_order(Matrix([[2, 0], [0, 1]]))


def test_finite_orders_divide_m():
    rng = random.Random(2)
    for _ in range(50):
        g = random_sl2(rng, steps=rng.randint(1, 4))
        k = element_order(g)
        if k != INFINITE:
            assert m(2) % k == 0
    assert element_order(Matrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])) == 3


def _gamma3_generators():
    return [SL2Element(1, 3, 0, 1), SL2Element(1, 0, 3, 1), SL2Element(-2, -3, 3, 4)]


def test_lemma9():
    cert = lemma9_check(3, SL2Element(1, 3, 0, 1))
    assert cert.torsion_free and cert.valuation == 1
    rng = random.Random(9)
    gens = _gamma3_generators()
    for _ in range(20):
        g = SL2Element(1, 0, 0, 1)
        for _ in range(rng.randint(1, 6)):
            h = rng.choice(gens)
            g = g * (h if rng.random() < 0.5 else h.inverse())
        if g != SL2Element(1, 0, 0, 1):
            assert lemma9_check(3, g).torsion_free
    # p = 2 fails: -I is congruent to I mod 2 and has order 2
    minus = -SL2Element(1, 0, 0, 1)
    assert in_congruence_subgroup(minus, 2) and element_order(minus) == 2
    with pytest.raises(InputError):
        lemma9_check(2, minus)
    with pytest.raises(InputError):
        lemma9_check(3, T)
    with pytest.raises(InputError):
        lemma9_check(3, SL2Element(1, 0, 0, 1))


def test_free_word_check_examples():
    assert free_word_check([T], 10)
    assert not free_word_check([S], 4)
    a, b = commutator_subgroup_generators()
    assert free_word_check([a, b], 6)


def test_commutator_generators_are_commutators():
    a, b = commutator_subgroup_generators()
    # [SL2(Z), SL2(Z)] has index 12 = m(2)/2 and free rank 1 + 12/12 = 2
    assert 1 + 12 // 12 == 2 == len((a, b))
    assert m(2) // 2 == 12
    # the abelianization character SL2(Z) -> Z/12: S -> 3, A -> 2, -I -> 6,
    # and T = -A S -> 6 + 2 + 3 = -1; both generators must map to 0
    for g in (a, b):
        word = decompose_ST(g)
        image = sum(3 if t == "S" else (-1 if t == "T" else 1) for t in word)
        if evaluate_word(word) == -g:
            image += 6
        assert image % 12 == 0
    assert (-A * S) == T
