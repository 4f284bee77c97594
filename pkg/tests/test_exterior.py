import pytest

from arithgroup.exact import InputError
from arithgroup.e7.exterior import ExtVector, det_pairing, perm_sign, star, volume_dual, wedge

e = ExtVector.basis_vector


def d(*idx):
    return ExtVector.basis_vector(*idx, dual=True)


def test_wedge_signs():
    assert wedge(e(1), e(2)) == e(1, 2)
    assert wedge(e(2), e(1)) == -e(1, 2)
    assert not wedge(e(1, 2), e(1, 3))
    assert wedge(e(1, 2, 3, 4), e(5, 6, 7, 8)) == e(1, 2, 3, 4, 5, 6, 7, 8)
    assert wedge(e(5, 6, 7, 8), e(1, 2, 3, 4)) == e(1, 2, 3, 4, 5, 6, 7, 8)
    assert wedge(e(2, 3), e(1)) == e(1, 2, 3)
    with pytest.raises(InputError):
        wedge(e(1, 2, 3, 4, 5), e(6, 7, 8, 1))
    with pytest.raises(InputError):
        wedge(e(1), d(2))


def test_wedge_bilinear_and_associative():
    u = e(1) + 2 * e(3)
    v = e(2) - e(4)
    w = e(5, 6)
    assert wedge(wedge(u, v), w) == wedge(u, wedge(v, w))
    assert wedge(u + e(7), v) == wedge(u, v) + wedge(e(7), v)
    assert wedge(u, u) == ExtVector.make(2, {})


def test_det_pairing():
    assert det_pairing(e(1, 2), d(1, 2)) == 1
    assert det_pairing(e(1, 2), d(1, 3)) == 0
    assert det_pairing(e(1, 2), ExtVector.make(2, {(1, 0): 1}, dual=True)) == -1
    with pytest.raises(InputError):
        det_pairing(e(1, 2), d(1, 2, 3))
    with pytest.raises(InputError):
        det_pairing(d(1, 2), e(1, 2))


def test_volume_dual_and_star():
    # <v, volume_dual(u)> is the coefficient of u ^ v
    u = e(1, 2, 3, 4)
    for v in (e(5, 6, 7, 8), e(1, 5, 6, 7)):
        top = wedge(u, v)
        coeff = dict(top.coeffs).get(tuple(range(8)), 0)
        assert det_pairing(v, volume_dual(u)) == coeff
    assert star(e(1, 2, 3, 4)) == e(5, 6, 7, 8)
    assert star(e(5, 6, 7, 8)) == e(1, 2, 3, 4)
    assert star(e(1, 3, 5, 7)) == e(2, 4, 6, 8)
    assert perm_sign((0, 2, 4, 6, 1, 3, 5, 7)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((0, 0)) == 0


def test_star_is_an_involution_on_degree_4():
    from arithgroup.e7.exterior import basis
    for q in basis(4):
        x = ExtVector.make(4, {q: 1})
        assert star(star(x)) == x
