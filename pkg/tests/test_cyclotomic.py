import math

import pytest

from superelliptic.cyclotomic import CycElt, cyclotomic_polynomial, zeta
from superelliptic.finite_field import make_field
from superelliptic.characters import MultChar, additive_char, gauss_sum


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert cyclotomic_polynomial(105)[:3] == (1, 1, 1)  # first case with coeff 2 later
    assert 2 in [abs(c) for c in cyclotomic_polynomial(105)]


def test_zeta_examples():
    assert zeta(4, 2) == -1
    assert zeta(3, 0) == 1
    assert zeta(3, 1) + zeta(3, 2) == -1


def test_arith_examples():
    p = 7
    total = CycElt.zero()
    for k in range(p):
        total = total + zeta(p, k)
    assert total == 0
    assert (1 + zeta(3)) * (1 + zeta(3, 2)) == 1
    x = zeta(12, 7)
    assert x * 1 == x


def test_conjugate():
    assert zeta(4).conjugate() == -zeta(4)
    assert CycElt.integer(9).conjugate() == 9
    f25 = make_field(5, 2)
    g = gauss_sum(f25, MultChar(f25, 24, 1), additive_char(f25, f25.one()))
    assert (g * g.conjugate()).is_rational_integer() == 25


def test_is_rational_integer():
    assert (zeta(3) + zeta(3, 2) + 1).is_rational_integer() == 0
    assert zeta(5).is_rational_integer() is None
    # quadratic Gauss sum over F_25 squared -> +25 (sign exponent is even)
    f25 = make_field(5, 2)
    g = gauss_sum(f25, MultChar(f25, 2, 1), additive_char(f25, f25.one()))
    assert (g * g).is_rational_integer() == 25


def test_conductor_lifting_and_equality():
    assert zeta(2) == CycElt.integer(-1)
    assert zeta(6, 3) == -1
    assert zeta(3).lift(12) == zeta(3)
    assert zeta(3) * zeta(5) == zeta(15, 8)
    with pytest.raises(ValueError):
        zeta(3).lift(10)


def test_reduction_idempotent_and_commutes_with_lift():
    x = CycElt(9, [3, 1, 4, 1, 5, 9, 2, 6, 5])  # deliberately unreduced input
    assert CycElt(9, x.c) == x
    y = zeta(9, 2) + zeta(9, 7)
    assert (x + y).lift(18) == x.lift(18) + y.lift(18)
    assert (x * y).lift(18) == x.lift(18) * y.lift(18)


def test_compress():
    y = zeta(12, 4).lift(24)
    assert y.m == 24
    assert y.compress().m == 3
    assert CycElt.integer(7, 30).compress().m == 1


def test_embed():
    e = zeta(4).embed()
    assert abs(e.real) <= e.err and abs(e.imag - 1) <= e.err
    m1 = CycElt.integer(-1).embed()
    assert m1.real == -1 and m1.imag == 0
    # embeddings respect multiplication within accumulated error
    x, y = zeta(7, 2) + 3, zeta(7, 5) - 1
    ex, ey, exy = x.embed(), y.embed(), (x * y).embed()
    prod = complex(ex.real, ex.imag) * complex(ey.real, ey.imag)
    tol = exy.err + ex.err * abs(complex(ey.real, ey.imag)) + ey.err * abs(
        complex(ex.real, ex.imag)
    ) + ex.err * ey.err
    assert abs(complex(exy.real, exy.imag) - prod) <= tol + 1e-12
    with pytest.raises(ValueError):
        zeta(8).embed(2)


def test_embed_high_precision():
    z = zeta(12, 1)
    v = z.embed_mp(prec=120)
    assert abs(v - complex(math.cos(math.pi / 6), math.sin(math.pi / 6))) < 1e-15


def test_pow():
    assert zeta(5) ** 5 == 1
    assert zeta(7, 3) ** 0 == 1
    assert (1 + zeta(4)) ** 2 == 2 * zeta(4)
    with pytest.raises(ValueError):
        zeta(5) ** -1
