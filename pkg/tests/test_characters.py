import math
from fractions import Fraction

import pytest

from superelliptic.characters import (
    MultChar,
    ValuationFraction,
    additive_char,
    gauss_sum,
    hasse_davenport_check,
    num_den,
    orbit_gauss,
    orbit_gauss_closed_form,
    shafarevich_tate_eval,
    stickelberger_valuation,
    teichmuller_char,
    twist_identity_check,
)
from superelliptic.cyclotomic import CycElt, zeta
from superelliptic.finite_field import make_field, norm, tower
from superelliptic.ntheory import multiplicative_order, supersingular_nu

from helpers import brute_gauss_sum


def test_teichmuller_char():
    f25 = make_field(5, 2)
    chi = teichmuller_char(f25)
    assert chi.value(f25.one()) == 1
    assert chi.value(f25.gen()) == zeta(24)
    # restriction compatibility through the norm
    f5 = make_field(5, 1)
    chi5 = teichmuller_char(f5)
    for k in range(24):
        x = f25.gen() ** k
        assert chi5.value(norm(x, f5)) == chi.value(x) ** 6


def test_additive_char():
    f5 = make_field(5, 1)
    psi0 = additive_char(f5, f5.zero())
    assert psi0.is_trivial()
    assert additive_char(f5, f5.one()).value(f5.elt([2])) == zeta(5, 2)
    for field in (f5, make_field(5, 2)):
        psi = additive_char(field, field.one())
        total = CycElt.zero()
        for code in range(field.order):
            total = total + psi.value(field.from_code(code))
        assert total == 0


def test_gauss_sum_basic_cases():
    f5 = make_field(5, 1)
    psi1 = additive_char(f5, f5.one())
    assert gauss_sum(f5, MultChar(f5, 1, 0), psi1) == 1
    quad = MultChar(f5, 2, 1)
    assert gauss_sum(f5, quad, additive_char(f5, f5.zero())) == 0
    g = gauss_sum(f5, quad, psi1)
    assert (g * g).is_rational_integer() == 5


@pytest.mark.parametrize("p,m", [(5, 1), (7, 1), (3, 2), (2, 3)])
def test_gauss_sum_matches_brute_force(p, m):
    field = make_field(p, m)
    n = field.mult_order
    psi = additive_char(field, field.gen())
    for d in [d for d in range(2, min(n, 13)) if n % d == 0]:
        chi = MultChar(field, d, 1)
        assert gauss_sum(field, chi, psi) == brute_gauss_sum(field, chi, psi)


@pytest.mark.parametrize("p", [7, 11])
def test_twist_identity_exhaustive(p):
    field = make_field(p, 1)
    for n in [d for d in range(2, p) if (p - 1) % d == 0]:
        for i in range(1, n):
            chi = MultChar(field, n, i)
            for code in range(1, p):
                assert twist_identity_check(field, chi, field.elt([code]))


def test_hasse_davenport():
    f5, f25 = make_field(5, 1), make_field(5, 2)
    quad = MultChar(f5, 2, 1)
    assert hasse_davenport_check(f5, f5, quad, f5.one())  # [F':F] = 1
    assert hasse_davenport_check(f5, f25, quad, f5.one())
    assert hasse_davenport_check(f5, f25, quad, f5.elt([3]))
    f7, f49 = make_field(7, 1), make_field(7, 2)
    assert hasse_davenport_check(f7, f49, MultChar(f7, 3, 1), f7.one())


def test_shafarevich_tate():
    f5, f25 = make_field(5, 1), make_field(5, 2)
    chi3 = MultChar(f25, 3, 1)
    val = shafarevich_tate_eval(f5, chi3)
    assert val == gauss_sum(f25, chi3, additive_char(f25, f25.one()))
    assert (val * val.conjugate()).is_rational_integer() == 25
    f3, f9 = make_field(3, 1), make_field(3, 2)
    for n, i in [(4, 1), (2, 1)]:
        chi = MultChar(f9, n, i)
        assert shafarevich_tate_eval(f3, chi) == gauss_sum(f9, chi, additive_char(f9, f9.one()))
    with pytest.raises(ValueError):
        shafarevich_tate_eval(f3, MultChar(f9, 8, 1))  # not trivial on F_3


def test_orbit_gauss_representative_independence():
    # orbit of (1, alpha) in S'_3 under r = 5, q = 5: i cycles 1 -> 2
    tw = tower(5)
    g1 = orbit_gauss(tw, 1, 1, 3, 1, 1, 2)
    g2 = orbit_gauss(tw, 1, 1, 3, 2, 1, 2)  # r * (1, alpha): exponent shifts too
    # alpha exponent transforms by r^{-1} mod (q-1): 1 -> 1 * inv(5 mod 4) = 1
    assert g1 == g2
    assert (g1 * g1.conjugate()).is_rational_integer() == 5**2


def test_orbit_gauss_modulus():
    tw = tower(7)
    g = orbit_gauss(tw, 1, 1, 3, 1, 2, 1)
    assert (g * g.conjugate()).is_rational_integer() == 7


def test_closed_form_quadratic_needs_divisibility():
    # r = 5: 4 does not divide [F_r:F_p] = 1, the sign is not pinned
    assert orbit_gauss_closed_form(5, 1, 1, 2, 1, 0, 1) is None
    # r = 5^4: pinned
    val = orbit_gauss_closed_form(5, 4, 1, 2, 1, 0, 1)
    assert val == CycElt.integer(5**2)


def test_closed_form_supersingular_vs_direct_sum_sweep():
    # (p, r, n) = (5, 25, 3): every orbit of S'_3 with q = 5
    tw = tower(5)
    r_exp, q_exp, n = 2, 1, 3
    r, q = 25, 5
    for i in (1, 2):
        for e in range(q - 1):
            size = 1  # r = 25 = 1 mod 3 and the Frobenius orbit of alpha is trivial
            assert (i * (5 ** (r_exp * size) - 1)) % n == 0
            closed = orbit_gauss_closed_form(5, r_exp, q_exp, n, i, e, size)
            assert closed is not None
            assert closed == orbit_gauss(tw, r_exp, q_exp, n, i, e, size)


def test_closed_form_extra_simple_case():
    # 4 nu | [F_r:F_p] and alpha an n-th power  ->  g(o') = r^{|o'|/2}
    # p = 3, n = 5 (nu = 2), r = 3^8, q = 3, alpha = 1 (exponent 0)
    val = orbit_gauss_closed_form(3, 8, 1, 5, 1, 0, 1)
    assert val == CycElt.integer(3**4)


def test_stickelberger_examples():
    assert stickelberger_valuation(3, 1, 5) == Fraction(1, 2)
    assert stickelberger_valuation(3, 1, 7) == Fraction(2, 3)
    for p in (3, 5, 11, 97):
        assert stickelberger_valuation(2, 1, p) == Fraction(1, 2)


def test_stickelberger_mu_independence():
    base = stickelberger_valuation(7, 2, 5)
    kappa = multiplicative_order(5, 7)
    for mult in (1, 2, 5, 40):
        assert stickelberger_valuation(7, 2, 5, mu=kappa * mult) == base
    with pytest.raises(ValueError):
        stickelberger_valuation(7, 2, 5, mu=kappa + 1)


def test_num_den_examples_and_bounds_sweep():
    assert num_den(3, 1, 7) == ValuationFraction(2, 3)
    for p in (3, 5, 7, 11, 13, 97):
        for n in range(2, 51):
            if math.gcd(n, p) != 1:
                continue
            o_n = multiplicative_order(p, n)
            for i in range(1, n):
                v = num_den(n, i, p)
                frac = v.as_fraction()
                assert Fraction(1, n) <= frac <= 1 - Fraction(1, n)
                assert 1 <= v.num < v.den
                assert (n * o_n) % v.den == 0
                if supersingular_nu(n, p) is not None:
                    assert frac == Fraction(1, 2)


def test_stickelberger_rejects_bad_input():
    with pytest.raises(ValueError):
        stickelberger_valuation(10, 1, 5)  # gcd(n, p) != 1
    with pytest.raises(ValueError):
        stickelberger_valuation(7, 0, 5)
