"""Characters on finite fields, Gauss sums, and their exact evaluations.

A multiplicative character is stored as the pair (n, i): it sends an element
with discrete log k (w.r.t. the field's distinguished generator) to
zeta_n^(i*k), and is extended by chi(0) = 0.  The Teichmuller character of F
is (|F^x|, 1); the characters attached to orbit representatives are (n, i)
with n one of the curve exponents.  Additive characters are twists
psi_alpha(x) = zeta_p^(Tr(alpha*x)) of the canonical psi_1.

Gauss sums g(chi, psi) = -sum chi(x) psi(x) are computed exactly: one numpy
pass buckets every x in F^x by the pair (i*dlog(x) mod n', Tr(alpha*x)), and
the integer bucket counts assemble the value in Z[zeta_{n'p}].  Closed-form
evaluations (quadratic and supersingular cases, and the Stickelberger
valuation) avoid field enumeration entirely and work at exponent level, which
is what makes parameters like r = 3^40 tractable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .config import BudgetExceeded
from .cyclotomic import CycElt, zeta
from .finite_field import (
    Field,
    FieldElt,
    Tower,
    discrete_log,
    embed,
    power_traces,
    trace,
)
from .ntheory import crt_pair, multiplicative_order, supersingular_nu


# ----------------------------------------------------------------------------
# character types
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class MultChar:
    """x -> zeta_n^(i * dlog x) on field^x, extended by chi(0) = 0."""

    field: Field
    n: int
    i: int

    def __post_init__(self):
        if self.n < 1 or (self.field.mult_order * self.i) % self.n:
            raise ValueError("character exponent not defined on this field")

    @property
    def order(self) -> int:
        return self.n // math.gcd(self.n, self.i)

    def is_trivial(self) -> bool:
        return self.order == 1

    def value(self, x: FieldElt) -> CycElt:
        if x.is_zero():
            return CycElt.zero()
        return zeta(self.order, self.i // math.gcd(self.n, self.i) * discrete_log(x))

    def __call__(self, x: FieldElt) -> CycElt:
        return self.value(x)


@dataclass(frozen=True)
class AddChar:
    """x -> psi_0(Tr_{F/F_p}(alpha x)) with psi_0(t) = zeta_p^t."""

    field: Field
    alpha: FieldElt

    def is_trivial(self) -> bool:
        return self.alpha.is_zero()

    def value(self, x: FieldElt) -> CycElt:
        prime = self.field.tower.field(1)
        t = trace(self.alpha * x, prime)
        # the degree-1 field is F_p[x]/(x - g): the coefficient is the residue
        return zeta(self.field.p, t.coeffs[0])

    def __call__(self, x: FieldElt) -> CycElt:
        return self.value(x)


def teichmuller_char(field: Field) -> MultChar:
    """The order-|F^x| character sending the distinguished generator to zeta."""
    return MultChar(field, field.mult_order, 1)


def additive_char(field: Field, alpha: FieldElt) -> AddChar:
    return AddChar(field, alpha)


# ----------------------------------------------------------------------------
# Gauss sums
# ----------------------------------------------------------------------------


def gauss_sum(field: Field, chi: MultChar, psi: AddChar) -> CycElt:
    """g(chi, psi) = -sum_{x in F^x} chi(x) psi(x), exactly."""
    if field.order > field.tower.config.field_budget:
        raise BudgetExceeded(f"Gauss sum over {field!r} exceeds the field budget")
    n = field.mult_order
    if psi.is_trivial():
        return CycElt.integer(-(field.order - 1) if chi.is_trivial() else 0)
    if n == 1:
        return CycElt.integer(-1) * chi.value(field.one()) * psi.value(field.one())
    g = math.gcd(chi.n, chi.i)
    nc, ic = chi.n // g, chi.i // g
    d_alpha = discrete_log(psi.alpha)
    return _gauss_from_tables(field, nc, ic, d_alpha)


def _gauss_from_tables(field: Field, nc: int, ic: int, d_alpha: int) -> CycElt:
    """Bucketed exact Gauss sum for chi = zeta_nc^(ic * dlog), psi twisted by g^d_alpha."""
    p = field.p
    n = field.mult_order
    tr = power_traces(field)
    shifted = np.roll(tr, -d_alpha % n) if d_alpha % n else tr
    idx = (ic * np.arange(n, dtype=np.int64)) % nc
    counts = np.bincount(idx * p + shifted, minlength=nc * p)
    m = nc * p if nc > 1 else p
    raw = [0] * m
    # zeta_nc^c * zeta_p^t = zeta_m^((m/nc) c + (m/p) t)
    for c in range(nc):
        base = (m // nc) * c
        row = c * p
        for t in range(p):
            v = counts[row + t]
            if v:
                raw[(base + (m // p) * t) % m] -= int(v)
    return CycElt(m, raw)


def twist_identity_check(field: Field, chi: MultChar, alpha: FieldElt) -> bool:
    """g(chi, psi_alpha) == chi(alpha)^(-1) g(chi, psi_1), exactly."""
    if alpha.is_zero():
        raise ValueError("twist by zero")
    lhs = gauss_sum(field, chi, additive_char(field, alpha))
    inv = chi.value(alpha).conjugate() if not chi.is_trivial() else CycElt.integer(1)
    # chi(alpha)^(-1) = conjugate since chi(alpha) is a root of unity
    rhs = inv * gauss_sum(field, chi, additive_char(field, field.one()))
    return lhs == rhs


def hasse_davenport_check(field: Field, ext: Field, chi: MultChar, alpha: FieldElt) -> bool:
    """g(chi o N, psi_alpha o Tr) == g(chi, psi_alpha)^[ext:field], exactly."""
    if ext.tower is not field.tower or ext.deg % field.deg:
        raise ValueError("ext must be an extension of field in the same tower")
    steps = ext.deg // field.deg
    base = gauss_sum(field, chi, additive_char(field, alpha))
    # chi o N has the same (n, i) data on the extension; psi_alpha o Tr twists
    # the extension's canonical character by the embedded alpha
    lifted = gauss_sum(ext, MultChar(ext, chi.n, chi.i), additive_char(ext, embed(alpha, ext)))
    return lifted == base**steps


def shafarevich_tate_eval(sub: Field, chi: MultChar) -> CycElt:
    """Exact Gauss sum -chi(x)|F_0| for chi trivial on F_0, F/F_0 quadratic.

    x is any nonzero element of trace zero; the value does not depend on the
    choice because any two differ by an F_0^x factor, on which chi is trivial.
    """
    field = chi.field
    if field.tower is not sub.tower or field.deg != 2 * sub.deg:
        raise ValueError("chi must live on the quadratic extension of sub")
    if chi.is_trivial():
        raise ValueError("chi must be nontrivial")
    q0 = sub.order
    if (chi.i * (q0 + 1)) % chi.n:
        raise ValueError("chi is not trivial on the subfield")
    if field.p != 2:
        x = field.gen() ** ((q0 + 1) // 2)
    else:
        x = next(
            y
            for y in (field.gen() ** k for k in range(1, field.mult_order + 1))
            if trace(y, sub).is_zero()
        )
    if not trace(x, sub).is_zero():
        raise AssertionError("trace-zero witness construction failed")
    return -q0 * chi.value(x)


# ----------------------------------------------------------------------------
# orbit Gauss sums g(o') for orbits of S'_n, and their closed forms
# ----------------------------------------------------------------------------


def orbit_dlog(alpha_exp: int, q: int, target_card: int) -> int:
    """dlog of alpha in the field with target_card elements.

    alpha = g_q^alpha_exp in F_q; norm-compatible generators turn containment
    F_q(alpha) <= F' into plain exponent rescaling.
    """
    num = alpha_exp * (target_card - 1)
    if num % (q - 1):
        raise ValueError("alpha does not lie in the target field")
    return num // (q - 1)


def orbit_gauss(
    tw: Tower, r_exp: int, q_exp: int, n: int, i: int, alpha_exp: int, size: int
) -> CycElt:
    """g(o') by direct summation over the degree-|o'| extension of F_r."""
    i %= n
    if i == 0:
        raise ValueError("orbit index must be nonzero mod n")
    p = tw.p
    field = tw.field(r_exp * size)
    q = p**q_exp
    if (i * (field.order - 1)) % n:
        raise ValueError("character not defined: n does not divide i(r^f - 1)")
    d_alpha = orbit_dlog(alpha_exp, q, field.order) % field.mult_order
    g = math.gcd(n, i)
    return _gauss_from_tables(field, n // g, i // g, d_alpha)


def orbit_gauss_closed_form(
    p: int, r_exp: int, q_exp: int, n: int, i: int, alpha_exp: int, size: int
) -> Optional[CycElt]:
    """Exact g(o') when a quadratic or supersingular closed form pins it.

    Returns None when the available formulas determine at most g(o')^2, or
    when no supersingularity is present; absence is a value, not an error.
    """
    i %= n
    if i == 0:
        raise ValueError("orbit index must be nonzero mod n")
    q = p**q_exp
    d = orbit_dlog(alpha_exp, q, p ** (r_exp * size))
    lam_exp = i * d % n  # lambda(alpha) = zeta_n^lam_exp
    n1 = n // math.gcd(n, i)
    if n1 == 2:
        # quadratic character; the sign of the classical sum is pinned only
        # when 4 | [F_r : F_p]
        if p == 2 or r_exp % 4:
            return None
        sign = -1 if (d % 2) else 1
        return CycElt.integer(sign * p ** (r_exp * size // 2))
    nu = supersingular_nu(n1, p)
    if nu is None or p == 2:
        return None
    if (size * r_exp) % (2 * nu) or (i * (p**nu + 1)) % n:
        raise AssertionError("supersingular closed form: non-integral exponent")
    half = size * r_exp // (2 * nu) * (1 + i * (p**nu + 1) // n)
    sign = -1 if half % 2 else 1
    return sign * p ** (r_exp * size // 2) * zeta(n, -lam_exp)


# ----------------------------------------------------------------------------
# Stickelberger valuations
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ValuationFraction:
    """nu_p(g(o'))/|o'| as a reduced fraction Num/Den."""

    num: int
    den: int

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)


def stickelberger_valuation(n: int, i: int, p: int, mu: Optional[int] = None) -> Fraction:
    """(1/mu) sum_k {-i p^k / n} over k < mu, via the period-kappa collapse.

    The sum over any multiple mu of kappa = o_p(n / gcd(n, i)) equals the sum
    over one period, so the value is computed from kappa terms no matter how
    large mu is (mu = [F_r:F_p] |o'| can be astronomically large).
    """
    if math.gcd(n, p) != 1:
        raise ValueError("n must be coprime to p")
    i %= n
    if i == 0:
        raise ValueError("i must be nonzero mod n")
    kappa = multiplicative_order(p, n // math.gcd(n, i))
    if mu is not None and mu % kappa:
        raise ValueError(f"mu = {mu} is not a multiple of the period {kappa}")
    total = Fraction(0)
    pk = 1
    for _ in range(kappa):
        total += Fraction((-i * pk) % n, n)
        pk = pk * p % n
    return total / kappa


def num_den(n: int, i: int, p: int) -> ValuationFraction:
    """The reduced fraction Num(o')/Den(o') of the Stickelberger valuation."""
    v = stickelberger_valuation(n, i, p)
    return ValuationFraction(v.numerator, v.denominator)
