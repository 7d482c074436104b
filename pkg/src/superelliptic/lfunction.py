"""L(J, T) = prod_o (1 - omega(o) T^|o|): assembly, rank, special value.

The product is expanded with exact cyclotomic coefficients (partial products
need not be rational) and collapsed to integers only at the end; a non-integer
coefficient there means the orbit multiset was not Galois-stable, which is an
implementation bug and raises hard.  The analytic rank is the number of
orbits with omega(o) = r^|o|; orbits are first screened by the Stickelberger
valuation, which is available without evaluating any Gauss sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .config import BudgetExceeded, Config, default_config
from .cyclotomic import CycElt
from .finite_field import Tower, tower
from .orbits import CurveParams, OmegaValue, compute_omegas, enumerate_orbits, omega, valuation_of_omega


class UnresolvedOrbitError(RuntimeError):
    def __init__(self, orbits):
        self.orbits = orbits
        super().__init__(f"{len(orbits)} orbit(s) could not be resolved exactly")


def expansion_cost_estimate(params: CurveParams, orbit_sizes: Sequence[int]) -> int:
    """Weighted op count for expanding the orbit product with dense Z[zeta] coefficients.

    Coefficients live at conductor dividing a*b*p, so one coefficient multiply
    costs about phi(abp)^2 integer operations; the triangular accumulation over
    factors contributes sum of partial degrees / factor size.
    """
    from .ntheory import euler_phi

    phi2 = euler_phi(params.a * params.b * params.p) ** 2
    total = 0
    top = 0
    g = 0
    for s in sorted(orbit_sizes):
        g = math.gcd(g, s)
        total += max(top // g, 1)
        top += s
    return total * phi2


@dataclass(frozen=True)
class LPolynomial:
    """Integer-coefficient L(J, T), ascending degree order."""

    coeffs: tuple[int, ...]
    r: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def describe(self) -> dict:
        return {"r": self.r, "degree": self.degree, "coefficients": list(self.coeffs)}


def l_polynomial(
    params: CurveParams,
    tw: Optional[Tower] = None,
    config: Optional[Config] = None,
    omegas: Optional[Sequence[OmegaValue]] = None,
) -> LPolynomial:
    """Expand the orbit product into Z[T]."""
    config = config or default_config()
    tw = tw or tower(params.p, config=config)
    if omegas is None:
        orbit_list = enumerate_orbits(params, config)
        cost = expansion_cost_estimate(params, [o.size for o in orbit_list])
        if cost > config.expansion_budget:
            raise BudgetExceeded(
                f"L-product expansion estimate {cost} exceeds budget "
                f"{config.expansion_budget}; the rank certificate remains available"
            )
        omegas = compute_omegas(params, orbit_list, tw=tw, config=config)
    bad = [om.orbit for om in omegas if om.value is None]
    if bad:
        raise UnresolvedOrbitError(bad)
    conductor = 1
    for om in omegas:
        conductor = math.lcm(conductor, om.value.m)
    deg = sum(om.orbit.size for om in omegas)
    zero = CycElt.zero(conductor)
    coeffs: list[CycElt] = [zero] * (deg + 1)
    coeffs[0] = CycElt.integer(1, conductor)
    top = 0
    for om in sorted(omegas, key=lambda o: o.orbit.size):
        w = om.value.lift(conductor)
        s = om.orbit.size
        for k in range(min(top, deg - s), -1, -1):
            if not coeffs[k].is_zero():
                coeffs[k + s] = coeffs[k + s] - w * coeffs[k]
        top += s
    out = []
    for k, c in enumerate(coeffs):
        v = c.is_rational_integer()
        if v is None:
            raise AssertionError(f"coefficient {k} of L is not a rational integer: {c!r}")
        out.append(v)
    if len(out) - 1 != params.s_size or out[0] != 1:
        raise AssertionError("L-polynomial fails the degree/constant-term contract")
    return LPolynomial(tuple(out), params.r)


# ----------------------------------------------------------------------------
# functional equation, Riemann hypothesis
# ----------------------------------------------------------------------------


def functional_equation_sign(lpoly: LPolynomial) -> int:
    """The w with L(T) = w(rT)^deg L(1/(r^2 T)), checked coefficient-wise."""
    c, r, b = lpoly.coeffs, lpoly.r, lpoly.degree
    for w in (1, -1):
        if all(c[b - k] * r ** (2 * k) == w * r**b * c[k] for k in range(b + 1)):
            return w
    raise AssertionError("no functional-equation sign fits: corrupted polynomial")


def _content(poly: Sequence[int]) -> int:
    return math.gcd(*poly) if len(poly) > 1 else abs(poly[0])


def _primitive(poly: Sequence[int]) -> list[int]:
    c = _content(poly)
    return [v // c for v in poly] if c > 1 else list(poly)


def _poly_gcd_z(u: Sequence[int], v: Sequence[int]) -> list[int]:
    """Primitive gcd of integer polynomials (pseudo-remainder Euclid)."""
    u, v = _primitive(u), _primitive(v)
    while any(v):
        # pseudo-remainder of u by v
        r = list(u)
        lead = v[-1]
        while len(r) >= len(v) and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) < len(v):
                break
            c = r[-1]
            g = math.gcd(c, lead)
            mult = lead // g
            r = [x * mult for x in r]
            shift = len(r) - len(v)
            for j, d in enumerate(v):
                r[shift + j] -= (c // g) * d
        while r and r[-1] == 0:
            r.pop()
        u, v = v, _primitive(r) if any(r) else [0]
    g = _primitive(u)
    return [-c for c in g] if g[-1] < 0 else g


def squarefree_part(coeffs: Sequence[int]) -> list[int]:
    """coeffs / gcd(coeffs, coeffs') exactly; same roots, all simple."""
    deriv = [k * c for k, c in enumerate(coeffs)][1:]
    g = _poly_gcd_z(list(coeffs), deriv)
    if len(g) == 1:
        return list(coeffs)
    out, rem = _poly_divmod_q(list(coeffs), g)
    assert not any(rem), "squarefree division left a remainder"
    return out


def _poly_divmod_q(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    num = [Fraction(c) for c in num]
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(num) - 1, len(den) - 2, -1):
        c = num[k] / den[-1]
        q[k - len(den) + 1] = c
        if c:
            for j, d in enumerate(den):
                num[k - len(den) + 1 + j] -= c * d
    qi = [int(c) if c.denominator == 1 else c for c in q]
    return qi, [c for c in num[: len(den) - 1]]


def rh_check(lpoly: LPolynomial, tol: float = 1e-9) -> bool:
    """Numeric check that every root has modulus 1/r (after rescaling S = rT).

    Repeated roots ruin the accuracy of companion-matrix root finding, so the
    exact squarefree part is taken first; it has the same root set.
    """
    if lpoly.degree == 0:
        return True
    sqfree = squarefree_part(lpoly.coeffs)
    scaled = [Fraction(c) / Fraction(lpoly.r) ** k for k, c in enumerate(sqfree)]
    roots = np.roots([float(c) for c in reversed(scaled)])
    return bool(np.all(np.abs(np.abs(roots) - 1.0) <= tol))


def certify_factor_moduli(omegas: Sequence[OmegaValue], r: int) -> bool:
    """Exact RH at factor level: omega * conj(omega) = r^(2|o|) for every orbit."""
    for om in omegas:
        if om.value is None:
            return False
        if (om.value * om.value.conjugate()).is_rational_integer() != r ** (2 * om.orbit.size):
            return False
    return True


# ----------------------------------------------------------------------------
# vanishing order and special value
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecialValue:
    order: int  # v = ord_{T = 1/r} L
    value: Fraction  # L*(J) > 0

    def describe(self) -> dict:
        return {
            "vanishing_order": self.order,
            "value": [str(self.value.numerator), str(self.value.denominator)],
        }


def _divide_out_central_zero(coeffs: Sequence[int], r: int) -> Optional[list[int]]:
    """coeffs / (1 - rT) as integer polynomial, or None if not divisible."""
    q: list[int] = []
    prev = 0
    for c in coeffs[:-1]:
        prev = c + r * prev
        q.append(prev)
    if coeffs[-1] + r * q[-1] != 0:
        return None
    return q


def special_value(lpoly: LPolynomial) -> SpecialValue:
    """Divide out (1 - rT)^v exactly and evaluate at T = 1/r."""
    coeffs = list(lpoly.coeffs)
    r = lpoly.r
    v = 0
    while len(coeffs) > 1:
        reduced = _divide_out_central_zero(coeffs, r)
        if reduced is None:
            break
        coeffs = reduced
        v += 1
    value = LPolynomial(tuple(coeffs), r)(Fraction(1, r))
    if value <= 0:
        raise AssertionError(f"special value {value} is not positive")
    return SpecialValue(v, value)


# ----------------------------------------------------------------------------
# analytic rank with per-orbit certificates
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitCertificate:
    orbit_rep: tuple[int, int, int]
    size: int
    status: str  # contributes | excluded-by-valuation | excluded-by-value | unresolved
    method: str
    valuation: Fraction


@dataclass(frozen=True)
class AnalyticRank:
    lower: int
    upper: int
    exact: Optional[int]
    certificates: tuple[OrbitCertificate, ...]

    def describe(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "orbits": [
                {
                    "rep": list(c.orbit_rep),
                    "size": c.size,
                    "status": c.status,
                    "method": c.method,
                    "valuation": [c.valuation.numerator, c.valuation.denominator],
                }
                for c in self.certificates
            ],
        }


def analytic_rank(
    params: CurveParams,
    tw: Optional[Tower] = None,
    config: Optional[Config] = None,
    omegas: Optional[Sequence[OmegaValue]] = None,
) -> AnalyticRank:
    """|{o : omega(o) = r^|o|}| with one certificate per orbit.

    Orbits whose Stickelberger valuation differs from 1 are excluded without
    evaluating omega; the remainder need the exact value.  If any of those is
    unresolved the result is a bounds pair instead of an exact count.
    """
    config = config or default_config()
    tw = tw or tower(params.p, config=config)
    certs = []
    contributing = 0
    unresolved = 0
    if omegas is None:
        orbit_list = enumerate_orbits(params, config)
        source = ((o, None) for o in orbit_list)
    else:
        source = ((om.orbit, om) for om in omegas)
    for orbit, om in source:
        rep = (orbit.i, orbit.j, orbit.alpha_exp)
        val = valuation_of_omega(params, orbit) if om is None else om.valuation
        if val != 1:
            certs.append(OrbitCertificate(rep, orbit.size, "excluded-by-valuation", "stickelberger", val))
            continue
        if om is None:
            om = omega(params, orbit, tw, config)
        if om.value is None:
            unresolved += 1
            certs.append(OrbitCertificate(rep, orbit.size, "unresolved", om.method, val))
            continue
        if om.value == CycElt.integer(params.r**orbit.size):
            contributing += 1
            certs.append(OrbitCertificate(rep, orbit.size, "contributes", om.method, val))
        else:
            certs.append(OrbitCertificate(rep, orbit.size, "excluded-by-value", om.method, val))
    exact = contributing if unresolved == 0 else None
    return AnalyticRank(contributing, contributing + unresolved, exact, tuple(certs))


def vanishing_order(lpoly: LPolynomial) -> int:
    return special_value(lpoly).order
