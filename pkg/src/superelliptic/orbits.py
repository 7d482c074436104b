"""Orbits of the <r>-action on S = (Z/a - 0) x (Z/b - 0) x F_q^x and omega values.

The group generated by r acts by (i, j, alpha) -> (r i, r j, alpha^(1/r)).
Storing alpha as a discrete-log exponent of the canonical F_q generator turns
the inverse-Frobenius component into multiplication by r^(-1) mod (q-1), so
orbit enumeration is pure modular arithmetic.

Each orbit o carries the Frobenius eigenvalue packet

    omega(o) = g(pi_a(o))^nu_a * g(pi_b(o))^nu_b,   |omega(o)| = r^|o|,

evaluated exactly along a ladder: the whole-orbit closed form when both
exponents are supersingular and 4 nu | [F_r:F_p]; per-component quadratic /
supersingular closed forms; direct bucketed summation when the component
field fits the budget; otherwise the orbit is reported unresolved (never
silently approximated).  The p-adic valuation of omega(o) is always available
combinatorially from two Stickelberger fractions and is used as a cheap
exclusion certificate by the rank computation.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .characters import num_den, orbit_dlog, orbit_gauss, orbit_gauss_closed_form
from .config import BudgetExceeded, Config, default_config
from .cyclotomic import CycElt, zeta
from .finite_field import Tower, tower
from .ntheory import is_prime, multiplicative_order, supersingular_nu


@dataclass(frozen=True)
class CurveParams:
    """The tuple (p, r, q, a, b) defining y^b + x^a = t^q - t over F_r(t).

    r and q are stored as exponents of p so that instances like r = 3^40 never
    materialize field elements.
    """

    p: int
    r_exp: int
    q_exp: int
    a: int
    b: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.r_exp < 1 or self.q_exp < 1:
            raise ValueError("r and q exponents must be >= 1")
        if self.a < 2 or self.b < 2:
            raise ValueError("a and b must be >= 2")
        if math.gcd(self.a, self.b) != 1:
            raise ValueError(f"gcd(a, b) != 1 for a={self.a}, b={self.b}")
        if (self.a * self.b) % self.p == 0 or math.gcd(self.a * self.b, self.p) != 1:
            raise ValueError("a*b must be coprime to p")

    @property
    def r(self) -> int:
        return self.p**self.r_exp

    @property
    def q(self) -> int:
        return self.p**self.q_exp

    @property
    def genus(self) -> int:
        return (self.a - 1) * (self.b - 1) // 2

    @property
    def s_size(self) -> int:
        return (self.a - 1) * (self.b - 1) * (self.q - 1)

    def describe(self) -> dict:
        return {
            "p": self.p,
            "r_exp": self.r_exp,
            "q_exp": self.q_exp,
            "a": self.a,
            "b": self.b,
            "genus": self.genus,
        }


def kappa(r: int, n: int, i: int) -> int:
    """Multiplicative order of r modulo n/gcd(n, i)."""
    if i % n == 0:
        raise ValueError("i must be nonzero mod n")
    return multiplicative_order(r, n // math.gcd(n, i))


def alpha_degree(r: int, q: int, e: int) -> int:
    """[F_r(alpha) : F_r] for alpha = g_q^e."""
    if q == 2:
        return 1
    return multiplicative_order(r, (q - 1) // math.gcd(e, q - 1))


@dataclass(frozen=True)
class OrbitS1:
    """An <r>-orbit on S'_n = (Z/n - 0) x F_q^x, by canonical representative."""

    n: int
    i: int
    alpha_exp: int
    size: int


@dataclass(frozen=True)
class Orbit:
    """An <r>-orbit on S, with its two projections."""

    i: int
    j: int
    alpha_exp: int
    size: int
    pa: OrbitS1
    pb: OrbitS1

    @property
    def nu_a(self) -> int:
        return self.size // self.pa.size

    @property
    def nu_b(self) -> int:
        return self.size // self.pb.size

    def describe(self) -> dict:
        return {
            "rep": [self.i, self.j, self.alpha_exp],
            "size": self.size,
            "pa_size": self.pa.size,
            "pb_size": self.pb.size,
            "nu_a": self.nu_a,
            "nu_b": self.nu_b,
        }


def _orbit_s1(n: int, i: int, e: int, r: int, qm: int) -> OrbitS1:
    """Canonical S'_n orbit of (i, e); qm = q - 1."""
    rep = (i, e)
    cur = rep
    size = 0
    r_inv = pow(r, -1, qm) if qm > 1 else 0
    while True:
        cur = (cur[0] * r % n, cur[1] * r_inv % qm if qm > 1 else 0)
        size += 1
        rep = min(rep, cur)
        if cur == (i, e):
            break
    return OrbitS1(n, rep[0], rep[1], size)


def enumerate_orbits(params: CurveParams, config: Optional[Config] = None) -> list[Orbit]:
    """All orbits of <r> on S, canonically ordered by least representative."""
    config = config or default_config()
    if params.s_size > config.enumeration_budget:
        raise BudgetExceeded(
            f"|S| = {params.s_size} exceeds enumeration budget {config.enumeration_budget}"
        )
    a, b, r, q = params.a, params.b, params.r, params.q
    qm = q - 1
    ra, rb = r % a, r % b
    r_inv = pow(r, -1, qm) if qm > 1 else 0
    seen: set[tuple[int, int, int]] = set()
    orbits = []
    for i in range(1, a):
        for j in range(1, b):
            for e in range(qm):
                if (i, j, e) in seen:
                    continue
                cur = (i, j, e)
                members = []
                while True:
                    members.append(cur)
                    cur = (cur[0] * ra % a, cur[1] * rb % b, cur[2] * r_inv % qm if qm > 1 else 0)
                    if cur == (i, j, e):
                        break
                seen.update(members)
                ci, cj, ce = min(members)
                size = len(members)
                expected = _lcm3(kappa(r, a, ci), kappa(r, b, cj), alpha_degree(r, q, ce))
                if size != expected:
                    raise AssertionError(f"orbit size {size} != lcm formula {expected}")
                orbits.append(
                    Orbit(ci, cj, ce, size, _orbit_s1(a, ci, ce, r, qm), _orbit_s1(b, cj, ce, r, qm))
                )
    orbits.sort(key=lambda o: (o.i, o.j, o.alpha_exp))
    return orbits


def _lcm3(x: int, y: int, z: int) -> int:
    return math.lcm(x, y, z)


# ----------------------------------------------------------------------------
# omega(o)
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaValue:
    """omega(o) with its evaluation certificate."""

    orbit: Orbit
    value: Optional[CycElt]  # None when unresolved
    method: str  # "lemma-power-residue" | "closed-form" | "direct-sum" | "mixed" | "unresolved"
    valuation: Fraction  # nu_p(omega(o)) / |o|, always available

    def contributes(self, r: int) -> Optional[bool]:
        """Does this orbit contribute to the rank, i.e. omega(o) = r^|o|?"""
        if self.valuation != 1:
            return False
        if self.value is None:
            return None
        return self.value == CycElt.integer(r**self.orbit.size)

    def describe(self) -> dict:
        d = self.orbit.describe()
        d["valuation"] = [self.valuation.numerator, self.valuation.denominator]
        d["method"] = self.method
        if self.value is not None:
            d["omega"] = {"conductor": self.value.m, "coeffs": list(self.value.c)}
        return d


def valuation_of_omega(params: CurveParams, o: Orbit) -> Fraction:
    """nu_p(omega(o))/|o| as the sum of the two Stickelberger fractions."""
    va = num_den(params.a, o.pa.i, params.p).as_fraction()
    vb = num_den(params.b, o.pb.i, params.p).as_fraction()
    return va + vb


def _lemma_power_residue_value(params: CurveParams, o: Orbit) -> Optional[CycElt]:
    """omega(o) = lam_a(alpha)^-1 lam_b(alpha)^-1 r^|o| under supersingular hypotheses.

    Requires p odd, a and b supersingular for p, and 4 nu_a | [F_r:F_p],
    4 nu_b | [F_r:F_p]; then <r> fixes i and j and everything is exponent
    arithmetic in F_r(alpha).
    """
    p, a, b = params.p, params.a, params.b
    if p == 2:
        return None
    nu_a, nu_b = supersingular_nu(a, p), supersingular_nu(b, p)
    if nu_a is None or nu_b is None:
        return None
    if params.r_exp % (4 * nu_a) or params.r_exp % (4 * nu_b):
        return None
    assert o.size == o.pa.size == o.pb.size
    card = params.r**o.size
    d = orbit_dlog(o.alpha_exp, params.q, card)
    root = zeta(a, -o.i * d) * zeta(b, -o.j * d)
    return root * CycElt.integer(params.r**o.size)


def _component_value(
    params: CurveParams, po: OrbitS1, tw: Tower, config: Config
) -> tuple[Optional[CycElt], str]:
    closed = orbit_gauss_closed_form(
        params.p, params.r_exp, params.q_exp, po.n, po.i, po.alpha_exp, po.size
    )
    if closed is not None:
        return closed, "closed-form"
    card = params.p ** (params.r_exp * po.size)
    if card <= config.field_budget:
        return (
            orbit_gauss(tw, params.r_exp, params.q_exp, po.n, po.i, po.alpha_exp, po.size),
            "direct-sum",
        )
    return None, "unresolved"


def omega(
    params: CurveParams,
    o: Orbit,
    tw: Optional[Tower] = None,
    config: Optional[Config] = None,
) -> OmegaValue:
    """Evaluate omega(o) exactly if any strategy applies."""
    config = config or default_config()
    tw = tw or tower(params.p, config=config)
    val = valuation_of_omega(params, o)
    lemma = _lemma_power_residue_value(params, o)
    if lemma is not None:
        return OmegaValue(o, lemma, "lemma-power-residue", val)
    va, meth_a = _component_value(params, o.pa, tw, config)
    vb, meth_b = _component_value(params, o.pb, tw, config)
    if va is None or vb is None:
        return OmegaValue(o, None, "unresolved", val)
    value = va**o.nu_a * vb**o.nu_b
    method = meth_a if meth_a == meth_b else "mixed"
    return OmegaValue(o, value, method, val)


def compute_omegas(
    params: CurveParams,
    orbits: Optional[list[Orbit]] = None,
    tw: Optional[Tower] = None,
    config: Optional[Config] = None,
) -> list[OmegaValue]:
    """omega(o) for every orbit, in canonical orbit order."""
    config = config or default_config()
    tw = tw or tower(params.p, config=config)
    if orbits is None:
        orbits = enumerate_orbits(params, config)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            return list(pool.map(lambda o: omega(params, o, tw, config), orbits))
    return [omega(params, o, tw, config) for o in orbits]


# ----------------------------------------------------------------------------
# the decomposition omega(o) = zeta_o * g_o^([F_r:F_p] |o| / theta)
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaDecomposition:
    root_of_unity: CycElt  # an ab-th root of unity
    weil_part: CycElt  # Weil integer of size p^theta
    exponent: int
    theta: int


def omega_decomposition(
    params: CurveParams,
    o: Orbit,
    tw: Optional[Tower] = None,
    config: Optional[Config] = None,
) -> OmegaDecomposition:
    """Split omega(o) into an ab-th root of unity and a p^theta-Weil integer power.

    theta = lcm(o_p(a), o_p(b)).  The base Gauss sums live over extensions of
    F_p of degree kappa_{p,*}(rep), so the computation never touches the big
    field F_{r^|o|}.
    """
    from .characters import MultChar, additive_char, gauss_sum

    config = config or default_config()
    tw = tw or tower(params.p, config=config)
    p, a, b = params.p, params.a, params.b
    theta = math.lcm(multiplicative_order(p, a), multiplicative_order(p, b))
    if (params.r_exp * o.size) % theta:
        raise ValueError(
            "decomposition exponent [F_r:F_p]|o|/theta is not integral for this orbit"
        )
    exponent = params.r_exp * o.size // theta
    kpa = multiplicative_order(p, a // math.gcd(a, o.i))
    kpb = multiplicative_order(p, b // math.gcd(b, o.j))
    fa, fb = tw.field(kpa), tw.field(kpb)
    g_a = gauss_sum(fa, MultChar(fa, a, o.i), additive_char(fa, fa.one()))
    g_b = gauss_sum(fb, MultChar(fb, b, o.j), additive_char(fb, fb.one()))
    d_a = orbit_dlog(o.alpha_exp, params.q, params.r**o.pa.size)
    d_b = orbit_dlog(o.alpha_exp, params.q, params.r**o.pb.size)
    root = zeta(a, -o.i * d_a * o.nu_a) * zeta(b, -o.j * d_b * o.nu_b)
    weil = g_a ** (theta // kpa) * g_b ** (theta // kpb)
    return OmegaDecomposition(root, weil, exponent, theta)
