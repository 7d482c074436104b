"""Arithmetic rank criteria: rank zero, lower bounds, exact full rank, simplicity.

Everything here is modular arithmetic on (a, b, p, q, r); no field elements
are built, so criteria apply equally to parameters like r = 3^40.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .ntheory import is_prime, multiplicative_order, supersingular_nu
from .orbits import CurveParams


def mult_order(p: int, n: int) -> int:
    """Least e >= 1 with p^e = 1 mod n."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    return multiplicative_order(p, n)


@dataclass(frozen=True)
class SupersingularWitness:
    n: int
    p: int
    is_supersingular: bool
    nu: Optional[int]  # least nu with p^nu = -1 mod n, when it exists


def supersingular(n: int, p: int) -> SupersingularWitness:
    nu = supersingular_nu(n, p)
    return SupersingularWitness(n, p, nu is not None, nu)


def satisfies_rank_zero_condition(a: int, b: int, p: int, cond: int) -> bool:
    """Does (a, b, p) satisfy the numbered rank-zero condition?

    (1) a*o_p(a) and b*o_p(b) coprime;
    (2) a*o_p(a) odd and b supersingular for p;
    (3) a supersingular for p and b*o_p(b) odd.
    """
    aa = a * mult_order(p, a)
    bb = b * mult_order(p, b)
    if cond == 1:
        return math.gcd(aa, bb) == 1
    if cond == 2:
        return aa % 2 == 1 and supersingular_nu(b, p) is not None
    if cond == 3:
        return supersingular_nu(a, p) is not None and bb % 2 == 1
    raise ValueError("condition must be 1, 2 or 3")


def rank_zero_criterion(a: int, b: int, p: int) -> Optional[int]:
    """The satisfied rank-zero condition, or None.

    The two supersingular conditions (2) and (3) are mutually exclusive and
    reported in preference to the coprimality condition (1), which they may
    overlap with.
    """
    for cond in (2, 3, 1):
        if satisfies_rank_zero_condition(a, b, p, cond):
            return cond
    return None


# ----------------------------------------------------------------------------
# rank bounds
# ----------------------------------------------------------------------------


def _ceil_of_bound(params: CurveParams) -> int:
    """ceil((1/log_p q) * ((q-1)/ab - (p sqrt(q) - 1)/(p-1))) computed exactly.

    For odd q-exponent, sqrt(q) is irrational; brackets of the form
    isqrt(q * 4^k) / 2^k tighten until the ceiling is unambiguous.
    """
    p, q, ab = params.p, params.q, params.a * params.b
    base = Fraction(q - 1, ab)
    if params.q_exp % 2 == 0:
        s = Fraction(p ** (params.q_exp // 2))
        x = (base - (p * s - 1) / Fraction(p - 1)) / params.q_exp
        return math.ceil(x)
    k = 8
    while True:
        lo = Fraction(math.isqrt(q * 4**k), 2**k)
        hi = lo + Fraction(1, 2**k)
        x_hi = (base - (p * lo - 1) / Fraction(p - 1)) / params.q_exp
        x_lo = (base - (p * hi - 1) / Fraction(p - 1)) / params.q_exp
        if math.ceil(x_lo) == math.ceil(x_hi):
            return math.ceil(x_lo)
        k += 8


@dataclass(frozen=True)
class RankBound:
    applicable: bool
    value: Optional[int]
    reason: str


def rank_lower_bound(params: CurveParams) -> RankBound:
    """(a-1)(b-1)ceil(...) <= rank, under the supersingular hypotheses."""
    p, a, b = params.p, params.a, params.b
    if p == 2:
        return RankBound(False, None, "requires odd p")
    nu_a, nu_b = supersingular_nu(a, p), supersingular_nu(b, p)
    if nu_a is None or nu_b is None:
        return RankBound(False, None, "a and b must both be supersingular for p")
    if params.r_exp % (4 * nu_a) or params.r_exp % (4 * nu_b):
        return RankBound(False, None, "[F_r:F_p] must be a multiple of 4*nu_a and 4*nu_b")
    raw = (a - 1) * (b - 1) * _ceil_of_bound(params)
    return RankBound(True, max(raw, 0), "supersingular lower bound")


def rank_exact_full(params: CurveParams) -> Optional[int]:
    """(a-1)(b-1)(q-1) when the full-rank hypotheses hold; None otherwise."""
    p, a, b = params.p, params.a, params.b
    if p == 2:
        return None
    nu_a, nu_b = supersingular_nu(a, p), supersingular_nu(b, p)
    if nu_a is None or nu_b is None:
        return None
    need = math.lcm(4 * nu_a, 4 * nu_b, a * b * (params.q - 1))
    if params.r_exp % need:
        return None
    return (a - 1) * (b - 1) * (params.q - 1)


def rank_upper_bound(params: CurveParams) -> int:
    return (params.a - 1) * (params.b - 1) * (params.q - 1)


def minimal_r_exponent(a: int, b: int, p: int, q_exp: int, full_rank: bool = False) -> Optional[int]:
    """Least [F_r:F_p] satisfying the lower-bound (or full-rank) hypotheses."""
    nu_a, nu_b = supersingular_nu(a, p), supersingular_nu(b, p)
    if p == 2 or nu_a is None or nu_b is None:
        return None
    need = math.lcm(4 * nu_a, 4 * nu_b)
    if full_rank:
        need = math.lcm(need, a * b * (p**q_exp - 1))
    return need


@dataclass(frozen=True)
class RankAssessment:
    lower: int
    upper: int
    exact: Optional[int]
    methods: tuple[str, ...]


def rank_assessment(params: CurveParams) -> RankAssessment:
    """Combine the criteria into bounds (and an exact value when forced)."""
    methods = []
    lower = 0
    upper = rank_upper_bound(params)
    exact = None
    crit = rank_zero_criterion(params.a, params.b, params.p)
    if crit is not None:
        exact = 0
        upper = 0
        methods.append(f"rank-zero criterion ({crit})")
    full = rank_exact_full(params)
    if full is not None:
        exact = full
        lower = full
        methods.append("full-rank criterion")
    lb = rank_lower_bound(params)
    if lb.applicable:
        lower = max(lower, lb.value)
        methods.append("supersingular lower bound")
    if not methods:
        methods.append("generic bounds only")
    if exact is not None and not lower <= exact <= upper:
        raise AssertionError("inconsistent rank bounds")
    return RankAssessment(lower, upper, exact, tuple(methods))


def simplicity(a: int, b: int) -> bool:
    """The Jacobian is simple iff both exponents are prime."""
    return is_prime(a) and is_prime(b)


# ----------------------------------------------------------------------------
# pair search
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class PairWitness:
    a: int
    b: int
    condition: int
    detail: str


def _odd_order_candidates(p: int, k_max: int, bound: int, primes_only: bool) -> list[int]:
    """Divisors a of p^k - 1 (k odd) with a * o_p(a) odd, up to the bound."""
    out = set()
    for k in range(1, k_max + 1, 2):
        n = p**k - 1
        for d in range(3, min(bound, n) + 1, 2):
            if n % d == 0 and mult_order(p, d) % 2 == 1:
                if not primes_only or is_prime(d):
                    out.add(d)
    return sorted(out)


def _supersingular_candidates(p: int, bound: int, primes_only: bool) -> list[int]:
    out = []
    for n in range(2, bound + 1):
        if math.gcd(n, p) != 1:
            continue
        if primes_only and not is_prime(n):
            continue
        if supersingular_nu(n, p) is not None:
            out.append(n)
    return out


def find_pairs(
    p: int,
    condition: str | int = "any",
    limit: int = 10,
    bound: int = 60,
    k_max: int = 5,
    primes_only: bool = False,
) -> list[PairWitness]:
    """Deterministic search for rank-zero pairs (a, b) for the prime p.

    Repunit-style odd divisors of p^k - 1 (k odd) supply the odd a*o_p(a)
    side; supersingular integers supply the other.  Every emitted pair is
    re-verified by rank_zero_criterion.  The search is bounded (and therefore
    incomplete): infinitude is a theorem, not an enumeration.
    """
    conditions = [1, 2, 3] if condition == "any" else [int(condition)]
    odd_side = _odd_order_candidates(p, k_max, bound, primes_only)
    ss_side = _supersingular_candidates(p, bound, primes_only)
    results: list[PairWitness] = []
    seen = set()

    def push(a, b, cond, detail):
        if (a, b) in seen:
            return
        if math.gcd(a, b) != 1 or a < 2 or b < 2:
            return
        if not satisfies_rank_zero_condition(a, b, p, cond):
            return
        canonical = rank_zero_criterion(a, b, p)
        if canonical is None:
            return
        seen.add((a, b))
        results.append(PairWitness(a, b, canonical, detail))

    for cond in conditions:
        if cond == 1:
            for a in odd_side:
                for b in odd_side:
                    if a != b and math.gcd(a * mult_order(p, a), b * mult_order(p, b)) == 1:
                        push(a, b, 1, f"o_p({a})={mult_order(p, a)}, o_p({b})={mult_order(p, b)}")
        elif cond == 2:
            for a in odd_side:
                for b in ss_side:
                    push(a, b, 2, f"a*o_p(a) odd, {b} supersingular")
        elif cond == 3:
            for a in ss_side:
                for b in odd_side:
                    push(a, b, 3, f"{a} supersingular, b*o_p(b) odd")
        else:
            raise ValueError("condition must be 1, 2, 3 or 'any'")
    results.sort(key=lambda w: (w.a * w.b, w.a, w.condition))
    return results[:limit]
