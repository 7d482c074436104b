"""Exact arithmetic in Z[zeta_M], the value ring for characters and Gauss sums.

Elements are stored in the power basis 1, z, ..., z^(phi(M)-1) reduced modulo
the M-th cyclotomic polynomial, so equality is plain coefficient equality at a
common conductor.  Coefficients are python ints (no overflow, no rounding).
Binary operations lift both operands to the lcm of their conductors; results
are not re-compressed automatically (see :meth:`CycElt.compress`).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .ntheory import divisors, euler_phi, moebius


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - 1, len(den) - 2, -1):
        c = num[k]
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        c //= lead
        q[k - len(den) + 1] = c
        if c:
            for j, d in enumerate(den):
                num[k - len(den) + 1 + j] -= c * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Phi_m as an integer coefficient tuple (Moebius product of x^d - 1)."""
    num = [1]
    den = [1]
    for d in divisors(m):
        mu = moebius(m // d)
        if mu == 0:
            continue
        f = [0] * (d + 1)
        f[0], f[d] = -1, 1
        if mu == 1:
            num = _polymul(num, f)
        else:
            den = _polymul(den, f)
    return tuple(_poly_div_exact(num, den))


def _polymul(u: list[int], v: list[int]) -> list[int]:
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] += a * b
    return out


@lru_cache(maxsize=None)
def _power_reduction(m: int, e: int) -> tuple[int, ...]:
    """z^e reduced mod Phi_m, as a length-phi(m) coefficient tuple."""
    phi = euler_phi(m)
    e %= m
    if e < phi:
        out = [0] * phi
        out[e] = 1
        return tuple(out)
    mod = cyclotomic_polynomial(m)
    # z^e = z * z^(e-1)
    prev = list(_power_reduction(m, e - 1))
    shifted = [0] + prev
    if shifted[phi]:
        c = shifted[phi]
        for j in range(phi):
            shifted[j] -= c * mod[j]
    return tuple(shifted[:phi])


@dataclass(frozen=True)
class ComplexApprox:
    """A complex value with a rigorous bound on its distance from the truth."""

    real: float
    imag: float
    err: float

    def modulus(self) -> float:
        return math.hypot(self.real, self.imag)

    def close_to(self, z: complex, tol: float = 0.0) -> bool:
        return abs(complex(self.real, self.imag) - z) <= self.err + tol


class CycElt:
    """An element of Z[zeta_M] in reduced power-basis form."""

    __slots__ = ("m", "c")

    def __init__(self, m: int, coeffs):
        phi = euler_phi(m)
        c = list(coeffs)
        if len(c) > phi:
            c = _reduce_mod_cyclotomic(m, c)
        self.m = m
        self.c = tuple(c) + (0,) * (phi - len(c))

    # --- constructors -------------------------------------------------------

    @staticmethod
    def zero(m: int = 1) -> "CycElt":
        return CycElt(m, [])

    @staticmethod
    def integer(n: int, m: int = 1) -> "CycElt":
        return CycElt(m, [n])

    @staticmethod
    def from_exponents(m: int, pairs) -> "CycElt":
        """sum of coeff * zeta_m^exp over (exp, coeff) pairs."""
        raw = [0] * m
        for e, v in pairs:
            raw[e % m] += v
        return CycElt(m, raw)

    # --- structure ----------------------------------------------------------

    def lift(self, m2: int) -> "CycElt":
        if m2 == self.m:
            return self
        if m2 % self.m:
            raise ValueError(f"cannot lift conductor {self.m} into {m2}")
        k = m2 // self.m
        return CycElt.from_exponents(m2, ((i * k, v) for i, v in enumerate(self.c) if v))

    def galois(self, j: int) -> "CycElt":
        """Image under zeta_m -> zeta_m^j (j must be prime to m)."""
        if math.gcd(j, self.m) != 1:
            raise ValueError("galois exponent must be prime to the conductor")
        return CycElt.from_exponents(self.m, ((i * j, v) for i, v in enumerate(self.c) if v))

    def conjugate(self) -> "CycElt":
        return self.galois(-1 % self.m) if self.m > 1 else self

    def compress(self) -> "CycElt":
        """Rewrite at the smallest conductor containing the value."""
        for d in divisors(self.m):
            if d == self.m:
                break
            ok = all(self.galois(j) == self for j in range(1, self.m) if
                     math.gcd(j, self.m) == 1 and j % d == 1 % max(d, 1))
            if ok:
                # express in Q(zeta_d): solve by matching against the lift basis
                target = _downcast(self, d)
                if target is not None:
                    return target
        return self

    def is_rational_integer(self) -> Optional[int]:
        if any(self.c[1:]):
            return None
        return self.c[0]

    def is_zero(self) -> bool:
        return not any(self.c)

    # --- ring operations ------------------------------------------------------

    def _pair(self, other: "CycElt"):
        m = self.m * other.m // math.gcd(self.m, other.m)
        return self.lift(m), other.lift(m)

    def __add__(self, other: Union["CycElt", int]) -> "CycElt":
        other = _coerce(other)
        a, b = self._pair(other)
        return CycElt(a.m, [x + y for x, y in zip(a.c, b.c)])

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other: Union["CycElt", int]) -> "CycElt":
        other = _coerce(other)
        a, b = self._pair(other)
        return CycElt(a.m, [x - y for x, y in zip(a.c, b.c)])

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __neg__(self) -> "CycElt":
        return CycElt(self.m, [-x for x in self.c])

    def __mul__(self, other: Union["CycElt", int]) -> "CycElt":
        if isinstance(other, int):
            return CycElt(self.m, [other * x for x in self.c])
        a, b = self._pair(other)
        if a.is_zero() or b.is_zero():
            return CycElt.zero(a.m)
        return CycElt(a.m, _polymul(list(a.c), list(b.c)))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int) -> "CycElt":
        if e < 0:
            raise ValueError("negative powers are not defined in Z[zeta]")
        result = CycElt.integer(1, self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_rational_integer() == other
        if not isinstance(other, CycElt):
            return NotImplemented
        a, b = self._pair(other)
        return a.c == b.c

    def __hash__(self):
        v = self.compress()
        return hash((v.m, v.c))

    def __repr__(self):
        terms = [f"{v}*z{self.m}^{i}" for i, v in enumerate(self.c) if v]
        return " + ".join(terms) if terms else "0"

    # --- complex embeddings -----------------------------------------------------

    def embed(self, j: int = 1) -> ComplexApprox:
        """Float image under zeta_m -> exp(2*pi*i*j/m), with an error bound."""
        if math.gcd(j, self.m) != 1:
            raise ValueError("embedding index must be prime to the conductor")
        total = 0j
        abssum = 0.0
        for i, v in enumerate(self.c):
            if v:
                total += v * cmath.exp(2j * cmath.pi * (i * j % self.m) / self.m)
                abssum += abs(v)
        # each root of unity is exact to a few ulp; 8 ulp/term is a safe envelope
        err = abssum * 8 * 2.3e-16
        return ComplexApprox(total.real, total.imag, err)

    def embed_mp(self, j: int = 1, prec: int = 80):
        """High-precision embedding (mpmath), for checks near tolerance."""
        import mpmath

        with mpmath.workprec(prec):
            z = mpmath.mpc(0)
            for i, v in enumerate(self.c):
                if v:
                    z += v * mpmath.expjpi(mpmath.mpf(2 * (i * j % self.m)) / self.m)
            return complex(z)


def _coerce(v) -> CycElt:
    if isinstance(v, CycElt):
        return v
    if isinstance(v, int):
        return CycElt.integer(v)
    raise TypeError(f"cannot coerce {type(v)} into Z[zeta]")


def _reduce_mod_cyclotomic(m: int, c: list[int]) -> list[int]:
    phi = euler_phi(m)
    mod = cyclotomic_polynomial(m)
    out = list(c) + [0] * max(0, phi - len(c))
    for k in range(len(out) - 1, phi - 1, -1):
        v = out[k]
        if v:
            off = k - phi
            for j in range(phi):
                out[off + j] -= v * mod[j]
        out[k] = 0
    return out[:phi]


def _downcast(x: CycElt, d: int) -> Optional[CycElt]:
    """Rewrite x at conductor d | m, or None if the coefficients do not drop."""
    k = x.m // d
    phi_d = euler_phi(d)
    # solve sum_j a_j * lift(z_d^j) = x by matching reduced coordinates
    basis = [CycElt.from_exponents(x.m, [(j * k, 1)]) for j in range(phi_d)]
    # Gaussian elimination over Q would be overkill: the lift of the power
    # basis of Q(zeta_d) is echelon after reordering, so solve greedily.
    import fractions

    rows = [[fractions.Fraction(v) for v in b.c] for b in basis]
    target = [fractions.Fraction(v) for v in x.c]
    coeffs = [fractions.Fraction(0)] * phi_d
    used = [False] * phi_d
    for col in range(len(target) - 1, -1, -1):
        if target[col] == 0:
            continue
        pivot = None
        for i in range(phi_d):
            if not used[i] and rows[i][col] != 0 and all(
                rows[i][c2] == 0 for c2 in range(col + 1, len(target))
            ):
                pivot = i
                break
        if pivot is None:
            return None
        f = target[col] / rows[pivot][col]
        coeffs[pivot] = f
        used[pivot] = True
        for c2 in range(len(target)):
            target[c2] -= f * rows[pivot][c2]
    if any(target):
        return None
    if any(f.denominator != 1 for f in coeffs):
        return None
    return CycElt(d, [int(f) for f in coeffs])


# ----------------------------------------------------------------------------
# spec-level helpers
# ----------------------------------------------------------------------------


def zeta(m: int, k: int = 1) -> CycElt:
    """zeta_m^k in reduced form."""
    if m < 1:
        raise ValueError("conductor must be positive")
    return CycElt.from_exponents(m, [(k, 1)])


def arith(x: CycElt, y: CycElt, op: str) -> CycElt:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")
