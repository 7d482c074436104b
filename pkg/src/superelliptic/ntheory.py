"""Elementary number theory helpers shared across the package.

All functions are deterministic; primality uses a fixed Miller-Rabin witness
set that is exact below 3.3e24, far beyond any parameter this package meets.
"""

from __future__ import annotations

import math
from functools import lru_cache

# exact for n < 3,317,044,064,679,887,385,961,981
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, as ((p, e), ...)."""
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 5
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += 2 if f % 6 == 5 else 4
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def moebius(n: int) -> int:
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def multiplicative_order(x: int, n: int) -> int:
    """Least e >= 1 with x^e = 1 mod n.  Order modulo 1 is 1."""
    if n == 1:
        return 1
    x %= n
    if math.gcd(x, n) != 1:
        raise ValueError(f"gcd({x}, {n}) != 1: no multiplicative order")
    # start from the group exponent's divisor lattice: order divides phi(n)
    order = euler_phi(n)
    for p, _ in factorize(order):
        while order % p == 0 and pow(x, order // p, n) == 1:
            order //= p
    return order


def element_order(x: int, group_order: int, n: int) -> int:
    """Order of x mod n given a known multiple of it (the group order)."""
    order = group_order
    for p, _ in factorize(group_order):
        while order % p == 0 and pow(x, order // p, n) == 1:
            order //= p
    return order


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x mod m1*m2 with x = r1 mod m1 and x = r2 mod m2 (coprime moduli)."""
    inv = pow(m1, -1, m2)
    return (r1 + (r2 - r1) * inv % m2 * m1) % (m1 * m2)


def supersingular_nu(n: int, p: int) -> int | None:
    """Least nu >= 1 with p^nu = -1 mod n, or None if no power of p works."""
    if n == 1:
        return 1
    if math.gcd(p, n) != 1:
        raise ValueError(f"gcd({p}, {n}) != 1")
    if n == 2:
        return 1
    o = multiplicative_order(p, n)
    if o % 2 == 0 and pow(p, o // 2, n) == n - 1:
        return o // 2
    return None
