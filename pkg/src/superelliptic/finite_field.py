"""Finite fields F_{p^m} with tower-compatible generators.

Every field is built inside a :class:`Tower`, which fixes one coherent system
of fields F_{p^m} (m >= 1): the defining polynomial of degree m is the first
monic irreducible one, in a fixed deterministic ordering, whose root x is a
multiplicative generator and whose norms down the tower hit the generators
already chosen at the proper divisors of m.  Norm-compatibility,

    N_{F_{p^{md}} / F_{p^m}}(g_{md}) = g_m,

is exactly what makes discrete logarithms behave coherently under norm maps,
which the character machinery relies on throughout.  Choosing a different
admissible system (``variant > 0``) models a different coherent choice and
must leave all Galois-stable aggregates unchanged.

Elements are dense coefficient vectors over F_p modulo the defining
polynomial; exponents are arbitrary-precision integers.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional

import numpy as np

from .config import BudgetExceeded, Config, default_config
from .ntheory import element_order, factorize, is_prime

# ----------------------------------------------------------------------------
# dense polynomial arithmetic over F_p (little-endian int tuples)
# ----------------------------------------------------------------------------


def _ptrim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _pmul(u: tuple[int, ...], v: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not u or not v:
        return ()
    out = [0] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                out[i + j] += ui * vj
    return _ptrim([c % p for c in out])


def _pmod(u: tuple[int, ...], mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    # mod is monic
    m = len(mod) - 1
    r = list(u)
    for k in range(len(r) - 1, m - 1, -1):
        c = r[k] % p
        if c:
            off = k - m
            for j in range(m):
                r[off + j] = (r[off + j] - c * mod[j]) % p
        r[k] = 0
    return _ptrim([c % p for c in r[:m]])


def _pmulmod(u, v, mod, p):
    return _pmod(_pmul(u, v, p), mod, p)


def _ppowmod(u: tuple[int, ...], e: int, mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = _pmod(u, mod, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        e >>= 1
    return result


def _pgcd(u: tuple[int, ...], v: tuple[int, ...], p: int) -> tuple[int, ...]:
    while v:
        # make v monic before reducing
        inv = pow(v[-1], -1, p)
        vm = tuple(c * inv % p for c in v)
        u, v = v, _pmod(u, vm, p)
    return u


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    m = len(f) - 1
    x = (0, 1)
    # x^(p^m) == x mod f
    if _ppowmod(x, p**m, f, p) != _pmod(x, f, p):
        return False
    for ell, _ in factorize(m):
        xe = _ppowmod(x, p ** (m // ell), f, p)
        d = list(xe) + [0, 0]
        d[1] = (d[1] - 1) % p
        g = _pgcd(f, _ptrim(d), p)
        if len(g) - 1 > 0:
            return False
    return True


# ----------------------------------------------------------------------------
# towers and fields
# ----------------------------------------------------------------------------


class Tower:
    """A coherent system of finite fields over a fixed prime p.

    ``variant`` selects which admissible (polynomial, generator) pair is used
    at each level; variant 0 is the canonical choice and is cached globally.
    """

    def __init__(self, p: int, variant: int = 0, config: Optional[Config] = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if variant < 0:
            raise ValueError("variant must be >= 0")
        self.p = p
        self.variant = variant
        self.config = config or default_config()
        self._fields: dict[int, Field] = {}

    def field(self, m: int) -> "Field":
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if self.p**m > self.config.field_budget:
            raise BudgetExceeded(
                f"field with {self.p}^{m} elements exceeds budget {self.config.field_budget}"
            )
        if m not in self._fields:
            for d in sorted(d for d in range(1, m) if m % d == 0):
                self.field(d)
            self._fields[m] = self._build(m)
        return self._fields[m]

    def _build(self, m: int) -> "Field":
        p = self.p
        if m == 1:
            seen = 0
            for c in range(1, p):
                if element_order(c, p - 1, p) == p - 1:
                    if seen == self.variant:
                        return Field(self, 1, ((-c) % p, 1))
                    seen += 1
            raise RuntimeError(f"no primitive root variant {self.variant} mod {p}")
        n = p**m - 1
        subdegs = [d for d in range(1, m) if m % d == 0]
        seen = 0
        for code in range(p, p**m):
            coeffs = _digits(code, p, m)
            if coeffs[0] == 0:
                continue
            f = tuple(coeffs) + (1,)
            if not _is_irreducible(f, p):
                continue
            if element_order_poly((0, 1), n, f, p) != n:
                continue
            ok = True
            for d in subdegs:
                sub = self._fields[d]
                y = _ppowmod((0, 1), n // (p**d - 1), f, p)
                if _peval_poly(sub.modulus, y, f, p):
                    ok = False
                    break
            if ok:
                if seen == self.variant:
                    return Field(self, m, f)
                seen += 1
        raise RuntimeError(f"no compatible polynomial variant {self.variant} for p={p}, m={m}")


def _digits(code: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(code % p)
        code //= p
    return out


def _peval_poly(poly: tuple[int, ...], y: tuple[int, ...], mod: tuple[int, ...], p: int):
    """poly(y) mod (mod, p) by Horner, for poly with F_p coefficients."""
    acc: tuple[int, ...] = ()
    for c in reversed(poly):
        acc = _pmulmod(acc, y, mod, p)
        if c:
            acc = _padd(acc, (c,), p)
    return acc


def _padd(u: tuple[int, ...], v: tuple[int, ...], p: int) -> tuple[int, ...]:
    if len(u) < len(v):
        u, v = v, u
    out = list(u)
    for i, c in enumerate(v):
        out[i] = (out[i] + c) % p
    return _ptrim(out)


def element_order_poly(u: tuple[int, ...], group_order: int, mod, p) -> int:
    order = group_order
    for ell, _ in factorize(group_order):
        while order % ell == 0 and _ppowmod(u, order // ell, mod, p) == (1,):
            order //= ell
    return order


_towers: dict[tuple, Tower] = {}


def tower(p: int, variant: int = 0, config: Optional[Config] = None) -> Tower:
    cfg = config or default_config()
    key = (p, variant, cfg)
    if key not in _towers:
        _towers[key] = Tower(p, variant, cfg)
    return _towers[key]


class Field:
    """F_{p^m} = F_p[x]/(modulus), with x (or the root for m=1) as generator."""

    def __init__(self, tw: Tower, deg: int, modulus: tuple[int, ...]):
        self.tower = tw
        self.p = tw.p
        self.deg = deg
        self.modulus = modulus
        self.order = tw.p**deg
        self.mult_order = self.order - 1
        self._dlog_table: Optional[np.ndarray] = None
        self._powers: Optional[np.ndarray] = None
        self._trace_vec: Optional[tuple[int, ...]] = None
        self._pullbacks: dict[int, list[tuple[int, ...]]] = {}

    # --- element constructors -------------------------------------------------

    def elt(self, coeffs: Iterable[int]) -> "FieldElt":
        c = [int(v) % self.p for v in coeffs]
        if len(c) > self.deg:
            c = list(_pmod(tuple(c), self.modulus, self.p))
        c = c + [0] * (self.deg - len(c))
        return FieldElt(self, tuple(c))

    def zero(self) -> "FieldElt":
        return self.elt([])

    def one(self) -> "FieldElt":
        return self.elt([1])

    def gen(self) -> "FieldElt":
        if self.deg == 1:
            return self.elt([(-self.modulus[0]) % self.p])
        return self.elt([0, 1])

    def from_code(self, code: int) -> "FieldElt":
        return self.elt(_digits(code, self.p, self.deg))

    def elements(self):
        for code in range(self.order):
            yield self.from_code(code)

    # --- internals --------------------------------------------------------

    def _trace_vector(self) -> tuple[int, ...]:
        """t with Tr_{F/F_p}(sum c_k x^k) = sum t_k c_k."""
        if self._trace_vec is None:
            mf = frobenius_matrix(self)
            s = np.eye(self.deg, dtype=np.int64)
            acc = np.zeros((self.deg, self.deg), dtype=np.int64)
            for _ in range(self.deg):
                acc = (acc + s) % self.p
                s = (mf @ s) % self.p
            self._trace_vec = tuple(int(v) for v in acc[0, :])
        return self._trace_vec

    def __repr__(self):
        return f"F_{self.p}^{self.deg}" if self.deg > 1 else f"F_{self.p}"

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.deg == other.deg
            and self.modulus == other.modulus
            and self.tower is other.tower
        )

    def __hash__(self):
        return hash((self.p, self.deg, self.modulus, id(self.tower)))


class FieldElt:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    @property
    def code(self) -> int:
        c = 0
        for v in reversed(self.coeffs):
            c = c * self.field.p + v
        return c

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs)

    def _t(self) -> tuple[int, ...]:
        return _ptrim(list(self.coeffs))

    def _wrap(self, t: tuple[int, ...]) -> "FieldElt":
        return FieldElt(self.field, tuple(t) + (0,) * (self.field.deg - len(t)))

    def __add__(self, other: "FieldElt") -> "FieldElt":
        assert self.field == other.field
        return self._wrap(_padd(self._t(), other._t(), self.field.p))

    def __sub__(self, other: "FieldElt") -> "FieldElt":
        return self + (-other)

    def __neg__(self) -> "FieldElt":
        p = self.field.p
        return FieldElt(self.field, tuple((-c) % p for c in self.coeffs))

    def __mul__(self, other: "FieldElt") -> "FieldElt":
        assert self.field == other.field
        f = self.field
        return self._wrap(_pmulmod(self._t(), other._t(), f.modulus, f.p))

    def __pow__(self, e: int) -> "FieldElt":
        f = self.field
        if self.is_zero():
            if e <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return f.zero()
        e %= f.mult_order
        return self._wrap(_ppowmod(self._t(), e, f.modulus, f.p))

    def inverse(self) -> "FieldElt":
        if self.is_zero():
            raise ZeroDivisionError("inverting zero")
        return self ** (self.field.mult_order - 1)

    def __truediv__(self, other: "FieldElt") -> "FieldElt":
        return self * other.inverse()

    def __eq__(self, other):
        return (
            isinstance(other, FieldElt)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.deg, self.coeffs))

    def __repr__(self):
        return f"{list(self.coeffs)} in {self.field!r}"


# ----------------------------------------------------------------------------
# spec operations
# ----------------------------------------------------------------------------


def make_field(p: int, m: int, variant: int = 0, config: Optional[Config] = None) -> Field:
    """The canonical field with p^m elements (norm-compatible generator)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    return tower(p, variant, config).field(m)


def generator_order_check(field: Field, candidate: Optional[FieldElt] = None) -> bool:
    """True iff the (candidate or distinguished) generator has order |F|-1."""
    g = candidate if candidate is not None else field.gen()
    n = field.mult_order
    if n == 1:
        return not g.is_zero()
    if g.is_zero() or g**n != field.one():
        return False
    return all(g ** (n // ell) != field.one() for ell, _ in factorize(n))


def frobenius(x: FieldElt, t: int) -> FieldElt:
    """x^(p^t); negative t gives the inverse Frobenius."""
    m = x.field.deg
    return x ** (x.field.p ** (t % m)) if not x.is_zero() else x


def _subfield_check(field: Field, sub: Field):
    if sub.tower is not field.tower or field.deg % sub.deg != 0:
        raise ValueError(f"{sub!r} is not a subfield of {field!r} in this tower")


def _pullback_rows(field: Field, sub: Field) -> list[tuple[int, ...]]:
    """Rows L with L @ coords = sub-coordinates, for elements of the subfield."""
    if sub.deg not in field._pullbacks:
        p, d = field.p, sub.deg
        w = field.gen() ** ((field.order - 1) // (sub.order - 1))
        cols = []
        acc = field.one()
        for _ in range(d):
            cols.append(list(acc.coeffs))
            acc = acc * w
        # solve E c = y for c by Gauss-Jordan on E (deg x d), keep the transform
        E = [[cols[j][i] for j in range(d)] for i in range(field.deg)]
        L = [[1 if i == j else 0 for j in range(field.deg)] for i in range(field.deg)]
        row = 0
        pivots = []
        for col in range(d):
            piv = next(r for r in range(row, field.deg) if E[r][col] % p)
            E[row], E[piv] = E[piv], E[row]
            L[row], L[piv] = L[piv], L[row]
            inv = pow(E[row][col], -1, p)
            E[row] = [v * inv % p for v in E[row]]
            L[row] = [v * inv % p for v in L[row]]
            for r in range(field.deg):
                if r != row and E[r][col] % p:
                    f = E[r][col]
                    E[r] = [(a - f * b) % p for a, b in zip(E[r], E[row])]
                    L[r] = [(a - f * b) % p for a, b in zip(L[r], L[row])]
            pivots.append(row)
            row += 1
        field._pullbacks[sub.deg] = [tuple(L[r]) for r in pivots]
    return field._pullbacks[sub.deg]


def to_subfield(x: FieldElt, sub: Field) -> FieldElt:
    """Express x (which must lie in the subfield) in sub's own coordinates."""
    _subfield_check(x.field, sub)
    rows = _pullback_rows(x.field, sub)
    p = x.field.p
    c = [sum(r[k] * x.coeffs[k] for k in range(x.field.deg)) % p for r in rows]
    y = embed(sub.elt(c), x.field)
    if y != x:
        raise ValueError(f"{x!r} does not lie in {sub!r}")
    return sub.elt(c)


def embed(x: FieldElt, field: Field) -> FieldElt:
    """Image of x under the canonical embedding of its field into `field`."""
    _subfield_check(field, x.field)
    if x.field.deg == field.deg:
        return field.elt(x.coeffs)
    w = field.gen() ** ((field.order - 1) // (x.field.order - 1))
    acc = field.zero()
    for c in reversed(x.coeffs):
        acc = acc * w + field.elt([c])
    return acc


def trace(x: FieldElt, sub: Field) -> FieldElt:
    """Relative trace Tr_{F/sub}(x), returned as an element of sub."""
    _subfield_check(x.field, sub)
    steps = x.field.deg // sub.deg
    acc = x.field.zero()
    y = x
    for _ in range(steps):
        acc = acc + y
        y = y**sub.order if not y.is_zero() else y
    return to_subfield(acc, sub)


def norm(x: FieldElt, sub: Field) -> FieldElt:
    """Relative norm N_{F/sub}(x), returned as an element of sub."""
    _subfield_check(x.field, sub)
    if x.is_zero():
        return sub.zero()
    y = x ** ((x.field.order - 1) // (sub.order - 1))
    return to_subfield(y, sub)


def is_nth_power(x: FieldElt, n: int) -> bool:
    if x.is_zero():
        raise ValueError("is_nth_power is undefined at 0")
    d = math.gcd(n, x.field.mult_order)
    return x ** (x.field.mult_order // d) == x.field.one()


def discrete_log(x: FieldElt) -> int:
    """k in [0, |F^x|) with generator^k = x."""
    if x.is_zero():
        raise ValueError("discrete log of 0")
    field = x.field
    n = field.mult_order
    if n == 1:
        return 0
    if field.order <= field.tower.config.char_table_limit:
        return int(dlog_table(field)[x.code])
    # Pohlig-Hellman over the factored group order
    g = field.gen()
    residues, moduli = [], []
    for ell, e in factorize(n):
        pe = ell**e
        ge = g ** (n // pe)
        xe = x ** (n // pe)
        # digits of the dlog base ell
        gamma = ge ** (ell ** (e - 1))  # order ell
        baby = {}
        msz = math.isqrt(ell - 1) + 1
        step = field.one()
        for j in range(msz):
            baby[step.coeffs] = j
            step = step * gamma
        giant = gamma ** ((-msz) % ell)
        k = 0
        for i in range(e):
            h = (xe * ge ** ((-k) % pe)) ** (ell ** (e - 1 - i))
            cur, d = h, None
            for a in range(msz):
                if cur.coeffs in baby:
                    d = a * msz + baby[cur.coeffs]
                    break
                cur = cur * giant
            if d is None:
                raise RuntimeError("BSGS failure (element outside subgroup?)")
            k += d % ell * ell**i
        residues.append(k)
        moduli.append(pe)
    k = residues[0] % moduli[0]
    m = moduli[0]
    for r2, m2 in zip(residues[1:], moduli[1:]):
        inv = pow(m, -1, m2)
        k = (k + (r2 - k) * inv % m2 * m) % (m * m2)
        m *= m2
    return k


# ----------------------------------------------------------------------------
# bulk (numpy) tables for character sums and the point-count oracle
# ----------------------------------------------------------------------------


def mult_matrix(field: Field, h: FieldElt) -> np.ndarray:
    """Matrix (deg x deg, mod p) of multiplication by h on coefficient vectors."""
    cols = []
    acc = h
    x = field.gen() if field.deg > 1 else None
    basis = field.one()
    for _ in range(field.deg):
        prod = basis * h
        cols.append(prod.coeffs)
        if x is not None:
            basis = basis * x
    return np.array(cols, dtype=np.int64).T % field.p


def frobenius_matrix(field: Field) -> np.ndarray:
    cols = []
    basis = field.one()
    x = field.gen() if field.deg > 1 else None
    for _ in range(field.deg):
        cols.append((basis**field.p).coeffs)
        if x is not None:
            basis = basis * x
    return np.array(cols, dtype=np.int64).T % field.p


def power_projection(field: Field, proj: np.ndarray, block: int = 1 << 13) -> np.ndarray:
    """proj @ coeffs(g^k) mod p for k = 0 .. |F^x|-1, shape (n, s).

    Enumerates the cyclic group in blocks: one schoolbook pass builds the
    first block, then each next block is the previous one times g^block.
    """
    n = field.mult_order
    p = field.p
    proj = np.asarray(proj, dtype=np.int64) % p
    s = proj.shape[0]
    out = np.empty((n, s), dtype=np.int64)
    block = min(block, n)
    rows = np.empty((block, field.deg), dtype=np.int64)
    acc = field.one()
    g = field.gen()
    for j in range(block):
        rows[j, :] = acc.coeffs
        acc = acc * g
    step_mat = mult_matrix(field, field.gen() ** block).T
    pos = 0
    cur = rows
    while pos < n:
        take = min(block, n - pos)
        out[pos : pos + take, :] = (cur[:take] @ proj.T) % p
        pos += take
        if pos < n:
            cur = (cur @ step_mat) % p
    return out


def power_traces(field: Field) -> np.ndarray:
    """Tr_{F/F_p}(g^k) for k = 0 .. |F^x|-1 (cached; int8-packed when p < 128)."""
    if field._powers is not None:
        return field._powers
    t = np.array([field._trace_vector()], dtype=np.int64)
    arr = power_projection(field, t)[:, 0]
    if field.p < 128:
        arr = arr.astype(np.int8)
    field._powers = arr
    return arr


def dlog_table(field: Field) -> np.ndarray:
    """code -> discrete log, for fields within the table budget."""
    if field._dlog_table is not None:
        return field._dlog_table
    if field.order > field.tower.config.char_table_limit:
        raise BudgetExceeded(f"dlog table for {field!r} exceeds the table limit")
    weights = np.array([[field.p**k for k in range(field.deg)]], dtype=np.int64)
    codes = power_projection(field, np.eye(field.deg, dtype=np.int64))
    codes = codes @ weights.T[:, 0]
    table = np.full(field.order, -1, dtype=np.int64)
    table[codes] = np.arange(field.mult_order, dtype=np.int64)
    field._dlog_table = table
    return table
