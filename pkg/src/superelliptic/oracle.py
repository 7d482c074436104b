"""Independent recovery of L(J, T) from point counts of x^a + y^b = beta^q - beta.

This module never touches characters, orbits or cyclotomic integers: it counts
points.  With F = F_{r^m}, N(w) = #{(x, y) : x^a + y^b = w} and
Fib(w) = #{beta in F : beta^q - beta = w}, the m-th log coefficient is

    T_m = sum_{beta in F^x} (r^m - N(beta^q - beta))
        = (r^m - 1) r^m + N(0) - sum_w Fib(w) N(w).

beta -> beta^q - beta is F_p-linear with kernel F cap F_q, so Fib is the
constant |F cap F_q| on an index-|F cap F_q| subspace Im.  Writing label(w)
for the class of w in F/Im (a short linear functional computed by Gaussian
elimination mod p), the lattice sum collapses to

    sum_w Fib(w) N(w) = |F cap F_q| * sum_c A_c B_{-c},

where A_c counts x with label(x^a) = c and B_c counts y with label(y^b) = c.
Both counts come from one vectorized sweep of the cyclic group F^x in
generator-power order, all in exact integer arithmetic.  Exponentiating the
log series (Newton's identity) then yields the L-polynomial; when only half
the coefficients are affordable, the functional equation completes the rest.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from .config import BudgetExceeded, Config, default_config
from .finite_field import Field, FieldElt, Tower, dlog_table, frobenius_matrix, power_projection, tower
from .lfunction import LPolynomial, functional_equation_sign
from .orbits import CurveParams


# ----------------------------------------------------------------------------
# direct per-curve counting (small fields; used as the oracle's own oracle)
# ----------------------------------------------------------------------------


def count_points(beta: FieldElt, params: CurveParams) -> int:
    """|X_beta(F)| = 1 + #{(x, y) in F^2 : x^a + y^b = beta^q - beta}."""
    field = beta.field
    if field.order > field.tower.config.transform_budget:
        raise BudgetExceeded("point count field exceeds the transform budget")
    c = beta**params.q - beta
    count = 1  # the unique point at infinity
    n = field.mult_order
    da = math.gcd(params.a, n)
    db = math.gcd(params.b, n)
    table = dlog_table(field)
    c_code = c.code
    # x = 0 row: y^b = c
    count += _nth_root_count(c_code, db, n, table)
    powers = power_projection(field, np.eye(field.deg, dtype=np.int64))
    weights = np.array([field.p**k for k in range(field.deg)], dtype=np.int64)
    codes = powers @ weights
    for k in range(n):
        # x = g^k: count y with y^b = c - x^a
        xa = codes[k * params.a % n]
        rhs = (c - field.from_code(int(xa))).code
        count += _nth_root_count(int(rhs), db, n, table)
    return count


def _nth_root_count(code: int, d: int, n: int, table: np.ndarray) -> int:
    if code == 0:
        return 1
    return d if table[code] % d == 0 else 0


# ----------------------------------------------------------------------------
# trace sums
# ----------------------------------------------------------------------------


def _artin_schreier_labels(field: Field, q_exp: int) -> tuple[np.ndarray, int]:
    """Projection matrix onto F / Im(beta -> beta^q - beta), and |F cap F_q|.

    Rows span the left null space of the matrix of the map, so label(w) = 0
    exactly on the image subspace.
    """
    p, d = field.p, field.deg
    frob = frobenius_matrix(field)
    phi = np.eye(d, dtype=np.int64)
    for _ in range(q_exp):
        phi = (phi @ frob) % p
    for k in range(d):
        phi[k, k] = (phi[k, k] - 1) % p
    # left null space of phi: row-reduce [phi | I]; zero rows of the left block
    # give rows y of the transform with y @ phi = 0
    mat = [[int(v) for v in row] for row in phi]
    aug = [row + [1 if i == j else 0 for j in range(d)] for i, row in enumerate(mat)]
    pivot_cols: list[int] = []
    row = 0
    for col in range(d):
        piv = next((r2 for r2 in range(row, d) if aug[r2][col] % p), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = pow(aug[row][col], -1, p)
        aug[row] = [v * inv % p for v in aug[row]]
        for r2 in range(d):
            if r2 != row and aug[r2][col] % p:
                f = aug[r2][col]
                aug[r2] = [(x - f * y) % p for x, y in zip(aug[r2], aug[row])]
        pivot_cols.append(col)
        row += 1
    null_rows = [aug[r2][d:] for r2 in range(row, d)]
    s = len(null_rows)
    assert p**s == p ** math.gcd(q_exp, d), "Artin-Schreier kernel has wrong size"
    proj = np.array(null_rows, dtype=np.int64) if s else np.zeros((0, d), dtype=np.int64)
    return proj, p**s


def trace_sums(
    params: CurveParams,
    m_max: int,
    tw: Optional[Tower] = None,
    config: Optional[Config] = None,
) -> list[int]:
    """[T_1, ..., T_m_max] with T_m = sum over beta in F_{r^m}^x of A_J(beta, m)."""
    config = config or default_config()
    tw = tw or tower(params.p, config=config)
    return [_trace_sum_single(params, m, tw, config) for m in range(1, m_max + 1)]


def _trace_sum_single(params: CurveParams, m: int, tw: Tower, config: Config) -> int:
    p = params.p
    card = params.r**m
    if card > config.transform_budget:
        raise BudgetExceeded(f"r^{m} = {card} exceeds the transform budget")
    field = tw.field(params.r_exp * m)
    n = card - 1
    proj, kernel_size = _artin_schreier_labels(field, params.q_exp)
    s_dim = proj.shape[0]
    label_space = p**s_dim
    if s_dim:
        digits = power_projection(field, proj)
        weights = np.array([p**k for k in range(s_dim)], dtype=np.int64)
        labels = digits @ weights
    else:
        labels = np.zeros(n, dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    a_counts = np.bincount(labels[idx * params.a % n], minlength=label_space)
    b_counts = np.bincount(labels[idx * params.b % n], minlength=label_space)
    a_counts[0] += 1  # x = 0
    b_counts[0] += 1
    neg = _negation_permutation(p, s_dim)
    lattice_sum = int(np.dot(a_counts, b_counts[neg]))
    n_zero = _diagonal_count(params, n, p)
    return (card - 1) * card + n_zero - kernel_size * lattice_sum


def _negation_permutation(p: int, s_dim: int) -> np.ndarray:
    """Permutation of base-p digit codes induced by w -> -w."""
    size = p**s_dim
    out = np.empty(size, dtype=np.int64)
    for c in range(size):
        digits, v = c, 0
        for k in range(s_dim):
            v += ((p - digits % p) % p) * p**k
            digits //= p
        out[c] = v
    return out


def _diagonal_count(params: CurveParams, n: int, p: int) -> int:
    """N(0) = #{(x, y) : x^a + y^b = 0} by index arithmetic on the cyclic group."""
    da, db = math.gcd(params.a, n), math.gcd(params.b, n)
    t = n // 2 if p != 2 else 0  # dlog(-1)
    g0 = math.gcd(db, da)
    pairs = n * g0 if t % g0 == 0 else 0
    return 1 + pairs


# ----------------------------------------------------------------------------
# exponentiating the log series
# ----------------------------------------------------------------------------


def l_from_counts(
    params: CurveParams,
    m_max: Optional[int] = None,
    tw: Optional[Tower] = None,
    config: Optional[Config] = None,
    trace_data: Optional[Sequence[int]] = None,
) -> LPolynomial:
    """L(J, T) from trace sums; uses the functional equation when m_max < deg.

    log L = sum_m T_m t^m / m turns into the Newton recurrence
    k c_k = sum_i T_i c_{k-i}; every division must be exact.  If m_max is at
    least ceil(deg/2) + 1 but below deg, the palindromic functional equation
    supplies the remaining coefficients after the sign w is read off the
    computed half.
    """
    deg = params.s_size
    if m_max is None:
        m_max = deg
    if m_max < (deg + 1) // 2 + 1 and m_max < deg:
        raise ValueError("need at least ceil(deg/2)+1 trace sums to complete L")
    if trace_data is None:
        trace_data = trace_sums(params, m_max, tw, config)
    coeffs = [1]
    for k in range(1, m_max + 1):
        acc = sum(trace_data[i - 1] * coeffs[k - i] for i in range(1, k + 1))
        if acc % k:
            raise AssertionError(f"non-integral L coefficient at degree {k}")
        coeffs.append(acc // k)
    if m_max >= deg:
        lpoly = LPolynomial(tuple(coeffs[: deg + 1]), params.r)
        functional_equation_sign(lpoly)  # hard consistency check
        return lpoly
    return _complete_by_functional_equation(coeffs, deg, params.r)


def _complete_by_functional_equation(half: list[int], deg: int, r: int) -> LPolynomial:
    """Fill c_k for k > m_max from c_{deg-k} = w r^(deg-2k) c_k."""
    m_max = len(half) - 1
    w = None
    for k in range(deg - m_max, m_max + 1):
        # c_{deg-k} known (deg-k <= m_max) and c_k known
        lhs, rhs = half[deg - k] * r ** (2 * k - deg), half[k]
        if 2 * k >= deg and rhs != 0:
            cand = lhs // rhs if rhs and lhs % rhs == 0 else None
            if cand not in (1, -1):
                raise AssertionError("functional equation violated on the computed half")
            if w is not None and w != cand:
                raise AssertionError("inconsistent functional-equation sign")
            w = cand
    if w is None:
        raise BudgetExceeded(
            "central coefficients all vanish: more trace sums needed to fix the sign"
        )
    full = list(half) + [0] * (deg - m_max)
    for k in range(m_max + 1, deg + 1):
        src = deg - k
        val = w * half[src] * r ** (deg - 2 * src)
        full[k] = val
    # cross-check overlap region
    for k in range(deg - m_max, m_max + 1):
        if full[deg - k] * r ** (2 * k) != w * r**deg * full[k]:
            raise AssertionError("functional-equation completion failed consistency")
    return LPolynomial(tuple(full), r)


# ----------------------------------------------------------------------------
# identity checks against the character/orbit pipeline
# ----------------------------------------------------------------------------


def char_identity_check(params: CurveParams, m: int, config: Optional[Config] = None) -> bool:
    """T_m == -sum over alpha, (lambda_1, lambda_2) of g(lambda_1) g(lambda_2)."""
    from .characters import MultChar, additive_char, gauss_sum
    from .cyclotomic import CycElt

    config = config or default_config()
    tw = tower(params.p, config=config)
    t_m = _trace_sum_single(params, m, tw, config)
    field = tw.field(params.r_exp * m)
    n = field.mult_order
    total = CycElt.zero()
    # alpha runs over (F cap F_q)^x: the cyclic subgroup of order gcd(q-1, n)
    sub = math.gcd(params.q - 1, n)
    da, db = math.gcd(params.a, n), math.gcd(params.b, n)
    for k in range(sub):
        alpha = field.gen() ** (k * (n // sub))
        psi = additive_char(field, alpha)
        for i in range(1, da):
            g1 = gauss_sum(field, MultChar(field, da, i), psi)
            for j in range(1, db):
                g2 = gauss_sum(field, MultChar(field, db, j), psi)
                total = total + g1 * g2
    rhs = (-total).is_rational_integer()
    return rhs is not None and rhs == t_m


def orbit_identity_check(params: CurveParams, m: int, config: Optional[Config] = None) -> bool:
    """T_m == -sum over orbits with |o| dividing m of |o| omega(o)^(m/|o|)."""
    from .cyclotomic import CycElt
    from .orbits import compute_omegas

    config = config or default_config()
    tw = tower(params.p, config=config)
    t_m = _trace_sum_single(params, m, tw, config)
    total = CycElt.zero()
    for om in compute_omegas(params, tw=tw, config=config):
        if m % om.orbit.size == 0:
            if om.value is None:
                raise UnresolvedForIdentity(om.orbit)
            total = total + om.orbit.size * om.value ** (m // om.orbit.size)
    rhs = (-total).is_rational_integer()
    return rhs is not None and rhs == t_m


class UnresolvedForIdentity(RuntimeError):
    def __init__(self, orbit):
        self.orbit = orbit
        super().__init__("orbit required for the identity check is unresolved")
