"""Brute-force oracles shared by the test suite.

These deliberately avoid the library's fast paths: Gauss sums by literal
summation over field elements, trace sums by triple loops over (beta, x, y),
orbit sizes by direct iteration of the group action.  Expected values frozen
into tests were produced by these functions.
"""

from __future__ import annotations

from superelliptic.cyclotomic import CycElt
from superelliptic.finite_field import Field, discrete_log, trace
from superelliptic.orbits import CurveParams


def brute_gauss_sum(field: Field, chi, psi) -> CycElt:
    total = CycElt.zero()
    for code in range(1, field.order):
        x = field.from_code(code)
        total = total + chi.value(x) * psi.value(x)
    return -total


def brute_trace_sum(params: CurveParams, m: int, tw) -> int:
    field = tw.field(params.r_exp * m)
    total = 0
    for bcode in range(1, field.order):
        beta = field.from_code(bcode)
        c = beta**params.q - beta
        affine = 0
        for xc in range(field.order):
            lhs = field.from_code(xc) ** params.a
            for yc in range(field.order):
                if lhs + field.from_code(yc) ** params.b == c:
                    affine += 1
        total += field.order - affine
    return total


def brute_orbit_partition(params: CurveParams) -> list[list[tuple[int, int, int]]]:
    a, b, r, q = params.a, params.b, params.r, params.q
    qm = q - 1
    r_inv = pow(r, -1, qm) if qm > 1 else 0
    seen = set()
    orbits = []
    for i in range(1, a):
        for j in range(1, b):
            for e in range(qm):
                if (i, j, e) in seen:
                    continue
                cur = (i, j, e)
                members = []
                while cur not in members:
                    members.append(cur)
                    cur = (cur[0] * r % a, cur[1] * r % b, cur[2] * r_inv % qm if qm > 1 else 0)
                seen.update(members)
                orbits.append(members)
    return orbits


def nth_powers(field: Field, n: int) -> set[int]:
    return {(field.from_code(c) ** n).code for c in range(1, field.order)}


def element_trace_zero(field: Field, sub: Field):
    return [
        field.from_code(c)
        for c in range(1, field.order)
        if trace(field.from_code(c), sub).is_zero()
    ]
