"""Exact L-functions, ranks and BSD invariants of superelliptic Jacobians.

The package studies the Jacobian J of the curve y^b + x^a = t^q - t over the
rational function field F_r(t) (p = char, r and q powers of p, gcd(ab, p) =
gcd(a, b) = 1).  Everything arithmetic is exact: finite fields with
norm-compatible generator towers, cyclotomic integers, Gauss sums, the
L-polynomial and its special value, together with an independent point-count
oracle that recovers L(J, T) from nothing but curve counts.
"""

from .config import BudgetExceeded, Config, default_config
from .cyclotomic import ComplexApprox, CycElt, zeta
from .finite_field import Field, FieldElt, Tower, make_field, tower
from .orbits import CurveParams, Orbit, OmegaValue, enumerate_orbits, compute_omegas, omega
from .lfunction import LPolynomial, SpecialValue, analytic_rank, l_polynomial, special_value
from .oracle import l_from_counts, trace_sums
from .geometry import HeightData, SncFiber, bad_places, conductor_degree, genus, height, snc_special_fiber, tamagawa
from .criteria import (
    RankAssessment,
    SupersingularWitness,
    find_pairs,
    rank_assessment,
    rank_exact_full,
    rank_lower_bound,
    rank_zero_criterion,
    simplicity,
    supersingular,
)
from .bsd import BsdReport, bsd_combination, scan_q

__version__ = "0.1.0"

__all__ = [
    "BsdReport",
    "BudgetExceeded",
    "ComplexApprox",
    "Config",
    "CurveParams",
    "CycElt",
    "Field",
    "FieldElt",
    "HeightData",
    "LPolynomial",
    "OmegaValue",
    "Orbit",
    "RankAssessment",
    "SncFiber",
    "SpecialValue",
    "SupersingularWitness",
    "Tower",
    "analytic_rank",
    "bad_places",
    "bsd_combination",
    "compute_omegas",
    "conductor_degree",
    "default_config",
    "enumerate_orbits",
    "find_pairs",
    "genus",
    "height",
    "l_from_counts",
    "l_polynomial",
    "make_field",
    "omega",
    "rank_assessment",
    "rank_exact_full",
    "rank_lower_bound",
    "rank_zero_criterion",
    "scan_q",
    "simplicity",
    "snc_special_fiber",
    "special_value",
    "supersingular",
    "tamagawa",
    "tower",
    "trace_sums",
    "zeta",
    "__version__",
]
