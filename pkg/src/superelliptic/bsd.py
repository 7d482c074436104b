"""BSD combination reports: Sha*Reg composite, Brauer-Siegel trend, q-scans.

With Tamagawa product 1, the BSD formula rearranges to

    X := L*(J) * H(J) * r^(-g) = |Sha(J)| * Reg(J) / |J(K)_tors|^2,

an exact positive rational computed from the L-polynomial and the height.
Torsion and regulator are not computed separately here (out of scope); in the
rank-zero case Reg = 1, so X = |Sha| / |tors|^2.  The log-ratio columns track
the Brauer-Siegel trend log X / log H -> 1; the limit itself is an asymptotic
statement with no finite verification, so reports label these as trends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath

from .config import BudgetExceeded, Config, default_config
from .criteria import rank_assessment
from .finite_field import Tower, tower
from .geometry import HeightData, height, tamagawa
from .lfunction import (
    LPolynomial,
    SpecialValue,
    analytic_rank,
    l_polynomial,
    special_value,
)
from .orbits import CurveParams, compute_omegas, enumerate_orbits

SCHEMA_VERSION = "1.0"


def _log_fraction(x: Fraction, prec_bits: int) -> float:
    """log of an exact positive rational at high working precision."""
    if x <= 0:
        raise ValueError("log of a non-positive rational")
    with mpmath.workprec(prec_bits):
        v = mpmath.log(mpmath.mpf(x.numerator)) - mpmath.log(mpmath.mpf(x.denominator))
        return float(v)


@dataclass(frozen=True)
class BsdReport:
    params: CurveParams
    genus: int
    rank_exact: Optional[int]
    rank_lower: int
    rank_upper: int
    l_star: Fraction
    vanishing_order: int
    height_data: HeightData
    tamagawa_product: int
    composite: Fraction  # X = L* H(J) r^(-g)
    brauer_siegel_ratio: Optional[float]
    special_value_ratio: Optional[float]
    ratio_error: float
    caveats: tuple[str, ...] = field(default_factory=tuple)

    def describe(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "params": self.params.describe(),
            "genus": self.genus,
            "rank": {
                "exact": self.rank_exact,
                "lower": self.rank_lower,
                "upper": self.rank_upper,
            },
            "vanishing_order": self.vanishing_order,
            "l_star": [str(self.l_star.numerator), str(self.l_star.denominator)],
            "height": self.height_data.describe(),
            "tamagawa": self.tamagawa_product,
            "sha_reg_composite": [str(self.composite.numerator), str(self.composite.denominator)],
            "brauer_siegel_ratio_trend": self.brauer_siegel_ratio,
            "special_value_ratio_trend": self.special_value_ratio,
            "ratio_error": self.ratio_error,
            "caveats": list(self.caveats),
        }


def bsd_combination(
    params: CurveParams,
    tw: Optional[Tower] = None,
    config: Optional[Config] = None,
    lpoly: Optional[LPolynomial] = None,
) -> BsdReport:
    """Assemble the exact BSD composite X and the trend ratios for one instance."""
    config = config or default_config()
    tw = tw or tower(params.p, config=config)
    cert = tamagawa(params)  # asserts the product is 1
    hdata = height(params)
    if lpoly is None:
        omegas = compute_omegas(params, tw=tw, config=config)
        lpoly = l_polynomial(params, tw=tw, config=config, omegas=omegas)
        rank = analytic_rank(params, tw=tw, config=config, omegas=omegas)
    else:
        rank = analytic_rank(params, tw=tw, config=config)
    sv = special_value(lpoly)
    if rank.exact is not None and rank.exact != sv.order:
        raise AssertionError("orbit rank count disagrees with the vanishing order")
    g = params.genus
    composite = sv.value * Fraction(params.r) ** (hdata.h - g)
    caveats = [
        "torsion and regulator are not separately computed; X = |Sha|*Reg/|tors|^2",
        "log-ratio columns are finite-q trends; the limit statements are asymptotic",
    ]
    if sv.order == 0:
        caveats.append("rank 0: Reg(J) = 1, so X = |Sha|/|tors|^2")
    prec = config.precision_bits
    if hdata.h > 0:
        log_h = _log_fraction(Fraction(params.r) ** hdata.h, prec)
        bs = _log_fraction(composite, prec) / log_h
        svr = _log_fraction(sv.value, prec) / log_h if sv.value != 1 else 0.0
    else:
        bs = svr = None
        caveats.append("H(J) = 1: log ratios undefined")
    assessment = rank_assessment(params)
    return BsdReport(
        params=params,
        genus=g,
        rank_exact=rank.exact,
        rank_lower=max(rank.lower, assessment.lower),
        rank_upper=min(rank.upper, assessment.upper),
        l_star=sv.value,
        vanishing_order=sv.order,
        height_data=hdata,
        tamagawa_product=cert.total,
        composite=composite,
        brauer_siegel_ratio=bs,
        special_value_ratio=svr,
        ratio_error=1e-12,
        caveats=tuple(caveats),
    )


def brauer_siegel_ratio(params: CurveParams, **kw) -> Optional[float]:
    return bsd_combination(params, **kw).brauer_siegel_ratio


def special_value_ratio(params: CurveParams, **kw) -> Optional[float]:
    return bsd_combination(params, **kw).special_value_ratio


# ----------------------------------------------------------------------------
# scans over q
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    q_exp: int
    status: str  # "ok" | "BUDGET" | "UNRESOLVED" | "ERROR: ..."
    report: Optional[BsdReport]

    def describe(self) -> dict:
        d = {"q_exp": self.q_exp, "status": self.status}
        if self.report is not None:
            d["report"] = self.report.describe()
        return d


def scan_q(
    p: int,
    r_exp: int,
    a: int,
    b: int,
    q_exponents: list[int],
    config: Optional[Config] = None,
) -> list[ScanRow]:
    """One BsdReport row per q = p^e; failures are recorded, not raised."""
    config = config or default_config()
    tw = tower(p, config=config)
    rows = []
    for e in sorted(q_exponents):
        try:
            report = bsd_combination(CurveParams(p, r_exp, e, a, b), tw=tw, config=config)
            rows.append(ScanRow(e, "ok", report))
        except BudgetExceeded:
            rows.append(ScanRow(e, "BUDGET", None))
        except Exception as exc:  # noqa: BLE001 - row isolation is the contract
            rows.append(ScanRow(e, f"ERROR: {type(exc).__name__}: {exc}", None))
    return rows


def scan_table(rows: list[ScanRow]) -> list[dict]:
    """Flat dict rows for CSV emission."""
    out = []
    for row in rows:
        d: dict = {"q_exp": row.q_exp, "status": row.status}
        if row.report is not None:
            rep = row.report
            d.update(
                {
                    "q": rep.params.q,
                    "deg_L": rep.params.s_size,
                    "rank": rep.rank_exact,
                    "h": rep.height_data.h,
                    "l_star": str(rep.l_star),
                    "log_X_over_log_H_trend": rep.brauer_siegel_ratio,
                    "log_Lstar_over_log_H_trend": rep.special_value_ratio,
                }
            )
        out.append(d)
    return out
