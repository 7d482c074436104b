from fractions import Fraction

import pytest

from superelliptic.bsd import bsd_combination, scan_q, scan_table
from superelliptic.config import Config
from superelliptic.finite_field import tower
from superelliptic.orbits import CurveParams


def test_bsd_combination_flagship():
    rep = bsd_combination(CurveParams(5, 1, 1, 2, 3))
    assert rep.tamagawa_product == 1
    assert rep.l_star == 16
    assert rep.height_data.h == 1
    assert rep.genus == 1
    # X = L* r^(h - g)
    assert rep.composite == Fraction(16) * Fraction(5) ** (1 - 1) == 16
    # definition consistency: X r^g / (L* r^h) = 1
    assert rep.composite * Fraction(5) ** rep.genus == rep.l_star * Fraction(5) ** rep.height_data.h
    assert rep.composite > 0


def test_bsd_rank_zero_caveat():
    rep = bsd_combination(CurveParams(3, 2, 1, 2, 3))
    if rep.vanishing_order == 0:
        assert any("Reg(J) = 1" in c for c in rep.caveats)
    assert any("torsion" in c for c in rep.caveats)


def test_bsd_report_serializable():
    import json

    rep = bsd_combination(CurveParams(5, 1, 1, 2, 3))
    blob = json.dumps(rep.describe(), sort_keys=True)
    assert "sha_reg_composite" in blob


def test_bsd_generator_invariance():
    p0 = bsd_combination(CurveParams(5, 1, 1, 2, 3), tw=tower(5, variant=0))
    p1 = bsd_combination(CurveParams(5, 1, 1, 2, 3), tw=tower(5, variant=1))
    assert p0.composite == p1.composite
    assert p0.l_star == p1.l_star


def test_scan_rank_zero_pair():
    rows = scan_q(5, 1, 2, 11, [1, 2])
    assert [row.q_exp for row in rows] == [1, 2]
    assert all(row.status == "ok" for row in rows)
    for row in rows:
        rep = row.report
        assert rep.rank_exact == 0
        assert rep.composite > 0
        assert 0.0 <= rep.brauer_siegel_ratio <= 2.0
    # h grows linearly in q: h = Dq + E with fixed D, E (same q mod ab)
    h1, h2 = (row.report.height_data for row in rows)
    assert h1.d_coeff == h2.d_coeff
    assert h2.h > h1.h
    # monotone growth of log X for the rank-zero pair
    assert rows[1].report.composite > rows[0].report.composite


def test_scan_row_isolation():
    cfg = Config(enumeration_budget=1 << 10)
    rows = scan_q(5, 1, 2, 3, [1, 6], config=cfg)
    by_exp = {row.q_exp: row for row in rows}
    assert by_exp[1].status == "ok"
    assert by_exp[6].status == "BUDGET"
    assert by_exp[6].report is None


def test_scan_table_flat():
    rows = scan_q(5, 1, 2, 3, [1])
    table = scan_table(rows)
    assert table[0]["deg_L"] == 8
    assert table[0]["rank"] == 0
    assert "log_X_over_log_H_trend" in table[0]


def test_scan_empty():
    assert scan_q(5, 1, 2, 3, []) == []
