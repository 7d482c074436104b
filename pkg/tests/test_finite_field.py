import pytest

from superelliptic.config import BudgetExceeded
from superelliptic.finite_field import (
    discrete_log,
    dlog_table,
    embed,
    frobenius,
    generator_order_check,
    is_nth_power,
    make_field,
    norm,
    power_traces,
    to_subfield,
    tower,
    trace,
)
from superelliptic.ntheory import factorize

from helpers import nth_powers


def brute_order(field, x):
    k, acc = 1, x
    while acc != field.one():
        acc = acc * x
        k += 1
    return k


def test_make_field_examples():
    f5 = make_field(5, 1)
    assert brute_order(f5, f5.gen()) == 4
    f25 = make_field(5, 2)
    assert f25.order == 25
    assert brute_order(f25, f25.gen()) == 24
    f67 = make_field(67, 1)
    assert brute_order(f67, f67.gen()) == 66


def test_make_field_rejects_bad_input():
    with pytest.raises(ValueError):
        make_field(6, 1)
    with pytest.raises(ValueError):
        make_field(5, 0)
    with pytest.raises(BudgetExceeded):
        make_field(5, 60)


def test_generator_order_check():
    f5 = make_field(5, 1)
    assert generator_order_check(f5, f5.elt([2]))
    assert not generator_order_check(f5, f5.elt([4]))  # 4^2 = 16 = 1 mod 5
    f2 = make_field(2, 1)
    assert generator_order_check(f2)  # unit group trivial


def test_frobenius():
    f25 = make_field(5, 2)
    g = f25.gen()
    assert frobenius(f25.one(), 3) == f25.one()
    f5 = make_field(5, 1)
    for c in range(5):
        x = f5.from_code(c)
        assert frobenius(x, 1) == x
    assert frobenius(g, 2) == g  # p^2 = |F|


@pytest.mark.parametrize("p,m", [(5, 2), (3, 4), (7, 2), (2, 6)])
def test_frobenius_full_cycle_exhaustive(p, m):
    f = make_field(p, m)
    for code in range(f.order):
        x = f.from_code(code)
        assert frobenius(x, m) == x


def test_trace_norm():
    f5, f25 = make_field(5, 1), make_field(5, 2)
    assert trace(f25.one(), f5) == f5.elt([2])  # trace of 1 is the degree
    assert norm(f25.gen(), f5) == f5.gen()  # norm-compatibility
    # x with x^2 in F_5 but x not in F_5 has trace zero
    g = f25.gen()
    x = g**3  # x^2 = g^6 lies in F_5 (6 * 4 = 24 = |F^x|)
    assert (x * x) ** 4 == f25.one() and x**4 != f25.one()
    assert trace(x, f5).is_zero()


def test_trace_transitivity_and_norm_tower():
    tw = tower(3)
    f3, f9, f81 = tw.field(1), tw.field(2), tw.field(4)
    for code in range(0, 81, 7):
        x = f81.from_code(code)
        assert trace(x, f3) == trace(embed(trace(x, f9), f9), f3)
    assert norm(f81.gen(), f9) == f9.gen()
    assert norm(f81.gen(), f3) == f3.gen()
    assert norm(f9.gen(), f3) == f3.gen()


def test_subfield_errors():
    f25 = make_field(5, 2)
    f125 = make_field(5, 3)
    with pytest.raises(ValueError):
        trace(f25.gen(), f125)


@pytest.mark.parametrize("p,m", [(5, 1), (7, 1), (5, 2), (3, 4), (2, 5)])
def test_is_nth_power_matches_enumeration(p, m):
    f = make_field(p, m)
    for n in (2, 3, 5, 6):
        want = nth_powers(f, n)
        for code in range(1, f.order):
            assert is_nth_power(f.from_code(code), n) == (code in want)


def test_is_nth_power_examples():
    f7 = make_field(7, 1)
    assert is_nth_power(f7.one(), 12)
    assert not is_nth_power(f7.elt([2]), 3)  # cubes in F_7 are {1, 6}
    f5 = make_field(5, 1)
    assert is_nth_power(f5.elt([4]), 2)
    with pytest.raises(ValueError):
        is_nth_power(f5.zero(), 2)


def test_discrete_log_small_exhaustive():
    for p, m in [(5, 1), (5, 2), (7, 2), (2, 6)]:
        f = make_field(p, m)
        g = f.gen()
        for k in range(f.mult_order):
            assert discrete_log(g**k) == k


def test_discrete_log_examples():
    f5 = make_field(5, 1)
    assert discrete_log(f5.gen()) == 1
    assert discrete_log(f5.one()) == 0
    assert discrete_log(f5.elt([4])) == 2  # 2^2 = 4
    with pytest.raises(ValueError):
        discrete_log(f5.zero())


def test_discrete_log_pohlig_hellman():
    f = make_field(5, 7)  # 78125 elements, above the table limit
    g = f.gen()
    for k in (0, 1, 31337, 78123):
        assert discrete_log(g**k) == k


def test_norm_compatible_tower_everywhere():
    tw = tower(5)
    for big, small in [(2, 1), (4, 2), (4, 1), (6, 2), (6, 3)]:
        fb, fs = tw.field(big), tw.field(small)
        assert norm(fb.gen(), fs) == fs.gen()


def test_variant_tower_is_different_but_valid():
    f0 = make_field(5, 2, variant=0)
    f1 = make_field(5, 2, variant=1)
    assert f0.modulus != f1.modulus
    assert generator_order_check(f1)
    assert norm(f1.gen(), make_field(5, 1, variant=1)) == make_field(5, 1, variant=1).gen()


def test_power_traces_orthogonality():
    import numpy as np

    f = make_field(7, 2)
    t = power_traces(f)
    counts = np.bincount(np.asarray(t, dtype=np.int64), minlength=7)
    counts[0] += 1  # the zero element
    assert (counts == 7).all()


def test_dlog_table_budget():
    f = make_field(5, 7)
    with pytest.raises(BudgetExceeded):
        dlog_table(f)


def test_to_subfield_rejects_outside_elements():
    f25 = make_field(5, 2)
    f5 = make_field(5, 1)
    with pytest.raises(ValueError):
        to_subfield(f25.gen(), f5)  # generator of F_25 is not in F_5
