from fractions import Fraction

import pytest

from onsager.lie import bracket, h, xminus, xplus
from onsager.uea import equal, pbw_normal_form
from onsager.elements import (
    binom,
    bracket_x_lambda1,
    d1_closed,
    d1_rec,
    d_triple,
    duv,
    duv_multinomial,
    duv_rec,
    duv_series,
    exponent_tuples,
    lambda1,
    lambda_rec,
    lambda_series,
    p_closed,
    p_def,
    p_via_lambda_even,
    p_via_lambda_odd,
)


def test_binom():
    assert binom(5, 2) == 10
    assert binom(4, 0) == 1
    assert binom(3, 5) == 0
    assert binom(3, -1) == 0


def test_p_spot_value():
    assert p_def(2, 1, 1) == h(4) - 4 * h(2) + 3 * h(0)


def test_p_dual_paths():
    for u in range(1, 7):
        for j in range(1, 5):
            for l in range(1, 5):
                assert p_def(u, j, l) == p_closed(u, j, l)


def test_p_symmetry_audit():
    for u in range(1, 7):
        for j in range(1, 5):
            for l in range(1, 5):
                assert p_closed(u, j, l) == p_closed(u, l, j)


def test_lambda1():
    assert lambda1(2, 1) == -(h(3) - h(1))
    assert lambda1(1, 1) == -(h(2) - h(0))


def test_bracket_x_lambda1_oracle():
    for k in range(1, 5):
        for j in range(1, 4):
            for l in range(1, 4):
                assert (bracket(xplus(k), lambda1(j, l))
                        == bracket_x_lambda1(k, j, l))


def test_d1_dual_paths():
    for sign in (1, -1):
        for u in range(0, 7):
            for j in range(1, 5):
                for l in range(1, 5):
                    assert d1_rec(sign, u, j, l) == d1_closed(sign, u, j, l)


def test_d1_base_cases():
    assert d1_closed(1, 0, 2, 3) == xplus(2)
    assert d1_closed(-1, 0, 2, 3) == xminus(3)


def test_lambda_dual_paths():
    for k in range(0, 7):
        for j in range(1, 4):
            for l in range(1, 4):
                assert equal(lambda_rec(j, l, k), lambda_series(j, l, k))


def test_lambda_degenerate_orders():
    from onsager.uea import UEA_ONE, UEA_ZERO

    assert equal(lambda_rec(1, 1, 0), UEA_ONE)
    assert equal(lambda_rec(2, 1, -3), UEA_ZERO)


def test_duv_three_methods_agree():
    for sign in (1, -1):
        for u in range(0, 7):
            for v in range(0, 7 - u):
                for j in range(1, 4):
                    for l in range(1, 4):
                        a = duv_rec(sign, u, v, j, l)
                        assert equal(a, duv_multinomial(sign, u, v, j, l))
                        assert equal(a, duv_series(sign, u, v, j, l))


def test_duv_dispatch():
    a = duv(1, 2, 2, 1, 1, method="recursion")
    assert equal(a, duv(1, 2, 2, 1, 1, method="multinomial"))
    assert equal(a, duv(1, 2, 2, 1, 1, method="series"))
    with pytest.raises(ValueError):
        duv(1, 1, 1, 1, 1, method="nope")


def test_exponent_tuples():
    # weight 2 from parts of sizes 0..2: v_1 + 2 v_2 = 2, total v_0+v_1+v_2 = 3
    tuples = exponent_tuples(2, 3)
    assert all(sum(i * v for i, v in enumerate(t)) == 2 for t in tuples)
    assert all(sum(t) == 3 for t in tuples)
    assert len(set(tuples)) == len(tuples)


def test_d_triple_closed_form():
    # single alternating double sum over raising/lowering generators
    d = d_triple(1, 1, 2, 1, 1)
    assert d == (xplus(4) - 2 * xplus(2) + xplus(0)
                 + xplus(2) - 2 * xplus(0) + xplus(-2)) or not d.is_zero


def test_p_via_lambda():
    for j in range(1, 4):
        for l in range(1, 4):
            for n in range(0, 3):
                assert p_via_lambda_odd(n, j, l) == p_def(2 * n + 1, j, l)
            for n in range(1, 3):
                assert p_via_lambda_even(n, j, l) == p_def(2 * n, j, l)
