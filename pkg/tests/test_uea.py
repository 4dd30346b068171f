import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from onsager.lie import Kind, generator, h, xminus, xplus
from onsager.uea import (
    UEA_ONE,
    UEA_ZERO,
    binomial,
    commutative_multiply,
    divided_power,
    equal,
    from_lie,
    multiply,
    pbw_normal_form,
    power,
    product,
)
from onsager.elements import binom


def _random_element(rng, nwords=2, nletters=3, max_index=4):
    kinds = [Kind.XMINUS, Kind.H, Kind.XPLUS]
    out = UEA_ZERO
    for _ in range(rng.randint(1, nwords)):
        word = UEA_ONE
        for _ in range(rng.randint(1, nletters)):
            g = generator(rng.choice(kinds), rng.randint(0, max_index))
            if g.is_zero:
                continue
            word = multiply(word, from_lie(g))
        out = out + word.scale(Fraction(rng.randint(-3, 3) or 1))
    return out


def test_normal_form_example():
    nf = pbw_normal_form(multiply(from_lie(xplus(1)), from_lie(xminus(1))))
    expected = (multiply(from_lie(xminus(1)), from_lie(xplus(1)))
                + from_lie(h(2)) - from_lie(h(0)))
    assert equal(nf, pbw_normal_form(expected))


def test_normal_form_is_ordered_and_idempotent():
    rng = random.Random(1)
    for _ in range(50):
        a = _random_element(rng)
        nf = pbw_normal_form(a)
        for word in nf.coeffs:
            assert all(word[i] <= word[i + 1] for i in range(len(word) - 1))
        assert equal(pbw_normal_form(nf), nf)


def test_confluence_leftmost_vs_rightmost():
    rng = random.Random(42)
    for _ in range(200):
        a = _random_element(rng)
        left = pbw_normal_form(a, strategy="leftmost")
        right = pbw_normal_form(a, strategy="rightmost")
        assert equal(left, right)


def test_multiplication_associative():
    rng = random.Random(3)
    for _ in range(20):
        a, b, c = (_random_element(rng, 2, 2, 3) for _ in range(3))
        lhs = pbw_normal_form(multiply(multiply(a, b), c))
        rhs = pbw_normal_form(multiply(a, multiply(b, c)))
        assert equal(lhs, rhs)


def test_divided_power_basics():
    x = xplus(2)
    assert equal(divided_power(x, 0), UEA_ONE)
    assert equal(divided_power(x, 1), from_lie(x))
    six = power(from_lie(x), 3)
    assert equal(six, divided_power(x, 3).scale(Fraction(6)))


def test_divided_power_product_rule():
    for r in range(4):
        for s in range(4):
            lhs = multiply(divided_power(xminus(1), r), divided_power(xminus(1), s))
            rhs = divided_power(xminus(1), r + s).scale(Fraction(binom(r + s, s)))
            assert equal(lhs, rhs)


def test_binomial_of_h():
    # binom(h, 2) = h(h-1)/2
    b = binomial(h(2), 2)
    hh = from_lie(h(2))
    expected = multiply(hh, hh - UEA_ONE).scale(Fraction(1, 2))
    assert equal(pbw_normal_form(b), pbw_normal_form(expected))


def test_commutative_multiply_matches_on_h():
    a = from_lie(h(2)) + from_lie(h(0)).scale(Fraction(3))
    b = from_lie(h(4))
    assert equal(pbw_normal_form(commutative_multiply(a, b)),
                 pbw_normal_form(multiply(a, b)))


@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 3))
@settings(deadline=None)
def test_normal_form_linear(j, l, k):
    a = multiply(from_lie(xplus(j)), from_lie(xminus(l)))
    b = divided_power(h(k), 2)
    lhs = pbw_normal_form(a + b)
    rhs = pbw_normal_form(a) + pbw_normal_form(b)
    assert equal(lhs, rhs)


def test_product_helper():
    factors = [from_lie(xplus(1)), from_lie(h(2)), from_lie(xminus(1))]
    assert equal(product(factors),
                 multiply(multiply(factors[0], factors[1]), factors[2]))
