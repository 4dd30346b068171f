"""The named element families and their duplicate computation paths.

Each family (power-sum elements p, the Lambda series, the D ladders) is
implemented at least twice: once from its defining recursion and once
from a closed form or generating series.  The verifier and the test
suite hold the paths against each other exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product as iproduct

from . import caches
from .lie import LIE_ZERO, LieElement, bracket, h, xminus, xplus
from .uea import (
    UEA_ONE,
    UEA_ZERO,
    UEAElement,
    commutative_multiply,
    divided_power,
    from_lie,
    multiply,
)


def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def lambda1(a: int, b: int) -> LieElement:
    """Order-1 Lambda element -(h_{a+b} - h_{a-b}).

    Defined for arbitrary integer first argument; index normalization
    makes the value vanish when a = 0 and symmetric under sign flips.
    """
    return -(h(a + b) - h(a - b))


_D1_CACHE: dict = caches.register({})


def d1_rec(sign: int, u: int, j: int, l: int) -> LieElement:
    """Degree-1 D ladder from its defining half-bracket recursion."""
    if u < 0:
        return LIE_ZERO
    key = (sign, u, j, l)
    if key not in _D1_CACHE:
        if u == 0:
            _D1_CACHE[key] = xplus(j) if sign > 0 else xminus(l)
        else:
            prev = d1_rec(sign, u - 1, j, l)
            val = bracket(prev, lambda1(j, l)).scale(Fraction(sign, 2))
            _D1_CACHE[key] = val
    return _D1_CACHE[key]


def d1_closed(sign: int, u: int, j: int, l: int) -> LieElement:
    """Degree-1 D ladder from the double-sum closed form."""
    a, b = (j, l) if sign > 0 else (l, j)
    gen = xplus if sign > 0 else xminus
    out = LIE_ZERO
    for k in range((u - 1) // 2 + 1) if u >= 1 else range(0):
        for i in range(u + 2):
            c = (-1) ** (k + i) * binom(u, k) * binom(u + 1, i)
            out = out + gen((u + 1 - 2 * i) * a + (u - 2 * k) * b).scale(c)
    if (u + 1) % 2 == 1:  # u even: self-paired middle column
        for i in range(u // 2 + 1):
            c = (-1) ** (u // 2 + i) * binom(u, u // 2) * binom(u + 1, i)
            out = out + gen((u + 1 - 2 * i) * a).scale(c)
    return out


_P_CACHE: dict = caches.register({})


def p_def(k: int, j: int, l: int) -> LieElement:
    """p_k(j,l) = [x+_j, D-_{k-1,1}(j,l)]."""
    key = (k, j, l)
    if key not in _P_CACHE:
        _P_CACHE[key] = bracket(xplus(j), d1_rec(-1, k - 1, j, l))
    return _P_CACHE[key]


def p_closed(u: int, j: int, l: int) -> LieElement:
    """p_u(j,l) as an explicit integer combination of h's."""
    out = LIE_ZERO
    for k in range((u - 1) // 2 + 1):
        for i in range(u + 1):
            c = (-1) ** (k + i) * binom(u, k) * binom(u, i)
            out = out + h((u - 2 * i) * j + (u - 2 * k) * l).scale(c)
    if (u + 1) % 2 == 1:  # u even
        for i in range(u + 1):
            c = (-1) ** (u // 2 + i) * binom(u - 1, (u - 2) // 2) * binom(u, i)
            out = out + h((u - 2 * i) * j).scale(c)
    return out


def bracket_x_lambda1(k: int, j: int, l: int) -> LieElement:
    """[x+_k, Lambda_{j,l,1}] written out as four raising terms."""
    return (
        2 * xplus(k + j + l)
        + 2 * xplus(k - j - l)
        - 2 * xplus(k + j - l)
        - 2 * xplus(k - j + l)
    )


_LAMBDA_CACHE: dict = caches.register({})


def lambda_rec(j: int, l: int, k: int) -> UEAElement:
    """Lambda element of order k via the Newton-style recursion.

    Values live in the commutative h-subalgebra and are kept with
    sorted words.  Lambda is 0 for k < 0 and 1 for k = 0.
    """
    if k < 0:
        return UEA_ZERO
    if k == 0:
        return UEA_ONE
    key = (j, l, k)
    if key not in _LAMBDA_CACHE:
        acc = UEA_ZERO
        for i in range(1, k + 1):
            acc = acc + commutative_multiply(
                from_lie(p_def(i, j, l)), lambda_rec(j, l, k - i)
            )
        _LAMBDA_CACHE[key] = acc.scale(Fraction(-1, k))
    return _LAMBDA_CACHE[key]


def lambda_series(j: int, l: int, k: int) -> UEAElement:
    """Coefficient of u^k in exp(-sum_s p_s u^s / s), truncated at s=k."""
    if k < 0:
        return UEA_ZERO
    # inner[s] = coefficient of u^s in -sum p_s u^s / s
    inner = [UEA_ZERO] + [
        from_lie(p_def(s, j, l)).scale(Fraction(-1, s)) for s in range(1, k + 1)
    ]
    # exp, truncated to degree k
    result = [UEA_ONE] + [UEA_ZERO] * k
    term = [UEA_ONE] + [UEA_ZERO] * k  # inner^m / m!, degree-truncated
    for m in range(1, k + 1):
        new = [UEA_ZERO] * (k + 1)
        for d1 in range(k + 1):
            if term[d1].is_zero:
                continue
            for d2 in range(1, k + 1 - d1):
                if inner[d2].is_zero:
                    continue
                new[d1 + d2] = new[d1 + d2] + commutative_multiply(term[d1], inner[d2])
        term = [e.scale(Fraction(1, m)) for e in new]
        for d in range(k + 1):
            result[d] = result[d] + term[d]
    return result[k]


_DUV_CACHE: dict = caches.register({})


def duv_rec(sign: int, u: int, v: int, j: int, l: int) -> UEAElement:
    """D_{u,v} by the 1/v convolution recursion."""
    if v < 0:
        return UEA_ZERO
    if v == 0:
        return UEA_ONE if u == 0 else UEA_ZERO
    key = (sign, u, v, j, l)
    if key not in _DUV_CACHE:
        acc = UEA_ZERO
        for i in range(u + 1):
            acc = acc + multiply(
                from_lie(d1_rec(sign, i, j, l)), duv_rec(sign, u - i, v - 1, j, l)
            )
        _DUV_CACHE[key] = acc.scale(Fraction(1, v))
    return _DUV_CACHE[key]


def exponent_tuples(weight: int, total: int) -> list[tuple[int, ...]]:
    """Tuples (k_0..k_w) of nonnegatives with sum k_i = total and
    sum i*k_i = weight."""
    results: list[tuple[int, ...]] = []
    ks = [0] * (weight + 1)

    def rec(i: int, rem_total: int, rem_weight: int) -> None:
        if i == 0:
            if rem_weight == 0:
                ks[0] = rem_total
                results.append(tuple(ks))
                ks[0] = 0
            return
        for k in range(rem_total + 1):
            if i * k > rem_weight:
                break
            ks[i] = k
            rec(i - 1, rem_total - k, rem_weight - i * k)
        ks[i] = 0

    rec(weight, total, weight)
    return results


def duv_multinomial(sign: int, u: int, v: int, j: int, l: int) -> UEAElement:
    """D_{u,v} as a sum of products of divided powers of the D ladder."""
    if v < 0:
        return UEA_ZERO
    if v == 0:
        return UEA_ONE if u == 0 else UEA_ZERO
    acc = UEA_ZERO
    for ks in exponent_tuples(u, v):
        term = UEA_ONE
        for i, k in enumerate(ks):
            if k:
                term = multiply(term, divided_power(d1_rec(sign, i, j, l), k))
        acc = acc + term
    return acc


def duv_series(sign: int, u: int, v: int, j: int, l: int) -> UEAElement:
    """D_{u,v} as the (u+v)-coefficient of the v-th divided power of the
    generating polynomial sum_m D_{m,1} w^{m+1} (truncated at m = u)."""
    if v < 0:
        return UEA_ZERO
    if v == 0:
        return UEA_ONE if u == 0 else UEA_ZERO
    top = u + v
    poly = [UEA_ZERO] * (top + 1)
    for m in range(u + 1):
        if m + 1 <= top:
            poly[m + 1] = from_lie(d1_rec(sign, m, j, l))
    acc = [UEA_ONE] + [UEA_ZERO] * top
    for _ in range(v):
        new = [UEA_ZERO] * (top + 1)
        for d1 in range(top + 1):
            if acc[d1].is_zero:
                continue
            for d2 in range(1, top + 1 - d1):
                if poly[d2].is_zero:
                    continue
                new[d1 + d2] = new[d1 + d2] + multiply(acc[d1], poly[d2])
        acc = new
    return acc[top].scale(Fraction(1, math.factorial(v)))


def duv(sign: int, u: int, v: int, j: int, l: int, method: str = "recursion") -> UEAElement:
    methods = {
        "recursion": duv_rec,
        "multinomial": duv_multinomial,
        "series": duv_series,
    }
    if method not in methods:
        raise ValueError(f"unknown method {method!r}")
    return methods[method](sign, u, v, j, l)


def d_triple(sign: int, u: int, j: int, k: int, m: int) -> LieElement:
    """Three-index D element: alternating binomial combination of x's."""
    gen = xplus if sign > 0 else xminus
    out = LIE_ZERO
    for n in range(u + 1):
        for v in range(u + 1):
            c = (-1) ** (n + v) * binom(u, n) * binom(u, v)
            out = out + gen(j + (u - 2 * n) * k + (u - 2 * v) * m).scale(c)
    return out


def p_via_lambda_odd(n: int, j: int, l: int) -> LieElement:
    """p_{2n+1}(j,l) as a double sum of order-1 Lambda elements."""
    out = LIE_ZERO
    for i in range(n + 1):
        for k in range(n + 1):
            c = (-1) ** (k + i + 1) * binom(2 * n + 1, i) * binom(2 * n + 1, k)
            out = out + lambda1((2 * n + 1 - 2 * i) * j, (2 * n + 1 - 2 * k) * l).scale(c)
    return out


def p_via_lambda_even(n: int, j: int, l: int) -> LieElement:
    """p_{2n}(j,l) as a double sum of order-1 Lambda elements."""
    out = LIE_ZERO
    for i in range(n):
        for k in range(2 * n + 1):
            c = (-1) ** (k + i + 1) * binom(2 * n - 1, i) * binom(2 * n, k)
            out = out + lambda1((2 * n - 1 - 2 * i) * j + (2 * n - 2 * k) * l, j).scale(c)
    return out
