"""Rewriting products of integral generators into ordered monomials.

The integral form is generated by divided powers of the x generators
together with the Lambda elements of the Cartan part.  An ordered
monomial puts all minus-side divided powers first (indices increasing),
then Lambda factors (pairs increasing, at most one factor per pair),
then plus-side divided powers.  Everything here rewrites arbitrary
products of such factors into exact rational combinations of ordered
monomials, and extracts coordinates against the enumerated candidate
basis at a finite truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import caches, linalg
from .lie import Kind, LieElement, xminus, xplus
from .uea import (
    UEAElement,
    UEA_ONE,
    UEA_ZERO,
    divided_power,
    from_lie,
    multiply,
    pbw_normal_form,
)
from .elements import binom, d1_closed, d_triple, exponent_tuples, lambda_rec

ZERO = Fraction(0)
ONE = Fraction(1)


class NoLambdaExpression(Exception):
    """The Lambda-product correction term fell outside the integral span."""


class OutOfTruncation(Exception):
    """No expression within the requested mdegree/index bounds."""


class AmbiguousSolution(Exception):
    """Candidate monomials at this truncation are linearly dependent.

    Carries a particular solution and a kernel basis so callers can
    report the dependency instead of silently picking a representative.
    """

    def __init__(self, particular, kernel, monomials):
        super().__init__("candidate monomials are linearly dependent")
        self.particular = particular
        self.kernel = kernel
        self.monomials = monomials


# Frozen dataclasses rather than NamedTuples: the two factor kinds must
# never compare equal even when their fields coincide numerically.
@dataclass(frozen=True)
class XFactor:
    sign: int  # +1 or -1
    index: int
    order: int


@dataclass(frozen=True)
class LFactor:
    j: int
    l: int
    order: int


Factor = Union[XFactor, LFactor]
MWord = tuple  # tuple[Factor, ...]

# Column position of each factor category in an ordered monomial.
CAT_MINUS, CAT_LAMBDA, CAT_PLUS = 0, 1, 2


def category(f: Factor) -> int:
    if isinstance(f, LFactor):
        return CAT_LAMBDA
    return CAT_MINUS if f.sign < 0 else CAT_PLUS


def factor_key(f: Factor):
    """Sort key within a category block."""
    if isinstance(f, LFactor):
        return (f.j, f.l)
    return (f.index,)


def lfactor(j: int, l: int, k: int) -> LFactor:
    """Lambda factor on the canonical (larger, smaller) pair."""
    if j < 1 or l < 1 or k < 1:
        raise ValueError(f"bad Lambda factor ({j},{l},{k})")
    return LFactor(max(j, l), min(j, l), k)


def mdegree(word: MWord) -> int:
    return sum(f.order for f in word)


def word_key(word: MWord):
    """Total order on factor words, for deterministic output."""
    return tuple((category(f),) + factor_key(f) + (f.order,) for f in word)


class MForm:
    """Rational combination of products of integral-generator factors."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[MWord, Fraction] | None = None):
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if c != 0}

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self):
        return self.coeffs.items()

    def __add__(self, other: "MForm") -> "MForm":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, ZERO) + c
        return MForm(out)

    def __sub__(self, other: "MForm") -> "MForm":
        return self + other.scale(-1)

    def __neg__(self) -> "MForm":
        return self.scale(-1)

    def scale(self, c) -> "MForm":
        c = Fraction(c)
        return MForm({w: c * v for w, v in self.coeffs.items()})

    def __mul__(self, other: "MForm") -> "MForm":
        out: dict[MWord, Fraction] = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return MForm(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, MForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def words(self) -> list[MWord]:
        return sorted(self.coeffs, key=lambda w: (mdegree(w), len(w), word_key(w)))

    def __repr__(self):
        if not self.coeffs:
            return "MForm(0)"
        bits = []
        for w in self.words():
            c = self.coeffs[w]
            fac = "*".join(map(_show_factor, w)) if w else "1"
            bits.append(f"({c})*{fac}")
        return " + ".join(bits)


def _show_factor(f: Factor) -> str:
    if isinstance(f, LFactor):
        return f"L({f.j},{f.l},{f.order})"
    s = "+" if f.sign > 0 else "-"
    return f"x{s}({f.index})^({f.order})"


M_ZERO = MForm()
M_ONE = MForm({(): ONE})


def monomial(*factors: Factor) -> MForm:
    return MForm({tuple(factors): ONE})


# ---------------------------------------------------------------------------
# Expansion back into the enveloping algebra (the semantic oracle).

_FACTOR_EXPAND: dict = caches.register({})
_WORD_EXPAND: dict = caches.register({})


def expand_factor(f: Factor) -> UEAElement:
    got = _FACTOR_EXPAND.get(f)
    if got is not None:
        return got
    if isinstance(f, LFactor):
        val = lambda_rec(f.j, f.l, f.order)
    else:
        gen = xplus(f.index) if f.sign > 0 else xminus(f.index)
        val = divided_power(gen, f.order)
    _FACTOR_EXPAND[f] = val
    return val


def expand_word(w: MWord) -> UEAElement:
    got = _WORD_EXPAND.get(w)
    if got is not None:
        return got
    val = UEA_ONE
    for f in w:
        val = multiply(val, expand_factor(f))
    val = pbw_normal_form(val)
    _WORD_EXPAND[w] = val
    return val


def expand(m: MForm) -> UEAElement:
    out = UEA_ZERO
    for w, c in m.items():
        out = out + expand_word(w).scale(c)
    return pbw_normal_form(out)


# ---------------------------------------------------------------------------
# Divided powers of one-sided x combinations.

def divided_x(a: LieElement, v: int) -> MForm:
    """(a)^{(v)} for a combination of same-sign x generators.

    Since the generators commute, the divided power multiplies out as a
    sum over compositions of v across the support, each generator
    contributing c^{v_i} times its own divided power.
    """
    if v < 0:
        return M_ZERO
    if v == 0:
        return M_ONE
    if a.is_zero:
        return M_ZERO
    support = a.support()
    kinds = {b.kind for b in support}
    if kinds == {Kind.XPLUS}:
        sign = 1
    elif kinds == {Kind.XMINUS}:
        sign = -1
    else:
        raise ValueError("divided_x needs a one-sided x combination")
    support = sorted(support, key=lambda b: b.index)
    out: dict[MWord, Fraction] = {}

    def go(pos: int, remaining: int, coeff: Fraction, word: list) -> None:
        if pos == len(support) - 1:
            b = support[pos]
            c = coeff * a.coeffs[b] ** remaining
            w = tuple(word + ([XFactor(sign, b.index, remaining)] if remaining else []))
            out[w] = out.get(w, ZERO) + c
            return
        b = support[pos]
        for k in range(remaining + 1):
            nxt = word + ([XFactor(sign, b.index, k)] if k else [])
            go(pos + 1, remaining - k, coeff * a.coeffs[b] ** k, nxt)

    go(0, v, ONE, [])
    return MForm(out)


_DUV_MFORM: dict = caches.register({})


def duv_mform(sign: int, u: int, v: int, j: int, l: int) -> MForm:
    """D_{u,v} expanded into divided powers of single generators.

    Multinomial form: sum over exponent tuples (k_0..k_u) with total v
    and weight u of the product of divided powers of the D_{i,1} layers.
    """
    if v < 0:
        return M_ZERO
    if v == 0:
        return M_ONE if u == 0 else M_ZERO
    key = (sign, u, v, j, l)
    got = _DUV_MFORM.get(key)
    if got is not None:
        return got
    out = M_ZERO
    for ks in exponent_tuples(u, v):
        term = M_ONE
        for i, k in enumerate(ks):
            if k == 0:
                continue
            term = term * divided_x(d1_closed(sign, i, j, l), k)
            if term.is_zero:
                break
        out = out + term
    _DUV_MFORM[key] = out
    return out


# ---------------------------------------------------------------------------
# The straightening rules.

def straighten_same_x(sign: int, j: int, r: int, s: int) -> tuple[int, XFactor]:
    """Merge adjacent divided powers of one generator."""
    return binom(r + s, s), XFactor(sign, j, r + s)


def straighten_plus_minus(j: int, r: int, l: int, s: int) -> MForm:
    """Rewrite (x+_j)^{(r)} (x-_l)^{(s)} in (minus, Lambda, plus) order.

    Triple sum over (m, n, q) with m+n+q bounded by min(r, s); the two
    D blocks are expanded multinomially so the result is a combination
    of single-generator divided powers around a Lambda factor.
    """
    out = M_ZERO
    cutoff = min(r, s)
    for m in range(cutoff + 1):
        for n in range(cutoff - m + 1):
            mid = monomial(lfactor(j, l, n)) if n else M_ONE
            for q in range(cutoff - m - n + 1):
                left = duv_mform(-1, m, s - m - n - q, j, l)
                if left.is_zero:
                    continue
                right = duv_mform(1, q, r - m - n - q, j, l)
                if right.is_zero:
                    continue
                sgn = -1 if (m + n + q) % 2 else 1
                out = out + (left * mid * right).scale(sgn)
    return out


def move_x_past_lambda(side: str, x_index: int, r: int,
                       pair: tuple[int, int], n: int) -> MForm:
    """Commute a divided x power through a Lambda factor.

    side "plusLeft" rewrites (x+)^{(r)} L_{k,m,n} with the Lambda factors
    emerging on the left; side "minusRight" rewrites L_{k,m,n} (x-)^{(s)}
    with them on the right.
    """
    k, m = pair
    if side not in ("plusLeft", "minusRight"):
        raise ValueError(f"unknown side {side!r}")
    sign = 1 if side == "plusLeft" else -1
    out = M_ZERO
    for i in range(n + 1):
        lam = monomial(lfactor(k, m, n - i)) if n - i else M_ONE
        inner = M_ZERO
        for vs in exponent_tuples(i, r):
            term = M_ONE
            for u, vu in enumerate(vs):
                if vu == 0:
                    continue
                block = divided_x(d_triple(sign, u, x_index, k, m), vu)
                term = term * block.scale(Fraction(u + 1) ** vu)
                if term.is_zero:
                    break
            inner = inner + term
        if sign > 0:
            out = out + lam * inner
        else:
            out = out + inner * lam
    return out


# ---------------------------------------------------------------------------
# Merging two Lambda factors on the same pair.
#
# The product L_{j,l,k} L_{j,l,m} is binom(k+m,k) L_{j,l,k+m} plus a
# correction of strictly lower filtration degree that must come out as
# an integer combination of Lambda products.  The correction is found
# degree by degree.  The elements Y_i := h_i - h_{i-2} (i >= 2) are a
# lattice basis of the degree-one span of all order-1 Lambda factors,
# realized by the chain pairs: Y_i = -expand(L_{i-1,1,1}).  The top
# homogeneous part of the remainder is rewritten as a polynomial in
# h_0, h_1 and the Y_i; a genuine correction has no h_0/h_1 part, and
# its divided-monomial coordinates in the Y_i must be integers.  Each
# divided Y-monomial is the exact leading part of the matching product
# of chain-pair Lambda factors, so subtracting those products kills the
# top degree and the recursion terminates.

_MERGE_CACHE: dict = caches.register({})


def _y_coordinates(component: dict) -> dict[tuple, Fraction]:
    """Homogeneous h-polynomial -> ordinary monomial coords in the Y_i.

    Input maps sorted h-index tuples to coefficients.  Substitutes
    h_i = h_parity + Y_i + Y_{i-2} + ... and expands; raises
    NoLambdaExpression if any h_0/h_1 content survives.
    """
    coords: dict[tuple, Fraction] = {}
    leftovers: dict[tuple, Fraction] = {}
    for word, c in component.items():
        # each letter h_i expands into a sum over {base} + chain Y's
        options = []
        for i in word:
            opt = [(0, i % 2)]  # (0, parity) marks the h_0 / h_1 base term
            opt.extend((1, t) for t in range(i, 1, -2))
            options.append(opt)

        def go(pos: int, ys: list, nbase: int, coeff: Fraction) -> None:
            if pos == len(options):
                if nbase:
                    key = (nbase, tuple(sorted(ys)))
                    leftovers[key] = leftovers.get(key, ZERO) + coeff
                else:
                    key = tuple(sorted(ys))
                    coords[key] = coords.get(key, ZERO) + coeff
                return
            for tag, t in options[pos]:
                if tag:
                    go(pos + 1, ys + [t], nbase, coeff)
                else:
                    go(pos + 1, ys, nbase + 1, coeff)

        go(0, [], 0, c)
    bad = {k: v for k, v in leftovers.items() if v != 0}
    if bad:
        raise NoLambdaExpression(f"h_0/h_1 content in correction: {bad}")
    return {k: v for k, v in coords.items() if v != 0}


def merge_lambda_pair(j: int, l: int, k: int, m: int) -> MForm:
    key = (max(j, l), min(j, l), k, m)
    got = _MERGE_CACHE.get(key)
    if got is not None:
        return got
    lead_coeff = Fraction(binom(k + m, k))
    remainder = (pbw_normal_form(multiply(lambda_rec(j, l, k), lambda_rec(j, l, m)))
                 - lambda_rec(j, l, k + m).scale(lead_coeff))
    corr: dict[MWord, Fraction] = {}
    while not remainder.is_zero:
        d = max(len(w) for w in remainder.coeffs)
        if d == 0:
            c0 = remainder.coeffs[()]
            if c0.denominator != 1:
                raise NoLambdaExpression(f"non-integral constant term {c0}")
            corr[()] = corr.get((), ZERO) + c0
            break
        component = {tuple(b.index for b in w): c
                     for w, c in remainder.coeffs.items() if len(w) == d}
        picked: dict[MWord, Fraction] = {}
        for ys, c in _y_coordinates(component).items():
            mult: dict[int, int] = {}
            for t in ys:
                mult[t] = mult.get(t, 0) + 1
            c_div = c
            for q in mult.values():
                for f in range(2, q + 1):
                    c_div *= f
            if c_div.denominator != 1:
                raise NoLambdaExpression(
                    f"non-integral Y-coordinate {c_div} at {ys} merging "
                    f"orders ({k},{m}) on pair ({j},{l})")
            word = tuple(LFactor(t - 1, 1, q) for t, q in sorted(mult.items()))
            coeff = c_div if d % 2 == 0 else -c_div
            picked[word] = picked.get(word, ZERO) + coeff
        for word, c in picked.items():
            corr[word] = corr.get(word, ZERO) + c
            remainder = remainder - expand_word(word).scale(c)
    out = monomial(lfactor(j, l, k + m)).scale(lead_coeff) + MForm(corr)
    _MERGE_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# Normalization.

def _is_canonical_word(w: MWord) -> bool:
    for a, b in zip(w, w[1:]):
        ca, cb = category(a), category(b)
        if ca > cb:
            return False
        if ca == cb and factor_key(a) >= factor_key(b):
            return False
    return True


def _splice(word: MWord, i: int, repl: MForm) -> MForm:
    """Replace word[i:i+2] by each term of repl."""
    head, tail = word[:i], word[i + 2:]
    return MForm({head + mid + tail: c for mid, c in repl.items()})


def _rewrite_pair(a: Factor, b: Factor) -> MForm:
    ca, cb = category(a), category(b)
    if ca == cb:
        if ca == CAT_LAMBDA:
            if (a.j, a.l) == (b.j, b.l):
                return merge_lambda_pair(a.j, a.l, a.order, b.order)
            return monomial(b, a)
        if a.index == b.index:
            c, f = straighten_same_x(a.sign, a.index, a.order, b.order)
            return monomial(f).scale(c)
        return monomial(b, a)
    if ca == CAT_PLUS and cb == CAT_MINUS:
        return straighten_plus_minus(a.index, a.order, b.index, b.order)
    if ca == CAT_PLUS and cb == CAT_LAMBDA:
        return move_x_past_lambda("plusLeft", a.index, a.order, (b.j, b.l), b.order)
    # remaining case: Lambda before a minus factor
    return move_x_past_lambda("minusRight", b.index, b.order, (a.j, a.l), a.order)


def normalize_to_basis(m: MForm) -> MForm:
    """Rewrite an arbitrary factor product into ordered monomials.

    Applies the leftmost applicable rule of each word repeatedly.  The
    out-of-order rules strictly reduce either the mdegree of the messy
    part or an inversion count at fixed mdegree, so the worklist
    terminates.
    """
    result: dict[MWord, Fraction] = {}
    queue = list(m.items())
    while queue:
        word, coeff = queue.pop()
        if coeff == 0:
            continue
        pos = None
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            ca, cb = category(a), category(b)
            if ca > cb or (ca == cb and factor_key(a) >= factor_key(b)):
                pos = i
                break
        if pos is None:
            result[word] = result.get(word, ZERO) + coeff
            continue
        spliced = _splice(word, pos, _rewrite_pair(word[pos], word[pos + 1]))
        for w, c in spliced.items():
            queue.append((w, coeff * c))
    return MForm(result)


# ---------------------------------------------------------------------------
# Candidate basis enumeration and coordinates.

def enumerate_basis(max_mdegree: int, max_index: int) -> list[MWord]:
    """All ordered monomials within the truncation, deterministically.

    Slots are the minus indices, the canonical Lambda pairs, and the
    plus indices; a monomial assigns a nonnegative order to each slot
    with total at most max_mdegree.
    """
    if max_mdegree < 0 or max_index < 1:
        raise ValueError("bounds must be positive")
    slots: list = []
    for i in range(1, max_index + 1):
        slots.append(("xm", i))
    for j in range(1, max_index + 1):
        for l in range(1, j + 1):
            slots.append(("lam", j, l))
    for i in range(1, max_index + 1):
        slots.append(("xp", i))
    # Lambda pairs must come out in lexicographic order inside a word.
    slots = ([s for s in slots if s[0] == "xm"]
             + sorted((s for s in slots if s[0] == "lam"), key=lambda s: (s[1], s[2]))
             + [s for s in slots if s[0] == "xp"])

    out: list[MWord] = []

    def build(pos: int, budget: int, word: list) -> None:
        if pos == len(slots):
            out.append(tuple(word))
            return
        slot = slots[pos]
        for order in range(budget + 1):
            if order == 0:
                build(pos + 1, budget, word)
            elif slot[0] == "lam":
                build(pos + 1, budget - order, word + [LFactor(slot[1], slot[2], order)])
            else:
                sign = 1 if slot[0] == "xp" else -1
                build(pos + 1, budget - order, word + [XFactor(sign, slot[1], order)])

    build(0, max_mdegree, [])
    out.sort(key=lambda w: (mdegree(w), len(w), word_key(w)))
    return out


def _within_bounds(word: MWord, max_mdegree: int, max_index: int) -> bool:
    if mdegree(word) > max_mdegree:
        return False
    for f in word:
        top = max(f.j, f.l) if isinstance(f, LFactor) else f.index
        if top > max_index:
            return False
    return True


def coordinates(a: UEAElement, max_mdegree: int, max_index: int) -> dict[MWord, Fraction]:
    """Exact coordinates of a against the enumerated monomials.

    Sets up the full linear system over the PBW words and solves by
    rational elimination.  Raises OutOfTruncation when no solution
    exists inside the bounds and AmbiguousSolution when the candidates
    are dependent (the kernel is attached for reporting).
    """
    basis = enumerate_basis(max_mdegree, max_index)
    expansions = [expand_word(w) for w in basis]
    target = pbw_normal_form(a)
    rows: list = []
    row_of: dict = {}
    for e in expansions + [target]:
        for w in e.words():
            if w not in row_of:
                row_of[w] = len(rows)
                rows.append(w)
    cols = []
    for e in expansions:
        col = [ZERO] * len(rows)
        for w, c in e.items():
            col[row_of[w]] = c
        cols.append(col)
    tvec = [ZERO] * len(rows)
    for w, c in target.items():
        tvec[row_of[w]] = c
    sol = linalg.solve_columns(cols, tvec)
    if not sol.consistent:
        raise OutOfTruncation(
            f"no expression within mdegree {max_mdegree}, index {max_index}")
    if not sol.unique:
        kernel = [{basis[i]: v for i, v in enumerate(vec) if v != 0}
                  for vec in sol.kernel]
        particular = {basis[i]: v for i, v in enumerate(sol.solution) if v != 0}
        raise AmbiguousSolution(particular, kernel, basis)
    return {basis[i]: c for i, c in enumerate(sol.solution) if c != 0}


def mform_coordinates(m: MForm, max_mdegree: int, max_index: int) -> dict[MWord, Fraction]:
    """Coordinates of a factor product, computed by rewriting.

    This is the constructive route: normalize and read the coefficients
    off the ordered monomials.  It scales to truncations where the
    generic linear solve does not, and is exact by the semantic
    preservation of the rewrite rules.
    """
    normal = normalize_to_basis(m)
    for w in normal.coeffs:
        if not _within_bounds(w, max_mdegree, max_index):
            raise OutOfTruncation(
                f"monomial {w} exceeds mdegree {max_mdegree} or index {max_index}")
    return dict(normal.coeffs)


def integrality_check(m: UEAElement | MForm, max_mdegree: int,
                      max_index: int) -> tuple[bool, dict[MWord, Fraction]]:
    """Whether the coordinates exist and are all integers.

    Returns the verdict together with the offending (non-integral)
    coordinates; an empty report means fully integral.
    """
    if isinstance(m, MForm):
        coords = mform_coordinates(m, max_mdegree, max_index)
    else:
        coords = coordinates(m, max_mdegree, max_index)
    bad = {w: c for w, c in coords.items() if c.denominator != 1}
    return not bad, bad
