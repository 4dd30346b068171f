"""The Onsager algebra in its fixed-point basis.

Generators come in three families: lowering elements ``x-_l`` (l >= 1),
Cartan-like elements ``h_k`` (k >= 0) and raising elements ``x+_j``
(j >= 1).  Index normalization (``h_{-k} = h_k``, ``x_{-j} = -x_j``,
``x_0 = 0``) happens once, in :func:`generator`; all downstream code may
assume canonical basis elements.
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from typing import Iterable, NamedTuple

ZERO = Fraction(0)
ONE = Fraction(1)


class Kind(IntEnum):
    """Generator family; the numeric value is the total-order rank."""

    XMINUS = 0
    H = 1
    XPLUS = 2


class BasisElement(NamedTuple):
    kind: Kind
    index: int


def is_canonical(b: BasisElement) -> bool:
    if b.kind == Kind.H:
        return b.index >= 0
    return b.index >= 1


def compare(a: BasisElement, b: BasisElement) -> int:
    """Total order on canonical basis elements: -1, 0 or 1."""
    if a.kind != b.kind:
        return -1 if a.kind < b.kind else 1
    if a.index != b.index:
        return -1 if a.index < b.index else 1
    return 0


class LieElement:
    """Finite rational combination of canonical basis elements."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[BasisElement, Fraction] | None = None):
        self.coeffs = {b: c for b, c in (coeffs or {}).items() if c != 0}

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self):
        return self.coeffs.items()

    def support(self) -> list[BasisElement]:
        return sorted(self.coeffs)

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            out[b] = out.get(b, ZERO) + c
        return LieElement(out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            out[b] = out.get(b, ZERO) - c
        return LieElement(out)

    def __neg__(self) -> "LieElement":
        return LieElement({b: -c for b, c in self.coeffs.items()})

    def scale(self, c) -> "LieElement":
        c = Fraction(c)
        return LieElement({b: c * v for b, v in self.coeffs.items()})

    __rmul__ = scale
    __mul__ = scale

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if self.is_zero:
            return "0"
        names = {Kind.XMINUS: "xm", Kind.H: "h", Kind.XPLUS: "xp"}
        parts = []
        for b in self.support():
            c = self.coeffs[b]
            parts.append(f"{c}*{names[b.kind]}({b.index})")
        return " + ".join(parts)


LIE_ZERO = LieElement()


def generator(kind: Kind, index: int) -> LieElement:
    """Normalized single generator, for any integer index."""
    if kind == Kind.H:
        return LieElement({BasisElement(Kind.H, abs(index)): ONE})
    if index == 0:
        return LIE_ZERO
    if index < 0:
        return LieElement({BasisElement(kind, -index): -ONE})
    return LieElement({BasisElement(kind, index): ONE})


def xplus(j: int) -> LieElement:
    return generator(Kind.XPLUS, j)


def xminus(l: int) -> LieElement:
    return generator(Kind.XMINUS, l)


def h(k: int) -> LieElement:
    return generator(Kind.H, k)


# Scale of the [h, x] structure constants.  The true value is 2; tests
# corrupt this to exercise failure reporting in the verifier.
_H_X_SCALE = Fraction(2)


def bracket_basis(a: BasisElement, b: BasisElement) -> LieElement:
    """Structure constants on canonical basis elements."""
    if a.kind == b.kind:
        return LIE_ZERO
    if a.kind > b.kind:
        return -bracket_basis(b, a)
    # now a.kind < b.kind
    if a.kind == Kind.XMINUS and b.kind == Kind.XPLUS:
        # [x+_j, x-_l] = h_{j+l} - h_{|j-l|}
        j, l = b.index, a.index
        return -(h(j + l) - h(j - l))
    if a.kind == Kind.XMINUS and b.kind == Kind.H:
        # [h_k, x-_l] = -2(x-_{l+k} + x-_{l-k})
        l, k = a.index, b.index
        return _H_X_SCALE * (xminus(l + k) + xminus(l - k))
    # a.kind == H, b.kind == XPLUS: [h_k, x+_j] = 2(x+_{j+k} + x+_{j-k})
    k, j = a.index, b.index
    return _H_X_SCALE * (xplus(j + k) + xplus(j - k))


def bracket(a: LieElement, b: LieElement) -> LieElement:
    out: dict[BasisElement, Fraction] = {}
    for ba, ca in a.coeffs.items():
        for bb, cb in b.coeffs.items():
            term = bracket_basis(ba, bb)
            if term.is_zero:
                continue
            c = ca * cb
            for g, v in term.coeffs.items():
                out[g] = out.get(g, ZERO) + c * v
    return LieElement(out)


def tau(a: LieElement) -> LieElement:
    """Flip automorphism: x+ <-> x-, h -> -h."""
    out: dict[BasisElement, Fraction] = {}
    for b, c in a.coeffs.items():
        if b.kind == Kind.H:
            out[b] = -c
        else:
            flipped = Kind.XMINUS if b.kind == Kind.XPLUS else Kind.XPLUS
            out[BasisElement(flipped, b.index)] = c
    return LieElement(out)
