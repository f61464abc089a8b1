"""Exact arithmetic for tensor powers of the complex Clifford algebra Cl3.

Encoding
--------
A single-factor monomial in the generators g1, g2, g3 is a 3-bit mask
(bit k-1 set means g_k is present), so ``0`` is the unit and ``0b111`` is
g1 g2 g3.  A tensor-product monomial ("blade") over m factors is a tuple of
m masks.  Blades are kept in canonical form: generator indices ascending
inside each factor, sign carried by the coefficient.

A multivector is a finite sum coeff * blade with exact GaussianRational
coefficients.  All values are immutable and every operation is a pure
function, so everything here is safe to share across threads.

The generators obey g_k^2 = 1 and g_j g_k = -g_k g_j (j != k).  The tensor
product is ungraded: factor signs multiply independently.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Tuple

from .scalars import GaussianRational, ONE

Blade = Tuple[int, ...]

#: Soft cap on tensor factors for the exact layer (8**m blades exist).
MAX_FACTORS = 6

GENERATOR_MASKS = {1: 0b001, 2: 0b010, 3: 0b100}
FACTOR_BLADE_COUNT = 8


def factor_blade_product(x: int, y: int) -> tuple[int, int]:
    """Multiply two single-factor monomials; returns (sign, mask).

    The sign counts the transpositions needed to sort the concatenated
    generator list and cancel squares (g_k^2 = 1, so the result mask is
    x XOR y).
    """
    if not 0 <= x < 8 and 0 <= y < 8:
        raise ValueError("factor masks must be in range(8)")
    sign = 1
    acc = x
    for bit in range(3):
        if y & (1 << bit):
            # g_{bit+1} moves left past every generator in acc above it
            if bin(acc >> (bit + 1)).count("1") % 2:
                sign = -sign
            acc ^= 1 << bit
    return sign, acc


def blade_product(x: Blade, y: Blade) -> tuple[int, Blade]:
    """Factor-wise product of two blades; returns (sign, blade)."""
    if len(x) != len(y):
        raise ValueError(f"factor count mismatch: {len(x)} vs {len(y)}")
    sign = 1
    masks = []
    for fx, fy in zip(x, y):
        s, fz = factor_blade_product(fx, fy)
        sign *= s
        masks.append(fz)
    return sign, tuple(masks)


def blade_grade(blade: Blade) -> int:
    """Total number of generators appearing in the blade."""
    return sum(bin(mask).count("1") for mask in blade)


def blades_commute(x: Blade, y: Blade) -> bool:
    """True when x y = y x including signs."""
    sx, zx = blade_product(x, y)
    sy, zy = blade_product(y, x)
    return zx == zy and sx == sy


def unit_blade(m: int) -> Blade:
    return (0,) * m


def gamma_blade(m: int, factor: int, *generators: int) -> Blade:
    """Blade with the given generators (ascending) in one factor, 0-indexed."""
    if not 0 <= factor < m:
        raise ValueError(f"factor index {factor} out of range for m={m}")
    mask = 0
    for g in generators:
        mask |= GENERATOR_MASKS[g]
    masks = [0] * m
    masks[factor] = mask
    return tuple(masks)


class Multivector:
    """Canonical exact linear combination of blades over a fixed factor count.

    Zero coefficients are never stored; two multivectors are equal iff their
    term mappings are equal.  Instances are immutable.
    """

    __slots__ = ("num_factors", "_terms")

    def __init__(self, num_factors: int, terms=None):
        if num_factors < 1:
            raise ValueError("num_factors must be >= 1")
        clean = {}
        for blade, coeff in (terms or {}).items():
            if len(blade) != num_factors:
                raise ValueError("blade factor count does not match multivector")
            coeff = GaussianRational.of(coeff)
            if not coeff.is_zero():
                clean[blade] = coeff
        object.__setattr__(self, "num_factors", num_factors)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- construction ---------------------------------------------------

    @staticmethod
    def zero(m: int) -> "Multivector":
        return Multivector(m, {})

    @staticmethod
    def unit(m: int) -> "Multivector":
        return Multivector(m, {unit_blade(m): ONE})

    @staticmethod
    def from_blade(blade: Blade, coeff=1) -> "Multivector":
        return Multivector(len(blade), {blade: GaussianRational.of(coeff)})

    # -- views ------------------------------------------------------------

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def blades(self) -> list[Blade]:
        """Blades in canonical (lexicographic) order."""
        return sorted(self._terms)

    def coeff(self, blade: Blade) -> GaussianRational:
        return self._terms.get(blade, GaussianRational(0))

    def is_zero(self) -> bool:
        return not self._terms

    def single_blade(self) -> tuple[GaussianRational, Blade]:
        """The (coeff, blade) of a one-term multivector; error otherwise."""
        if len(self._terms) != 1:
            raise ValueError("multivector is not a single blade")
        blade, coeff = next(iter(self._terms.items()))
        return coeff, blade

    # -- ring operations ----------------------------------------------------

    def _check_factors(self, other: "Multivector"):
        if self.num_factors != other.num_factors:
            raise ValueError(
                f"factor count mismatch: {self.num_factors} vs {other.num_factors}"
            )

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check_factors(other)
        acc = dict(self._terms)
        for blade, coeff in other._terms.items():
            acc[blade] = acc.get(blade, GaussianRational(0)) + coeff
        return Multivector(self.num_factors, acc)

    def __neg__(self) -> "Multivector":
        return Multivector(self.num_factors, {b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def scale(self, scalar) -> "Multivector":
        scalar = GaussianRational.of(scalar)
        return Multivector(
            self.num_factors, {b: c * scalar for b, c in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._check_factors(other)
            acc: dict[Blade, GaussianRational] = {}
            for bx, cx in self._terms.items():
                for by, cy in other._terms.items():
                    sign, bz = blade_product(bx, by)
                    product = cx * cy
                    if sign < 0:
                        product = -product
                    acc[bz] = acc.get(bz, GaussianRational(0)) + product
            return Multivector(self.num_factors, acc)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.num_factors == other.num_factors and self._terms == other._terms

    def __hash__(self):
        return hash((self.num_factors, frozenset(self._terms.items())))

    def __repr__(self):
        from .parsing import render_element

        return f"Multivector({self.num_factors}, {render_element(self)!r})"


def mv_add(a: Multivector, b: Multivector) -> Multivector:
    return a + b


def mv_scale(a: Multivector, scalar) -> Multivector:
    return a.scale(scalar)


def mv_multiply(a: Multivector, b: Multivector) -> Multivector:
    return a * b


def mv_tensor(a: Multivector, b: Multivector) -> Multivector:
    """Ungraded tensor product; factor counts add."""
    acc = {}
    for bx, cx in a.terms.items():
        for by, cy in b.terms.items():
            acc[bx + by] = cx * cy
    return Multivector(a.num_factors + b.num_factors, acc)


def idempotent_eps(m: int) -> Multivector:
    """The product idempotent (1/2 (1 + g3))^{tensor m}: 2^m terms at 2^-m."""
    if m < 1:
        raise ValueError("need at least one tensor factor")
    if m > MAX_FACTORS:
        raise ValueError(f"factor count {m} exceeds the supported limit {MAX_FACTORS}")
    weight = Fraction(1, 2 ** m)
    g3 = GENERATOR_MASKS[3]
    terms = {}
    for bits in range(2 ** m):
        blade = tuple(g3 if bits & (1 << f) else 0 for f in range(m))
        terms[blade] = GaussianRational(weight)
    return Multivector(m, terms)


def into_ideal(x: Multivector) -> Multivector:
    """Right-multiply into the ideal generated by the product idempotent."""
    return x * idempotent_eps(x.num_factors)


def is_ideal_element(x: Multivector) -> bool:
    """Absorption test: x * eps == x, exactly."""
    return into_ideal(x) == x


def encode_qubit(a, b, m: int = 1) -> Multivector:
    """State a*g1*eps + b*g3*eps in the minimal-left-ideal encoding.

    Normalization of (a, b) is the caller's concern.  For m > 1 the same
    single-qubit pattern is placed in the first factor.
    """
    a = GaussianRational.of(a)
    b = GaussianRational.of(b)
    carrier = Multivector(m, {gamma_blade(m, 0, 1): a, gamma_blade(m, 0, 3): b})
    return into_ideal(carrier)
