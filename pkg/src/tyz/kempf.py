"""Kempf distortion function of an irreducible bounded symmetric domain.

For the metric ``g_B / genus`` the distortion function is the Gamma product

    eps(m) = prod_{j=1..r} Gamma(m - (j-1) a/2) / Gamma(m - d/r - (j-1) a/2)

which telescopes into a monic polynomial of degree ``d``. Everything here is
exact: offsets are integers or half-integers, roots are rationals, and the
expansion runs over integers after clearing denominators.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .domains import DomainInvariants


class NotPolynomial(ArithmeticError):
    """The Gamma ratio does not telescope under sorted positional pairing."""


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial in ``m`` with coefficients in descending powers."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if not coeffs:
            coeffs = (Fraction(0),)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return self.coefficients[0] == 1

    def __call__(self, m) -> Fraction:
        acc = Fraction(0)
        for c in self.coefficients:
            acc = acc * m + c
        return acc

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coefficients": [[str(c.numerator), str(c.denominator)] for c in self.coefficients],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RationalPolynomial":
        poly = cls(tuple(Fraction(int(n), int(d)) for n, d in obj["coefficients"]))
        if poly.degree != obj["degree"]:
            raise ValueError(f"degree {obj['degree']} does not match {len(obj['coefficients'])} coefficients")
        return poly


@dataclass(frozen=True)
class GammaOffsetPair:
    numerator_offsets: tuple[Fraction, ...]
    denominator_offsets: tuple[Fraction, ...]


@dataclass(frozen=True)
class LinearFactorProduct:
    """``prod (m - t)`` over the multiset ``roots``."""

    roots: tuple[Fraction, ...]


@dataclass(frozen=True)
class CoefficientSequence:
    """TYZ coefficients ``(a_0, a_1, ...)`` with ``a_0 = 1``."""

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(Fraction(e) for e in self.entries)
        if not entries or entries[0] != 1:
            raise ValueError(f"coefficient sequence must start with 1, got {entries[:1]}")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, j):
        return self.entries[j]

    def __iter__(self):
        return iter(self.entries)

    def get(self, j: int) -> Fraction:
        """``a_j``, with ``a_j = 0`` past the end of the finite expansion."""
        return self.entries[j] if 0 <= j < len(self.entries) else Fraction(0)

    def padded(self, length: int) -> tuple[Fraction, ...]:
        return tuple(self.get(j) for j in range(length))


def gamma_offsets(inv: DomainInvariants) -> GammaOffsetPair:
    shift = Fraction(inv.dimension, inv.r)
    num = tuple(Fraction((j - 1) * inv.a, 2) for j in range(1, inv.r + 1))
    return GammaOffsetPair(num, tuple(shift + v for v in num))


def telescope(pair: GammaOffsetPair) -> LinearFactorProduct:
    """Cancel Gamma ratios class by class.

    Offsets sharing a fractional part are sorted and paired positionally; a
    pair ``(nu, delta)`` with ``delta - nu = k`` contributes the roots
    ``nu + 1, ..., nu + k``.
    """
    if len(pair.numerator_offsets) != len(pair.denominator_offsets):
        raise NotPolynomial("numerator and denominator offset counts differ")
    num_cls: dict[Fraction, list[Fraction]] = defaultdict(list)
    den_cls: dict[Fraction, list[Fraction]] = defaultdict(list)
    for v in pair.numerator_offsets:
        num_cls[v - math.floor(v)].append(v)
    for v in pair.denominator_offsets:
        den_cls[v - math.floor(v)].append(v)
    if set(num_cls) != set(den_cls):
        raise NotPolynomial(f"residue classes differ: {sorted(num_cls)} vs {sorted(den_cls)}")
    roots: list[Fraction] = []
    for cls in sorted(num_cls):
        nums, dens = sorted(num_cls[cls]), sorted(den_cls[cls])
        if len(nums) != len(dens):
            raise NotPolynomial(f"class {cls}: {len(nums)} numerator vs {len(dens)} denominator offsets")
        for nu, delta in zip(nums, dens):
            k = delta - nu
            if k.denominator != 1 or k < 0:
                raise NotPolynomial(f"pair ({nu}, {delta}) has shift {k}")
            roots.extend(nu + t for t in range(1, int(k) + 1))
    return LinearFactorProduct(tuple(roots))


def _lcm_denominator(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return den


def expand(factors: LinearFactorProduct) -> RationalPolynomial:
    # substitute y = L m to expand over the integers: prod (m - t) = L^-d prod (y - L t)
    L = _lcm_denominator(factors.roots)
    coeffs = [1]
    for t in factors.roots:
        s = int(t * L)
        coeffs = [c - s * p for c, p in zip(coeffs + [0], [0] + coeffs)]
    return RationalPolynomial(tuple(Fraction(c, L**j) for j, c in enumerate(coeffs)))


def kempf_polynomial(inv: DomainInvariants) -> RationalPolynomial:
    return expand(telescope(gamma_offsets(inv)))


def coefficients(p: RationalPolynomial) -> CoefficientSequence:
    if not p.is_monic:
        raise ValueError(f"expected a monic polynomial, leading coefficient is {p.coefficients[0]}")
    return CoefficientSequence(p.coefficients)


def kempf_coefficients(inv: DomainInvariants) -> CoefficientSequence:
    return coefficients(kempf_polynomial(inv))
