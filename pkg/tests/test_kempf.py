from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tyz.domains import DomainInvariants, enumerate_invariants
from tyz.kempf import (
    CoefficientSequence,
    GammaOffsetPair,
    LinearFactorProduct,
    NotPolynomial,
    RationalPolynomial,
    coefficients,
    expand,
    gamma_offsets,
    kempf_polynomial,
    telescope,
)

from .oracles import gamma_product, vieta

I22 = DomainInvariants(2, 2, 0)
III2 = DomainInvariants(2, 1, 0)
DISK = DomainInvariants(1, 2, 0)


@pytest.mark.parametrize(
    "inv, num, den",
    [
        (I22, [0, 1], [2, 3]),
        (III2, [0, F(1, 2)], [F(3, 2), 2]),
        (DISK, [0], [1]),
    ],
)
def test_gamma_offsets(inv, num, den):
    pair = gamma_offsets(inv)
    assert list(pair.numerator_offsets) == num
    assert list(pair.denominator_offsets) == den


@pytest.mark.parametrize(
    "num, den, roots",
    [
        ([0, 1], [2, 3], [1, 2, 2, 3]),
        ([0, F(1, 2)], [F(3, 2), 2], [1, 2, F(3, 2)]),
        ([0], [1], [1]),
    ],
)
def test_telescope(num, den, roots):
    out = telescope(GammaOffsetPair(tuple(map(F, num)), tuple(map(F, den))))
    assert sorted(out.roots) == sorted(map(F, roots))


@pytest.mark.parametrize(
    "num, den",
    [
        ([0], [F(1, 2)]),  # class mismatch
        ([0, F(1, 2)], [1, 2]),  # class cardinalities differ
        ([2], [1]),  # negative shift
    ],
)
def test_telescope_rejects(num, den):
    with pytest.raises(NotPolynomial):
        telescope(GammaOffsetPair(tuple(map(F, num)), tuple(map(F, den))))


@pytest.mark.parametrize(
    "roots, coeffs",
    [
        ([1, 2, 2, 3], [1, -8, 23, -28, 12]),
        ([1, 2, F(3, 2)], [1, F(-9, 2), F(13, 2), -3]),
        ([], [1]),
    ],
)
def test_expand(roots, coeffs):
    poly = expand(LinearFactorProduct(tuple(map(F, roots))))
    assert list(poly.coefficients) == coeffs
    assert list(poly.coefficients) == vieta(roots)


def test_kempf_examples():
    assert list(kempf_polynomial(DISK).coefficients) == [1, -1]
    assert list(kempf_polynomial(I22).coefficients) == [1, -8, 23, -28, 12]
    for n in range(1, 8):
        assert list(kempf_polynomial(DomainInvariants(1, 2, n - 1)).coefficients) == vieta(range(1, n + 1))


@pytest.mark.parametrize(
    "poly, seq",
    [([1, -1], [1, -1]), ([1, -8, 23, -28, 12], [1, -8, 23, -28, 12]), ([1, F(-9, 2), F(13, 2), -3], [1, F(-9, 2), F(13, 2), -3])],
)
def test_coefficients(poly, seq):
    assert list(coefficients(RationalPolynomial(tuple(poly)))) == seq


def test_coefficients_rejects_non_monic():
    with pytest.raises(ValueError):
        coefficients(RationalPolynomial((2, 1)))
    with pytest.raises(ValueError):
        CoefficientSequence((F(0), F(1)))


def test_sequence_padding():
    seq = CoefficientSequence((1, 1))
    assert seq.get(5) == 0
    assert seq.padded(4) == (1, 1, 0, 0)


def test_sweep_structure():
    for inv in enumerate_invariants(8, 8, 8):
        roots = telescope(gamma_offsets(inv)).roots
        assert len(roots) == inv.dimension
        assert sum(roots) == F(inv.genus * inv.dimension, 2)
        poly = kempf_polynomial(inv)
        assert poly.is_monic and poly.degree == inv.dimension


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_rank_one_independent_of_a(a1, a2, b):
    assert kempf_polynomial(DomainInvariants(1, a1, b)) == kempf_polynomial(DomainInvariants(1, a2, b))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 5), st.integers(0, 5))
def test_polynomial_matches_gamma_product(r, a, b):
    inv = DomainInvariants(r, a, b)
    poly = kempf_polynomial(inv)
    m0 = inv.genus * inv.dimension + 1
    for m in range(m0, m0 + 20):
        assert poly(m) == gamma_product(m, r, a, b)


def test_json_roundtrip():
    poly = kempf_polynomial(III2)
    obj = poly.to_json()
    assert obj == {"degree": 3, "coefficients": [["1", "1"], ["-9", "2"], ["13", "2"], ["-3", "1"]]}
    assert RationalPolynomial.from_json(obj) == poly
