import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tyz.algebra import (
    LhssFactor,
    LhssSpec,
    closed_form,
    convolve,
    dualize,
    flatness_certificate,
    inequality_sweep,
    lhss_coefficients,
    odd_vanishing_check,
    random_lhss_spec,
    reduced_inequality_holds,
    scale,
)
from tyz.domains import DomainInvariants, enumerate_invariants
from tyz.kempf import CoefficientSequence, kempf_coefficients

from .oracles import cauchy

DISK = DomainInvariants(1, 2, 0)
I22 = DomainInvariants(2, 2, 0)
III2 = DomainInvariants(2, 1, 0)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
sequences = st.lists(rationals, min_size=0, max_size=6).map(lambda t: CoefficientSequence((F(1), *t)))
lambdas = st.fractions(min_value=F(1, 5), max_value=5, max_denominator=9).filter(lambda x: x > 0)


def seq(*xs):
    return CoefficientSequence(tuple(F(x) for x in xs))


@pytest.mark.parametrize(
    "inv, a1, q, a2",
    [(DISK, -1, 4, 0), (I22, -8, 40, 23), (III2, F(-9, 2), 21, F(13, 2))],
)
def test_closed_form(inv, a1, q, a2):
    rep = closed_form(inv)
    assert (rep.a1, rep.q, rep.a2) == (a1, q, a2)
    assert rep.defect == rep.a2 - rep.a1**2 / 2


@pytest.mark.parametrize("inv, defect", [(DISK, F(-1, 2)), (I22, -9), (III2, F(-29, 8))])
def test_defect_examples(inv, defect):
    assert closed_form(inv).defect == defect


def test_closed_form_matches_polynomial_route():
    for inv in enumerate_invariants(8, 8, 8):
        s = kempf_coefficients(inv)
        rep = closed_form(inv)
        assert (s.get(1), s.get(2)) == (rep.a1, rep.a2)


def test_inequality_sweep_small():
    sweep = inequality_sweep(3, 3, 3)
    assert len(sweep.rows) == 48
    assert sweep.max_defect < 0
    # the disk (r=1, b=0) is the least negative entry of this grid
    assert sweep.max_defect == F(-1, 2)


@given(st.integers(1, 60), st.integers(0, 60), st.integers(0, 60))
def test_defect_negative_everywhere(r, a, b):
    inv = DomainInvariants(r, a, b)
    assert closed_form(inv).defect < 0
    assert reduced_inequality_holds(inv)


def test_dualize_examples():
    assert list(dualize(seq(1, -1))) == [1, 1]
    assert list(dualize(seq(1, -8, 23, -28, 12))) == [1, 8, 23, 28, 12]
    assert list(dualize(seq(1, 0, 0))) == [1, 0, 0]


def test_scale_examples():
    assert list(scale(seq(1, -1), 1)) == [1, -1]
    assert list(scale(seq(1, -8, 23, -28, 12), 2)) == [1, -4, F(23, 4), F(-7, 2), F(3, 4)]
    with pytest.raises(ValueError):
        scale(seq(1, 1), 0)
    with pytest.raises(ValueError):
        scale(seq(1, 1), -2)


def test_convolve_examples():
    assert list(convolve(seq(1, -1), seq(1, 1))) == [1, 0, -1]
    assert list(convolve(seq(1, 0), seq(1, 1, 0))) == [1, 1, 0, 0]
    s = seq(1, 3, F(1, 2))
    assert convolve(seq(1), s) == s


@given(sequences, sequences)
def test_convolve_matches_oracle_and_commutes(s, t):
    assert list(convolve(s, t)) == cauchy(list(s), list(t))
    assert convolve(s, t) == convolve(t, s)


@given(sequences, sequences, sequences)
def test_convolve_associative(s, t, u):
    assert convolve(convolve(s, t), u) == convolve(s, convolve(t, u))


@given(sequences, sequences, lambdas)
def test_homomorphisms(s, t, lam):
    assert dualize(convolve(s, t)) == convolve(dualize(s), dualize(t))
    assert scale(convolve(s, t), lam) == convolve(scale(s, lam), scale(t, lam))
    assert scale(dualize(s), lam) == dualize(scale(s, lam))
    assert dualize(dualize(s)) == s
    assert scale(scale(s, lam), 1 / lam) == s


@given(sequences, sequences)
def test_product_rule_first_entries(s, t):
    c = convolve(s, t)
    assert c.get(1) == s.get(1) + t.get(1)
    assert c.get(2) == s.get(2) + t.get(2) + s.get(1) * t.get(1)


def test_lhss_examples():
    assert list(lhss_coefficients(LhssSpec((), 1))) == [1, 0]
    pair = LhssSpec((LhssFactor(DISK), LhssFactor(DISK, dual=True)))
    assert list(lhss_coefficients(pair)) == [1, 0, -1]
    cp1 = LhssSpec((LhssFactor(DISK, dual=True),), flat_dim=1)
    assert lhss_coefficients(cp1).padded(4) == (1, 1, 0, 0)


def test_lhss_rank_one_a_independent():
    a = LhssSpec((LhssFactor(DomainInvariants(1, 2, 3), True, F(2, 3)),), 1)
    b = LhssSpec((LhssFactor(DomainInvariants(1, 7, 3), True, F(2, 3)),), 1)
    assert lhss_coefficients(a) == lhss_coefficients(b)


def test_flatness_examples():
    v = flatness_certificate(LhssSpec((), 3))
    assert v.flat and v.c1 == 0 and v.c2 == 0
    v = flatness_certificate(LhssSpec((LhssFactor(DISK), LhssFactor(DISK, dual=True))))
    assert not v.flat and v.c1 == 0 and v.c2 == -1
    assert v.identity_checked and v.defect_sum == 2 * F(-1, 2)
    v = flatness_certificate(LhssSpec((LhssFactor(I22),)))
    assert not v.flat and v.c1 == -8 and not v.identity_checked


def test_flatness_random_specs():
    rng = random.Random(7)
    for i in range(60):
        spec = random_lhss_spec(rng, max_dim=10, balanced=bool(i % 2))
        v = flatness_certificate(spec)
        assert (v.c1, v.c2) != (0, 0)
        if i % 2:
            assert v.identity_checked


@pytest.mark.parametrize("inv", [DISK, I22, III2])
def test_odd_vanishing(inv):
    prod = odd_vanishing_check(inv)
    assert all(prod[j] == 0 for j in range(1, len(prod), 2))
    s = kempf_coefficients(inv)
    assert list(prod) == cauchy(list(s), list(dualize(s)))


def test_odd_vanishing_disk_value():
    assert list(odd_vanishing_check(DISK)) == [1, 0, -1]


def test_spec_json_roundtrip():
    obj = {
        "factors": [
            {"family": "I", "params": [2, 3], "dual": True, "lambda": "2/3"},
            {"rab": [2, 1, 0], "dual": False, "lambda": "1/1"},
        ],
        "flat_dim": 2,
    }
    spec = LhssSpec.from_json(obj)
    assert spec.to_json() == obj
    assert spec.dimension == 2 + 6 + 3


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4), st.integers(0, 4), lambdas)
def test_dual_scaled_defect_invariance(r, a, b, lam):
    inv = DomainInvariants(r, a, b)
    s = scale(kempf_coefficients(inv), lam)
    d = dualize(s)
    assert s.get(2) - s.get(1) ** 2 / 2 == d.get(2) - d.get(1) ** 2 / 2 == closed_form(inv).defect / lam**2
