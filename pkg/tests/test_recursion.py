import random
from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from tyz.recursion import (
    CONVENTIONS,
    RadialJet,
    TruncationError,
    c_from_coefficients,
    c_r,
    c_r_simplified,
    calibrate,
    metric_jet,
    model_diastasis,
    s_jet,
    solve_homogeneous_recursion,
)

T = 12


def jet(*cs, T=T):
    return RadialJet(tuple(F(c) for c in cs), T)


def symbolic_c_r(D, r, convention):
    """c_r straight from the defining operator, with y and conj(y) independent."""
    y, yb, x = sp.symbols("y yb x")
    # Taylor polynomial of D is exact for every derivative the operator reads
    Dexpr = sp.series(D(x), x, 0, 3 * r + 2).removeO().subs(x, y * yb)
    g = sp.diff(Dexpr, y, yb)
    metric = g if convention == "variable" else g.subs({y: 0, yb: 0})
    S = sp.expand(-Dexpr + metric * y * yb)
    total = 0
    for k in range(r, 3 * r + 1):
        phi = sp.expand(g * S ** (k - r))
        total += sp.diff(phi, y, k, yb, k).subs({y: 0, yb: 0}) / (sp.factorial(k) * sp.factorial(k - r))
    return F(str(sp.nsimplify(total)))


def test_jet_arithmetic_examples():
    x = RadialJet.x(6)
    assert list((1 - x).reciprocal().coeffs) == [1] * 7
    assert list((x * 2 + x * x).coeffs[:3]) == [0, 2, 1]
    assert list((-x).log1p().coeffs) == [0, -1, F(-1, 2), F(-1, 3), F(-1, 4), F(-1, 5), F(-1, 6)]


rjets = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=6, max_size=6)


@given(rjets, rjets, rjets)
def test_jet_ring_laws(p, q, s):
    P, Q, S = (RadialJet(tuple(v), 5) for v in (p, q, s))
    assert (P * Q) * S == P * (Q * S)
    if P.coeffs[0] != 0:
        assert P * P.reciprocal() == RadialJet.constant(1, 5)


def test_metric_jet_examples():
    assert metric_jet(RadialJet.x(T)) == RadialJet.constant(1, T - 1)
    disk = metric_jet(model_diastasis("disk", T))
    assert list(disk.coeffs) == [t + 1 for t in range(T)]
    assert disk * (1 - RadialJet.x(T - 1)) ** 2 == RadialJet.constant(1, T - 1)
    dual = metric_jet(model_diastasis("dual-disk", T))
    assert list(dual.coeffs) == [(-1) ** t * (t + 1) for t in range(T)]


def test_s_jet_examples():
    flat = RadialJet.x(T)
    for conv in CONVENTIONS:
        assert all(c == 0 for c in s_jet(flat, conv).coeffs)
    disk = model_diastasis("disk", 8)
    assert list(s_jet(disk, "variable").coeffs[:4]) == [0, 0, F(3, 2), F(8, 3)]
    assert list(s_jet(disk, "base").coeffs[:4]) == [0, 0, F(-1, 2), F(-1, 3)]
    with pytest.raises(ValueError):
        s_jet(disk, "elsewhere")


@pytest.mark.parametrize(
    "model, sym, expected",
    [
        ("disk", lambda x: -sp.log(1 - x), {"variable": (5, 67), "base": (1, 1)}),
        ("dual-disk", lambda x: sp.log(1 + x), {"variable": (-5, 67), "base": (-1, 1)}),
    ],
)
def test_c_r_against_symbolic_oracle(model, sym, expected):
    D = model_diastasis(model, 9)
    for conv in CONVENTIONS:
        got = tuple(c_r(D, r, conv) for r in (1, 2))
        assert got == tuple(symbolic_c_r(sym, r, conv) for r in (1, 2))
        assert got == expected[conv]


def test_c_r_flat_and_truncation():
    for conv in CONVENTIONS:
        assert all(c_r(RadialJet.x(20), r, conv) == 0 for r in range(1, 7))
    with pytest.raises(TruncationError, match="T >= 7"):
        c_r(model_diastasis("disk", 5), 2)


def test_c_r_duality_sign_under_base_reading():
    disk, dual = model_diastasis("disk", 20), model_diastasis("dual-disk", 20)
    for r in range(1, 6):
        assert c_r(disk, r, "base") == (-1) ** r * c_r(dual, r, "base")
        assert c_r_simplified(disk, r) == (-1) ** r * c_r_simplified(dual, r)


@pytest.mark.parametrize("c, a", [([0, 0, 0], [0, 0, 0]), ([F(7, 3)], [F(-7, 3)]), ([1, 0], [-1, 1])])
def test_solve_examples(c, a):
    assert solve_homogeneous_recursion(c) == a


@settings(max_examples=50)
@given(st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=10), min_size=1, max_size=6))
def test_recursion_round_trip(a):
    assert solve_homogeneous_recursion(c_from_coefficients(a)) == a


def test_calibrate_flat():
    rows = calibrate("flat", 6)
    assert len(rows) == 12
    assert all(r["a_j_recursion"] == 0 and r["match"] for r in rows)


def test_calibrate_disk_report():
    rows = calibrate("disk", 2)
    by = {(r["convention"], r["j"]): r for r in rows}
    assert by["variable", 1]["a_j_recursion"] == -5 and not by["variable", 1]["match"]
    assert by["base", 1]["a_j_recursion"] == -1 and by["base", 1]["match"]
    assert by["base", 1]["a_j_truth"] == -1
    assert by["base", 1]["c_j_simplified"] == -2


def test_calibrate_custom_series():
    D = RadialJet(tuple(model_diastasis("disk", 8).coeffs), 8)
    rows = calibrate("custom", 2, ["base"], D)
    assert [r["a_j_recursion"] for r in rows] == [-1, 0]
    assert all(r["match"] is None for r in rows)


def test_input_validation():
    with pytest.raises(ValueError):
        s_jet(jet(0, 2, 1), "base")
    with pytest.raises(ValueError):
        metric_jet(jet(1, 1))
