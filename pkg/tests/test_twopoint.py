from fractions import Fraction

import pytest

from carto.series import Series, sqrt_series
from carto.twopoint import (ALIASES, FAMILIES, TwoPointError, asymptotic_constants,
                            characteristic_roots, closed_form, continued_fraction_RS,
                            cpq_identity_check, estimate_asymptotics, family, solve_recurrence,
                            tree_series, verify_ansatz)


def test_family_lookup():
    assert family("general").tag == "GeneralMap"
    assert family("GeneralMap") is FAMILIES["GeneralMap"]
    assert len(ALIASES) == len(FAMILIES) == 8
    with pytest.raises(TwoPointError):
        family("cubic")


def test_general_recurrence_examples():
    tab = solve_recurrence("general", 3, 4)
    assert tab["T", 1].coefficients()[:3] == [1, 2, 9]
    assert tab["T", 0].is_zero()
    assert tab["R", 1][1] == 1
    assert (tab["S", 0] * tab["S", 0]).coeff(1) == 1


def a_window(tag, order):
    fam = family(tag)
    return 3 + fam.reach * (order + 1) + 2


@pytest.mark.parametrize("tag", ["general", "bipartite", "3-constellation", "general2"])
def test_window_padding_independent(tag):
    order = 4
    a = solve_recurrence(tag, 3, order)
    b = solve_recurrence(tag, 3, order, window=a_window(tag, order) + 5)
    for i in range(4):
        assert a["T", i] == b["T", i]


def test_two_param_reduces_at_z_one():
    one = solve_recurrence("general", 3, 5)
    two = solve_recurrence("general2", 3, 5)
    for i in range(1, 4):
        assert two["T", i].at_z(1) == one["T", i]
        assert two["U", i].at_z(1) == one["T", i]


def test_closed_R_general():
    # R = (1 + 12t - sqrt(1 - 12t)) / (18t) is the limit of R_i
    t = Series.t(7)
    closed = (1 + 12 * t - sqrt_series(1 - 12 * t)) / (18 * t)
    assert closed.coefficients()[:4] == [1, 1, 6, 45]
    tab = closed_form("general", 8, 6)
    assert tab["R", 8].coefficients()[:4] == [1, 1, 6, 45]


def test_closed_R_bipartite():
    T, _ = tree_series("bipartite", 8)
    t = Series.t(8)
    R = 1 + t * T * T
    closed = (1 - sqrt_series(1 - 8 * Series.t(9)) + 4 * Series.t(9)) / (8 * Series.t(9))
    assert R.coefficients()[:8] == closed.coefficients()[:8]


@pytest.mark.parametrize("tag", ["general", "bipartite", "hypermap"])
def test_closed_equals_recurrence(tag):
    a = solve_recurrence(tag, 5, 12)
    b = closed_form(tag, 5, 12)
    for i in range(1, 6):
        assert a["T", i] == b["T", i]


def test_three_roots_relation():
    y1, y2, _ = characteristic_roots("3-hypermap", 10)
    s = y1 + 1 / y1 + y2 + 1 / y2 + 6
    assert all(c == 0 for c in s.coefficients())
    y1, y2, _ = characteristic_roots("3-constellation", 10)
    s = y1 + 1 / y1 + y2 + 1 / y2 + 2
    assert all(c == 0 for c in s.coefficients())


def test_verify_ansatz():
    rep = verify_ansatz("general2", 4, 6)
    assert rep["ok"]
    with pytest.raises(TwoPointError):
        verify_ansatz("general", 3, 6)


def test_continued_fraction_matches():
    R, S = continued_fraction_RS("general", 8)
    T, _ = tree_series("general", 8)
    R_lim = (1 + Series.t(8) * T * T).regrid(2)
    assert R.coefficients()[:16] == R_lim.coefficients()[:16]
    assert (S * S).coefficients()[:16] == (Series.t(8) * T * T).regrid(2).coefficients()[:16]


def test_asymptotic_constants():
    g1 = asymptotic_constants("general", 1)
    g0 = asymptotic_constants("general", 0)
    assert g1["e_prev"] == Fraction(28, 9) and g1["v"] == Fraction(21, 8)
    assert g0["e_same"] == Fraction(8, 9)
    assert g0["e_same"] + g0["e_next"] == 4
    assert asymptotic_constants("bipartite", 1)["e_prev"] == 3


def test_estimator():
    with pytest.raises(TwoPointError):
        estimate_asymptotics("general", 1, n_max=40)
    est = estimate_asymptotics("bipartite", 1, n_max=80)
    assert abs(est - 3) / 3 < 0.01


@pytest.mark.parametrize("p, t", [(2, Fraction(1, 50)), (3, Fraction(1, 100)), (4, Fraction(1, 200))])
def test_cpq(p, t):
    rep = cpq_identity_check(p, t)
    assert rep["ok"], rep
    if p == 2:
        assert rep["pairs"] == 0


def test_cpq_errors():
    with pytest.raises(TwoPointError):
        cpq_identity_check(7, Fraction(1, 1000))
    with pytest.raises(TwoPointError):
        cpq_identity_check(3, Fraction(1, 2))
