from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from carto.series import (Series, Series2, SeriesError, exp_series, invert_2param, log_series,
                          newton_solve, sqrt_series)


def S(*cs, prec=None):
    return Series(cs, 0, prec)


def test_difference_of_squares():
    assert S(1, 1, prec=4) * S(1, -1, prec=4) == S(1, 0, -1, prec=4)


def test_geometric():
    g = 1 / S(1, -1, prec=3)
    assert g.coefficients() == [1, 1, 1, 1]


def test_half_grid_closure():
    u = Series.sqrt_t(6)
    assert (u * u) == Series.t(6, 2)
    assert (u * u).on_integer_grid() == Series.t(3)


def test_truncation_never_raised():
    a = S(1, 2, 3, prec=5)
    b = S(1, 1, prec=2)
    assert (a * b).prec == 2
    assert (a + b).prec == 2
    with pytest.raises(SeriesError):
        a.truncate(3).truncate(4)


def test_division_by_zero_series():
    with pytest.raises(SeriesError):
        S(1, prec=3) / Series.zero(3)


def test_division_with_valuation():
    t = Series.t(6)
    q = (t + t * t) / t
    assert q.coefficients()[:2] == [1, 1]


def test_sqrt():
    assert sqrt_series(Series.one(5)) == Series.one(5)
    r = sqrt_series(S(1, -12, prec=4))
    assert r.coefficients() == [1, -6, -18, -108, -810]
    assert r * r == S(1, -12, prec=4)
    assert sqrt_series(Series.t(5, 2)) == Series.sqrt_t(5)


def test_sqrt_errors():
    with pytest.raises(SeriesError):
        sqrt_series(S(2, 1, prec=3))
    with pytest.raises(SeriesError):
        sqrt_series(Series.sqrt_t(5))


def test_log_exp():
    assert log_series(Series.one(4)).is_zero()
    lg = log_series(S(1, 1, prec=3))
    assert lg.coefficients() == [0, 1, Fraction(-1, 2), Fraction(1, 3)]
    f = S(1, 3, -2, 5, 7, prec=4)
    assert exp_series(log_series(f)) == f
    with pytest.raises(SeriesError):
        log_series(S(2, 1, prec=3))


def test_newton_tree_equations():
    t = Series.t(4)
    X = newton_solve([1, -1, 3 * t], Series.one(4))
    assert X.coefficients() == [1, 3, 18, 135, 1134]
    assert 1 + 3 * t * X * X == X
    Y = newton_solve([1, -1, 2 * t], Series.one(4))
    assert Y.coefficients() == [1, 2, 8, 40, 224]
    Z = newton_solve([-t, 1], Series.zero(4))
    assert Z == t


def test_newton_singular():
    t = Series.t(4)
    with pytest.raises(SeriesError):
        newton_solve([-t, 0, 1], Series.zero(4))


def test_laurent_tail():
    u = Series.sqrt_t(10)
    inv = 1 / (u + u * u)
    assert inv.lo == -1
    assert (inv * (u + u * u)) == Series.one(8, 2)


def test_substitute_neg_sqrt_and_parity():
    u = Series.sqrt_t(8)
    f = 1 + u + 3 * u * u
    g = f.substitute_neg_sqrt()
    assert (f + g).odd_part_vanishes()
    assert (f * g).odd_part_vanishes()
    assert not f.odd_part_vanishes()
    with pytest.raises(SeriesError):
        f.on_integer_grid()


def test_json_and_csv_round_trip():
    f = Series.from_dict({Fraction(-1, 2): 3, 0: 1, Fraction(5, 2): Fraction(-2, 7)}, 3, Fraction(1, 2))
    g = Series.from_json(f.to_json())
    assert g == f and g.prec == f.prec and g.den == 2
    rows = f.to_csv().strip().splitlines()
    assert rows[0] == "exponent,coefficient"
    assert rows[1] == "-1/2,3"


def test_series2_basics():
    t, z = Series2.t(3), Series2.z(3)
    one = Series2.const((1,), 3)
    f = (one + z * t) * (one - z * t)
    assert f.coeff(2) == (0, 0, -1)
    assert (one / (one - z * t)).coeff(3) == (0, 0, 0, 1)
    assert f.at_z(2) == Series([1, 0, -4], 0, 3)


def test_invert_2param_simple():
    # t = y (1 - y), z = a: y is the Catalan series and a = z
    def tu(y, a):
        return Series2.const((1,), y.prec) - y

    def zu(y, a):
        return Series2.const((1,), y.prec)

    y, a = invert_2param(tu, zu, 5)
    assert [y.coeff(n, 0) for n in range(6)] == [0, 1, 1, 2, 5, 14]
    assert a == Series2.z(5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6),
       st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_division_inverts_multiplication(a, b):
    b = [1] + b  # unit constant term
    A, B = Series(a, 0, 5), Series(b, 0, 5)
    assert (A / B) * B == A


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5), st.integers(0, 4))
def test_integer_power(a, k):
    A = Series([1] + a, 0, 5)
    P = Series.one(5)
    for _ in range(k):
        P = P * A
    assert A ** k == P
