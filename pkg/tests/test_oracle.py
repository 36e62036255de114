import pytest

from carto.oracle import (OracleError, cumulative, enumerate_family, enumerate_labelled,
                          enumerate_rooted_maps, pointed_rooted_profile, sampler_check,
                          tutte_count)
from carto.series import Series
from carto.twopoint import solve_recurrence, tree_series


def test_rooted_map_counts():
    assert [len(enumerate_rooted_maps(n)) for n in (1, 2, 3)] == [2, 9, 54]
    assert [tutte_count(n) for n in (1, 2, 3, 4)] == [2, 9, 54, 378]
    assert len(enumerate_rooted_maps(4)) == 378


def test_caps_and_errors():
    with pytest.raises(OracleError):
        enumerate_rooted_maps(0)
    with pytest.raises(OracleError):
        enumerate_family("general", 6)
    with pytest.raises(OracleError):
        enumerate_family("cubic", 1)
    with pytest.raises(OracleError):
        enumerate_labelled(0)
    with pytest.raises(OracleError):
        enumerate_labelled(1, "loose")


def test_pointed_totals():
    T, _ = tree_series("general", 4)
    assert [pointed_rooted_profile(n).count for n in (1, 2, 3, 4)] == [3, 18, 135, 1134]
    assert [pointed_rooted_profile(n).count for n in (1, 2, 3, 4)] == T.coefficients()[1:]


def test_bipartite_pointed_count():
    T, _ = tree_series("bipartite", 3)
    t = Series.t(3)
    assert len(enumerate_family("bipartite", 2)) == 3
    assert pointed_rooted_profile(2, "bipartite").count == 2 * (t * T * T)[2]


def test_cumulative_profiles_match_R_and_S():
    table = solve_recurrence("general", 4, 4)
    for n in (1, 2, 3, 4):
        prof = pointed_rooted_profile(n).by_type
        for i in range(1, 5):
            r = cumulative(prof, lambda k, j: k == j - 1 and j <= i)
            assert r == table[("R", i)][n]
            # S_i^2 counts root edges of type (j, j) with j <= i
            s = cumulative(prof, lambda k, j: k == j and j <= i)
            assert s == (table[("S", i)] * table[("S", i)]).coeff(n)


def test_three_hypermap_single_face():
    # R_{i1,i2,i3} is cumulative over types shifted down by a common amount
    prof = pointed_rooted_profile(1, "3-hypermap").by_type
    table = solve_recurrence("3-hypermap", 3, 2)
    for key, series in table.series["R3"].items():
        want = cumulative(prof, lambda a, b, c: a - key[0] == b - key[1] == c - key[2] <= 0)
        assert series[1] == want


def test_labelled_single_edge():
    inst = enumerate_labelled(1, "suitable")
    assert len(inst) == 2 and all(sorted(lab) == [0, 1] for _, lab in inst)
    assert len(enumerate_labelled(1, "well")) == 1


def test_sampler_small():
    rep = sampler_check(1, 3000, 11)
    assert rep["classes"] == rep["hit"] == 3 and rep["unknown"] == 0
    assert rep == sampler_check(1, 3000, 11)
