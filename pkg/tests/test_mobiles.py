from collections import Counter

import pytest

from carto.mobiles import (Flavor, Mobile, MobileError, MobileTable, child_sequences, decode,
                           encode, enumerate_mobiles, right_local_max_whites, sample_uniform,
                           validate)
from carto.twopoint import solve_recurrence


def test_validate_examples():
    assert validate(Mobile("1(2)"), Flavor(2))
    assert not validate(Mobile("3(1)"), Flavor(2))
    assert validate(Mobile("1"), Flavor(2))
    assert not validate(Mobile("1(2,3)"), Flavor(2))
    assert not validate(Mobile("0(1)"), Flavor(2))
    assert validate(Mobile("0(1)"), Flavor(2, floating=False))
    assert validate(Mobile("1(2)"), Flavor(2), plain=True)
    assert not validate(Mobile("2(3)"), Flavor(2), plain=True)


def test_encode_round_trip():
    for text in ("1", "1(2)", "2(1(2)(3),1)(2)", "-1(0,-2)"):
        assert encode(decode(text)) == text
    with pytest.raises(MobileError):
        decode("1(2")
    with pytest.raises(MobileError):
        decode("x")


def test_right_local_max():
    # preorder ids: root white 0, child white 1
    assert right_local_max_whites(Mobile("1(2)")) == {1}
    assert right_local_max_whites(Mobile("1")) == {0}
    assert right_local_max_whites(Mobile("1(2(1))")) == {1}


def test_enumeration_examples():
    assert [m.encode() for m in enumerate_mobiles(Flavor(2), 1)] == ["1(1)", "1(2)"]
    assert enumerate_mobiles(Flavor(2), 0) == [Mobile("1")]
    assert [m.encode() for m in enumerate_mobiles(Flavor(2, descending=True), 1)] == ["1(2)"]
    with pytest.raises(MobileError):
        enumerate_mobiles(Flavor(2), 9)


def test_enumeration_is_valid_and_duplicate_free():
    for fl in (Flavor(2), Flavor(3), Flavor(2, descending=True), Flavor(None)):
        for n in range(4):
            ms = enumerate_mobiles(fl, n, 2)
            assert len(set(ms)) == len(ms)
            assert all(validate(m, fl) for m in ms)
            assert all(m.labels()[0] == 2 for m in ms)
            size = [m.n_black() if fl.p else m.n_edges() for m in ms]
            assert set(size) <= {n}


@pytest.mark.parametrize("tag, flavor, order", [
    ("general", Flavor(2), 6),
    ("bipartite", Flavor(2, descending=True), 6),
    ("3-hypermap", Flavor(3), 4),
    ("3-constellation", Flavor(3, descending=True), 4),
])
def test_counts_match_recurrence(tag, flavor, order):
    table = solve_recurrence(tag, 4, order)
    counts = MobileTable(flavor, order)
    for i in range(1, 5):
        assert [counts.count(i, n) for n in range(order + 1)] == table[("T", i)].coefficients()
    for i in range(1, 3):
        for n in range(4):
            assert len(enumerate_mobiles(flavor, n, i)) == counts.count(i, n)


def test_label_shift():
    fl = Flavor(2)
    for n in range(4):
        ms = enumerate_mobiles(fl, n, 1)
        shifted = {m.shifted(1) for m in ms}
        above = {m for m in enumerate_mobiles(fl, n, 2) if min(m.labels()) >= 2}
        assert shifted == above


def test_child_sequences_descending():
    assert child_sequences(1, 1, Flavor(2, descending=True)) == [(2,)]
    assert sorted(child_sequences(2, 2, Flavor(3, descending=True, floating=False))) == \
        [(1, 0), (1, 3), (4, 3)]


def test_sampler():
    assert sample_uniform(Flavor(2), 0, 7) == Mobile("1")
    table = MobileTable(Flavor(2), 1)
    hits = Counter(sample_uniform(Flavor(2), 1, s, table=table).encode() for s in range(2000))
    assert set(hits) == {"1(1)", "1(2)"}
    assert abs(hits["1(1)"] / 2000 - 0.5) < 0.05
    assert sample_uniform(Flavor(3), 4, 99) == sample_uniform(Flavor(3), 4, 99)
    with pytest.raises(MobileError):
        sample_uniform(Flavor(2), 3, 1, table=table)
