from itertools import product

import pytest

from carto.bijections import geodesic_labels
from carto.labels import (CyclicSequence, LabelError, complement, completion, face_type,
                          is_descending, is_lukasiewicz, is_stretched, local_extrema, opp,
                          right_local_extrema, validate_mirror, validate_suitable,
                          validate_well_labelled)
from carto.maps import blow_up, build_map
from carto.oracle import _general_hypermaps


def edge():
    return build_map([1, 2], [2, 1], one_based=True)


def path3():
    return build_map([2, 1, 3, 4], [3, 4, 1, 2], one_based=True)


def test_cyclic_equality():
    assert CyclicSequence([1, 2, 3]) == CyclicSequence([3, 1, 2])
    assert CyclicSequence([1, 2, 3], rooted=True) != CyclicSequence([3, 1, 2], rooted=True)
    assert hash(CyclicSequence([0, 1])) == hash(CyclicSequence([1, 0]))


def test_validate_suitable():
    assert validate_suitable(edge(), [0, 1])
    assert not validate_suitable(edge(), [0, 0])
    m = path3()
    lab = [1 if m.degree(v) == 2 else 0 for v in range(3)]
    assert validate_suitable(m, lab)
    assert not validate_suitable(m, [0, 0, 1] if lab != [0, 0, 1] else [0, 1, 0])


def test_validate_well_labelled():
    h = blow_up(edge())
    assert validate_well_labelled(h, [1, 0])
    assert validate_well_labelled(h, [0, 1])
    assert not validate_well_labelled(h, [2, 0])
    assert not validate_mirror(h, [0, 2])


def test_geodesic_labels_mirror_valid():
    for n in (1, 2, 3):
        for h in _general_hypermaps(n):
            for v in range(h.n_vertices):
                lab = geodesic_labels(h, v)
                assert validate_mirror(h, lab)
                mins, _ = right_local_extrema(h, [x for x in lab])
                assert v in mins


def test_local_extrema():
    mins, maxs = local_extrema(edge(), [0, 1])
    assert mins == {0} and maxs == {1}
    m = path3()
    mid = next(v for v in range(3) if m.degree(v) == 2)
    lab = [1 if v == mid else 0 for v in range(3)]
    assert local_extrema(m, lab)[1] == {mid}


def test_face_type():
    h = blow_up(edge())
    f = h.dark_faces()[0]
    assert face_type(h.map, f, [1, 0], "ccw") == CyclicSequence([1, 0])
    with pytest.raises(LabelError):
        face_type(h.map, f, [1, 0], "sideways")


def test_stretched_and_descending():
    assert is_stretched([0, 1, 2, 3, 2, 1])
    assert not is_stretched([0, 1, 2, 1, 2, 1])
    assert is_descending([2, 1, 0])
    assert not is_descending([2, 0, 1])


def test_completion_examples():
    assert completion((1, 1), "lower") == CyclicSequence([1, 0, 1, 0])
    assert complement((1, 1), "lower") == CyclicSequence([0, 0])
    for j in range(-2, 4):
        assert complement((j, j - 1), "upper") == CyclicSequence([j, j + 1])
    assert complement((1, 0), "upper") == CyclicSequence([1, 2])


def test_completion_errors():
    with pytest.raises(LabelError):
        completion((3, 0), "upper")
    with pytest.raises(LabelError):
        completion((1, 1), "sideways")


def lukasiewicz_sequences(max_len, lo, hi):
    for r in range(1, max_len + 1):
        for e in product(range(lo, hi + 1), repeat=r):
            if is_lukasiewicz(e):
                yield e


def test_complements_are_inverse():
    count = 0
    for e in lukasiewicz_sequences(8, -3, 3):
        up = complement(e, "upper")
        assert is_lukasiewicz(up)
        assert complement(up, "lower") == CyclicSequence(e)
        lo = complement(e, "lower")
        assert complement(lo, "upper") == CyclicSequence(e)
        assert len(completion(e, "upper")) == len(e) + len(up)
        count += 1
    assert count > 1000


def test_descending_complements():
    # a descending sequence of length p has a descending upper complement of the same length
    for p in range(1, 7):
        for top in range(-2, 3):
            tau = [top - k for k in range(p)]
            assert is_descending(tau)
            c = complement(tau, "upper")
            assert is_descending(c) and len(c) == p


def test_opp():
    assert opp([0, 1, -2]) == [0, -1, 2]
