from carto import verify
from carto.bijections import (constellation_to_regular, geodesic_labels,
                              hypermap_edge_to_mobile_triple, hypermap_to_mobile,
                              mobile_to_hypermap, phi, phi_minus, psi, psi_minus)
from carto.labels import (CyclicSequence, completion, face_type, validate_suitable,
                          validate_well_labelled)
from carto.maps import blow_up, build_map, constellation_check
from carto.oracle import enumerate_labelled


def edge():
    return build_map([1, 2], [2, 1], one_based=True)


def test_phi_single_edge():
    b = edge()
    h, hl, corr = phi(b, [0, 1])
    assert validate_well_labelled(h, hl)
    assert h.n_vertices == 1 and hl == [1]
    (f,) = h.dark_faces()
    assert h.map.face_degree(f) == 1 and len(h.light_faces()) == 1
    tau = face_type(h.map, f, hl)
    assert tau == CyclicSequence([1])
    assert completion(tau, "lower") == face_type(b, 0, [0, 1])


def test_psi_single_edge_inverse():
    h, hl, _ = phi(edge(), [0, 1])
    b, bl, _ = psi(h, hl)
    assert validate_suitable(b, bl)
    assert (b.n_vertices, b.n_edges) == (2, 1) and sorted(bl) == [0, 1]


def test_phi_minus_is_mirror():
    b = edge()
    hm, hml, _ = phi_minus(b, [0, 1])
    assert hml == [0]
    bm, bml, _ = psi_minus(hm, hml)
    assert sorted(bml) == [0, 1]


def test_quadrangulations_give_two_faces():
    for n in (2, 3, 4):
        for b, bl in enumerate_labelled(n, "suitable"):
            if all(len(f) == 4 for f in b.faces):
                h, hl, _ = phi(b, bl)
                assert all(h.map.face_degree(f) == 2 for f in h.dark_faces())


def test_labelled_counts_agree():
    # maps are rooted on 2n darts, hypermaps on their n canonical darts
    for n in (1, 2, 3, 4):
        a = len(enumerate_labelled(n, "suitable"))
        b = len(enumerate_labelled(n, "well"))
        assert a == 2 * b


def test_mobile_round_trip_single():
    h = blow_up(edge())
    for v in range(h.n_vertices):
        mob, _ = hypermap_to_mobile(h, v)
        h2, _ = mobile_to_hypermap(mob)[:2]
        assert h2.n_vertices == h.n_vertices and h2.n_edges == h.n_edges


def test_constellation_to_regular_bridge():
    c = blow_up(edge())
    ok, _ = constellation_check(c, 2)
    assert ok
    e, el = constellation_to_regular(c, 2, 0)[:2]
    assert el[0] == geodesic_labels(c, 0)[0]


def test_edge_triples_bridge():
    h = blow_up(edge())
    counts = hypermap_edge_to_mobile_triple(h, 0)
    assert counts == {1: (1, 1)}


def test_exhaustive_round_trips():
    for rep in (verify.check_phi_psi(4), verify.check_psi_phi(4), verify.check_mobiles(4),
                verify.check_constellations(3), verify.check_classical(4)):
        assert rep["ok"], rep
        assert rep["checked"] > 0
