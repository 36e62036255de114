import pytest

from carto.maps import (DartMap, Hypermap, MapBuilder, MapError, RootedPointedMap, bicolor_faces,
                        blow_up, build_map, canonical_code, collapse_star, constellation_check,
                        directed_distances, graph_distances, hypermap_from_pair, map_from_json,
                        star_representation)
from carto.oracle import enumerate_rooted_maps, _general_hypermaps


def loop():
    return build_map([2, 1], [2, 1], one_based=True)


def bridge():
    return build_map([1, 2], [2, 1], one_based=True)


def square():
    # 4-cycle: vertex k holds darts 2k (towards k+1) and 2k+1 (towards k-1)
    sigma, alpha = [], [0] * 8
    for k in range(4):
        sigma += [2 * k + 1, 2 * k]
        alpha[2 * k] = (2 * ((k + 1) % 4) + 1)
        alpha[2 * ((k + 1) % 4) + 1] = 2 * k
    return DartMap(sigma, alpha)


def test_small_maps():
    lp, br = loop(), bridge()
    assert (lp.n_vertices, lp.n_faces, lp.genus) == (1, 2, 0)
    assert (br.n_vertices, br.n_faces, br.genus) == (2, 1, 0)
    sq = square()
    assert (sq.n_vertices, sq.n_edges, sq.n_faces, sq.genus) == (4, 4, 2, 0)


def test_invalid_maps():
    with pytest.raises(MapError):
        DartMap([1, 0, 3, 2], [1, 0, 3, 2])  # two loops, disconnected
    with pytest.raises(MapError):
        DartMap([0, 1], [0, 1])  # alpha fixed points
    with pytest.raises(MapError):
        DartMap([0, 1, 2], [1, 0, 2])


def test_json_and_text():
    m = square()
    m2, rest = map_from_json(m.to_json(root_dart=1))
    assert m2 == m and rest == {"root_dart": 1}
    assert m.text_form().splitlines()[0].startswith("v0:")


def test_bicolor():
    double = blow_up(bridge())
    assert len(double.dark_faces()) == 1 and len(double.light_faces()) == 1
    assert [double.map.face_degree(f) for f in double.dark_faces()] == [2]
    hl = bicolor_faces(loop())
    assert sorted(hl.map.face_degree(f) for f in range(hl.map.n_faces)) == [1, 1]
    path = build_map([2, 1, 3, 4], [3, 4, 1, 2], one_based=True)
    with pytest.raises(MapError):
        bicolor_faces(path)


def test_star_representation():
    h = blow_up(bridge())
    star = star_representation(h)
    blacks = [v for v in range(star.map.n_vertices) if star.is_black(v)]
    assert len(blacks) == 1 and star.map.degree(blacks[0]) == 2
    hl = bicolor_faces(loop())
    s1 = star_representation(hl)
    assert sum(star_representation(hl).is_black(v) for v in range(s1.map.n_vertices)) == 1
    for n in (1, 2, 3):
        for g in _general_hypermaps(n):
            st = star_representation(g)
            assert st.map.genus == g.map.genus == 0
            back = collapse_star(st)
            assert back.n_vertices == g.n_vertices
            assert canonical_code(back.map, back.pair()[0][0]) == canonical_code(g.map, g.pair()[0][0])


def test_face_degree_sums():
    for n in (1, 2, 3):
        for g in _general_hypermaps(n):
            dark = sum(g.map.face_degree(f) for f in g.dark_faces())
            light = sum(g.map.face_degree(f) for f in g.light_faces())
            assert dark == light == g.n_edges


def test_graph_distances():
    assert graph_distances(bridge(), 0) == [0, 1]
    assert graph_distances(bridge(), 1) == [1, 0]
    assert graph_distances(loop(), 0) == [0]
    assert graph_distances(square(), 0) == [0, 1, 2, 1]


def test_directed_distances():
    h = blow_up(bridge())
    assert directed_distances(h, 0) == [0, 1]
    # a dark triangle on three distinct vertices
    tri = hypermap_from_pair([0, 1, 2], [1, 2, 0])
    assert tri.n_vertices == 3
    for v in range(3):
        d = directed_distances(tri, v)
        assert sorted(d) == [0, 1, 2]
        u = next(w for w in range(3) if d[w] == 1)
        w = next(w for w in range(3) if d[w] == 2)
        # u -> w -> v closes the directed triangle
        assert directed_distances(tri, u)[w] == 1 and directed_distances(tri, w)[v] == 1


def test_two_hypermap_distances_match_graph():
    for n in (1, 2, 3):
        for m in enumerate_rooted_maps(n):
            h = blow_up(m)
            for v in range(m.n_vertices):
                hv = h.map.vertex_of[2 * m.vertices[v][0]]
                dh = directed_distances(h, hv)
                dm = graph_distances(m, v)
                assert all(dh[h.map.vertex_of[2 * m.vertices[x][0]]] == dm[x]
                           for x in range(m.n_vertices))


def test_constellation_check():
    ok, col = constellation_check(blow_up(bridge()), 2)
    assert ok and sorted(col) == [0, 1]
    ok, _ = constellation_check(blow_up(loop()), 2)
    assert not ok
    tri = hypermap_from_pair([0, 1, 2], [1, 2, 0])
    ok, col = constellation_check(tri, 3)
    assert ok and sorted(col) == [0, 1, 2]


def test_rooted_pointed():
    h = blow_up(bridge())
    RootedPointedMap(h, h.canonical[0], 0)
    non = next(d for d in range(h.map.n_darts) if not h.is_canonical(d))
    with pytest.raises(MapError):
        RootedPointedMap(h, non, 0)


def test_pair_round_trip():
    for n in (1, 2, 3):
        for g in _general_hypermaps(n):
            darts, sig, alp = g.pair()
            g2 = hypermap_from_pair(sig, alp)
            assert g2.n_vertices == g.n_vertices
            assert sorted(g2.map.face_degree(f) for f in g2.dark_faces()) == \
                sorted(g.map.face_degree(f) for f in g.dark_faces())


def test_builder():
    b = MapBuilder()
    x, y = b.insert_edge(None, None)
    b.insert_edge(y, None)
    m, _ = b.freeze()
    assert (m.n_vertices, m.n_edges, m.genus) == (3, 2, 0)


def test_hypermap_rejects_bad_colouring():
    m = square()
    with pytest.raises(MapError):
        Hypermap(m, [True, True])
