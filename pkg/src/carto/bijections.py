"""Executable bijections between labelled maps, hypermaps and mobiles.

* ``phi`` / ``psi``: suitably labelled maps <-> well-labelled hypermaps
  (BDG rules and their inverse closure);
* ``phi_minus`` / ``psi_minus``: the mirror pair (complementary rules);
* ``hypermap_to_mobile`` / ``mobile_to_hypermap``: pointed (rooted)
  hypermaps <-> (planted) mobiles;
* constellation specialisations and the two classical bijections.

Every construction goes through the permutation-pair form of a hypermap:
the canonical darts ``e`` with ``sig`` (next canonical dart ccw around the
vertex) and ``alp`` (next canonical dart clockwise around the dark face).
Each function returns a :class:`Correspondence` recording how vertices,
faces and darts are matched so that tests never need to re-derive it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .labels import local_extrema, validate_mirror, validate_suitable, validate_well_labelled
from .maps import DartMap, Hypermap, MapBuilder, bicolor_faces, constellation_check, \
    directed_distances, graph_distances, hypermap_from_pair
from .mobiles import Mobile, flatten

__all__ = [
    "BijectionError",
    "Correspondence",
    "phi",
    "psi",
    "phi_minus",
    "psi_minus",
    "opp",
    "geodesic_labels",
    "hypermap_to_mobile",
    "mobile_to_hypermap",
    "constellation_to_descending_mobile",
    "descending_mobile_to_constellation",
    "constellation_to_regular",
    "regular_to_constellation",
    "classical_bipartite_to_hypermap",
    "classical_constellation_to_regular",
    "hypermap_edge_to_mobile_triple",
    "map_to_hypermap",
    "hypermap_to_map",
    "face_matching",
]


class BijectionError(ValueError):
    pass


@dataclass
class Correspondence:
    """Matching data produced by a bijection.

    ``vertices`` sends output vertices to input vertices, ``faces`` sends
    output dark faces to input faces, ``extrema`` sends input faces (or
    vertices) that were turned into extremal vertices, and ``darts`` sends
    output canonical darts to input darts.
    """

    vertices: dict = field(default_factory=dict)
    faces: dict = field(default_factory=dict)
    extrema: dict = field(default_factory=dict)
    darts: dict = field(default_factory=dict)


def opp(labels):
    return [-x for x in labels]


def _inv(perm):
    out = [0] * len(perm)
    for i, x in enumerate(perm):
        out[x] = i
    return out


# ---------------------------------------------------------------------------
# Phi and its mirror


def _bdg(b: DartMap, labels, pick) -> tuple[Hypermap, list, Correspondence]:
    chosen = [d for d in range(b.n_darts) if pick(labels[b.origin(d)], labels[b.target(d)])]
    if not chosen:
        raise BijectionError("no edge selected by the local rules")
    index = {d: e for e, d in enumerate(chosen)}
    sig, alp = [], []
    for d in chosen:
        x = b.sigma[d]
        while x not in index:
            x = b.sigma[x]
        sig.append(index[x])
        x = b.phi[d]
        while x not in index:
            x = b.phi[x]
        alp.append(index[x])
    h = hypermap_from_pair(sig, alp)
    hl = [0] * h.n_vertices
    corr = Correspondence()
    for e, d in enumerate(chosen):
        v = h.map.vertex_of[2 * e]
        hl[v] = labels[b.origin(d)]
        corr.vertices[v] = b.origin(d)
        corr.faces[h.map.face_of[2 * e]] = b.face_of[d]
        corr.darts[2 * e] = d
    return h, hl, corr


def _dropped(b: DartMap, labels, h: Hypermap, index: dict, corr: Correspondence, dropped):
    """Light face of ``h`` attached to each dropped vertex of ``b``."""
    for w in dropped:
        faces = {h.map.face_of[2 * index[b.alpha[x]] + 1] for x in b.vertices[w]}
        if len(faces) != 1:
            raise BijectionError(f"dropped vertex {w} touches {len(faces)} light faces")
        corr.extrema[faces.pop()] = w


def phi(b: DartMap, labels) -> tuple[Hypermap, list, Correspondence]:
    """BDG rules: one star edge per descending dart, local minima dropped.

    ``corr.extrema`` maps each light face of the output to the local min
    of ``b`` it comes from.
    """
    if not validate_suitable(b, labels):
        raise BijectionError("labelling is not suitable")
    h, hl, corr = _bdg(b, labels, lambda a, c: c == a - 1)
    index = {d: e for e, d in ((e, corr.darts[2 * e]) for e in range(len(h.canonical)))}
    mins, _ = local_extrema(b, labels)
    _dropped(b, labels, h, index, corr, mins)
    return h, hl, corr


def phi_minus(b: DartMap, labels) -> tuple[Hypermap, list, Correspondence]:
    """Complementary rules: one star edge per ascending dart, local maxima dropped."""
    if not validate_suitable(b, labels):
        raise BijectionError("labelling is not suitable")
    asc = [d for d in range(b.n_darts) if labels[b.target(d)] == labels[b.origin(d)] + 1]
    index = {d: e for e, d in enumerate(asc)}
    sig = []
    alp = []
    for d in asc:
        x = b.sigma[d]
        while labels[b.target(x)] != labels[b.origin(x)] + 1:
            x = b.sigma[x]
        sig.append(index[x])
        x = b.phi[d]
        while labels[b.target(x)] != labels[b.origin(x)] + 1:
            x = b.phi[x]
        alp.append(index[x])
    h = hypermap_from_pair(sig, alp)
    hl = [0] * h.n_vertices
    corr = Correspondence()
    for e, d in enumerate(asc):
        v = h.map.vertex_of[2 * e]
        hl[v] = labels[b.origin(d)]
        corr.vertices[v] = b.origin(d)
        corr.faces[h.map.face_of[2 * e]] = b.face_of[d]
        corr.darts[2 * e] = d
    _, maxs = local_extrema(b, labels)
    _dropped(b, labels, h, index, corr, maxs)
    return h, hl, corr


# ---------------------------------------------------------------------------
# Psi


def psi(h: Hypermap, labels) -> tuple[DartMap, list, Correspondence]:
    """Closure of each light face: every corner gets a leg to the next
    smaller corner in ccw order, minimal corners to a new centre.

    Output dart ``2e`` is the (descending) leg of canonical dart ``e`` of
    ``h.pair()``; ``corr.extrema`` maps light faces of ``h`` to centres.
    """
    if not validate_well_labelled(h, labels):
        raise BijectionError("labelling is not well-labelled")
    darts, sig, alp = h.pair()
    k = len(darts)
    lab = [labels[h.map.origin(d)] for d in darts]
    sinv = _inv(sig)
    # ccw successor of a light corner
    ccw = [sinv[alp[e]] for e in range(k)]
    incoming: list[list] = [[] for _ in range(k)]
    cycles = []
    seen = [False] * k
    for start in range(k):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = ccw[x]
        cycles.append(cyc)
        n = len(cyc)
        m = min(lab[e] for e in cyc)
        for j, e in enumerate(cyc):
            if lab[e] == m:
                continue
            for step in range(1, n):
                f = cyc[(j + step) % n]
                if lab[f] < lab[e]:
                    if lab[f] != lab[e] - 1:
                        raise BijectionError("label drops by more than one around a light face")
                    incoming[f].append((step, e))
                    break
    n_darts = 2 * k
    sigma = [0] * n_darts
    alpha = [0] * n_darts
    for e in range(k):
        alpha[2 * e] = 2 * e + 1
        alpha[2 * e + 1] = 2 * e
    # white vertices: corners in sig order, each [leg, incoming by ccw offset]
    done = [False] * k
    for e0 in range(k):
        if done[e0]:
            continue
        seq = []
        x = e0
        while not done[x]:
            done[x] = True
            seq.append(2 * x)
            seq.extend(2 * src + 1 for _, src in sorted(incoming[x], reverse=True))
            x = sig[x]
        for a, c in zip(seq, seq[1:] + seq[:1]):
            sigma[a] = c
    centre_labels = []
    for cyc in cycles:
        m = min(lab[e] for e in cyc)
        seq = [2 * e + 1 for e in cyc if lab[e] == m]
        for a, c in zip(seq, seq[1:] + seq[:1]):
            sigma[a] = c
        centre_labels.append((seq[0], m - 1, cyc[0]))
    b = DartMap(sigma, alpha)
    bl = [0] * b.n_vertices
    corr = Correspondence()
    for e, d in enumerate(darts):
        v = b.vertex_of[2 * e]
        bl[v] = lab[e]
        corr.vertices[v] = h.map.origin(d)
        corr.darts[2 * e] = d
    for dart, lbl, e in centre_labels:
        v = b.vertex_of[dart]
        bl[v] = lbl
        # light face of h through the reverse of canonical dart e
        corr.extrema[h.map.face_of[h.map.alpha[darts[e]]]] = v
    if not validate_suitable(b, bl):
        raise BijectionError("closure produced a non-suitable labelling")
    return b, bl, corr


def psi_minus(h: Hypermap, labels) -> tuple[DartMap, list, Correspondence]:
    """Mirror closure, ``opp . psi . opp``; centres get label max(f) + 1."""
    b, bl, corr = psi(h, opp(labels))
    return b, opp(bl), corr


# ---------------------------------------------------------------------------
# pointed hypermaps and mobiles


def geodesic_labels(h: Hypermap, v: int) -> list[int]:
    return directed_distances(h, v)


def face_matching(b: DartMap, labels) -> dict:
    """Match descending to ascending darts inside every face.

    Walking a face clockwise, ascending darts are opening and descending
    darts closing parentheses; each descending dart is matched with the
    nearest unmatched ascending dart before it (cyclically).
    Returns ``{descending: ascending}``.
    """
    out = {}
    for cyc in b.faces:
        steps = [labels[b.target(d)] - labels[b.origin(d)] for d in cyc]
        acc, low, at = 0, 0, 0
        for j, s in enumerate(steps):
            acc += s
            if acc < low:
                low, at = acc, j + 1
        stack = []
        n = len(cyc)
        for j in range(n):
            d = cyc[(at + j) % n]
            if steps[(at + j) % n] > 0:
                stack.append(d)
            else:
                out[d] = stack.pop()
    return out


def _mobile_from_pair(sig, alp, lab, root):
    """Planted mobile from a one-light-face hypermap in pair form.

    Returns the nested tuple and, in preorder, the element through which
    each white is entered.
    """
    sinv = _inv(sig)
    entry = []

    def white(x, is_root):
        entry.append(x)
        order = []
        if is_root:
            order.append(x)
        y = sinv[x]
        while y != x:
            order.append(y)
            y = sinv[y]
        return (lab[x], tuple(black(y) for y in order))

    def black(y):
        kids = []
        c = alp[y]
        while c != y:
            kids.append(white(c, False))
            c = alp[c]
        return tuple(kids)

    return white(root, True), entry


def _pair_from_mobile(root):
    """Inverse of :func:`_mobile_from_pair`; the root element is 0."""
    sig: list[int] = []
    alp: list[int] = []
    lab: list[int] = []
    entry: list[int] = []

    def new(label):
        sig.append(-1)
        alp.append(-1)
        lab.append(label)
        return len(lab) - 1

    def white(node, parent_elem):
        label, blacks = node
        wid = len(entry)
        entry.append(parent_elem)
        elems = []
        for bl in blacks:
            e = new(label)
            elems.append(e)
            kids = [white_entry(w) for w in bl]
            ring = [e] + kids
            for a, c in zip(ring, ring[1:] + ring[:1]):
                alp[a] = c
        cw = ([] if parent_elem is None else [parent_elem]) + elems
        for a, c in zip(cw, cw[1:] + cw[:1]):
            sig[c] = a
        return wid

    def white_entry(node):
        e = new(node[0])
        white(node, e)
        return e

    label, blacks = root
    if not blacks:
        raise BijectionError("the empty mobile has no hypermap (size 0 excluded)")
    white(root, None)
    entry[0] = 0
    return sig, alp, lab, entry


def hypermap_to_mobile(h: Hypermap, v: int, root: int | None = None):
    """Pointed hypermap to mobile.

    The hypermap gets its geodesic labelling, ``psi_minus`` yields a
    suitably labelled map whose only local min is ``v``, and ``phi`` of
    that is the mobile.  When a canonical ``root`` dart is given the mobile
    is planted at the matching corner; otherwise at canonical dart 0's match.

    Returns ``(mobile, info)`` where ``info`` holds the intermediate map and
    the white-to-hypermap-vertex / black-to-dark-face dictionaries.
    """
    labels = geodesic_labels(h, v)
    if not validate_mirror(h, labels):
        raise BijectionError("geodesic labelling is not mirror-well-labelled")
    b, bl, c1 = psi_minus(h, labels)
    mins, _ = local_extrema(b, bl)
    vb = next(x for x, y in c1.vertices.items() if y == v)
    if mins != {vb} or bl[vb] != 0:
        raise BijectionError("intermediate map does not have the pointed vertex as unique local min")
    m, ml, c2 = phi(b, bl)
    if len(m.light_faces()) != 1:
        raise BijectionError("image is not a tree")
    darts, sig, alp = m.pair()
    lab = [ml[m.map.origin(d)] for d in darts]
    hdarts = h.pair()[0]
    if root is None:
        root = hdarts[0]
    if not h.is_canonical(root):
        raise BijectionError("root must be a canonical dart")
    match = face_matching(b, bl)
    back = {a: d for d, a in match.items()}
    desc_index = {c2.darts[2 * e]: e for e in range(len(darts))}
    asc = 2 * hdarts.index(root)
    root_elem = desc_index[back[asc]]
    tree, entry = _mobile_from_pair(sig, alp, lab, root_elem)
    # white -> hypermap vertex (None for right local max whites born from faces)
    from_b = {bv: hv for bv, hv in c1.vertices.items()}
    centre_face = {cv: f for f, cv in c1.extrema.items()}
    whites = []
    for x in entry:
        bv = c2.vertices[m.map.vertex_of[2 * x]]
        whites.append(("vertex", from_b[bv]) if bv in from_b else ("face", centre_face[bv]))
    info = {
        "labels": labels,
        "map": b,
        "map_labels": bl,
        "whites": whites,
        "black_faces": _black_faces(tree, entry, m, c2, b, h, c1),
    }
    return Mobile(tree), info


def _black_faces(tree, entry, m, c2, b, h, c1):
    """Hypermap dark face of each black vertex (in flatten order)."""
    out = []
    # black -> dark face of m -> face of b -> dark face of h
    b_face_to_h = {}
    for e2, d in c1.darts.items():
        b_face_to_h[b.face_of[e2]] = h.map.face_of[d]
    elems = _black_elems(tree, entry, m)
    for e in elems:
        bf = c2.faces[m.map.face_of[2 * e]]
        out.append(b_face_to_h[bf])
    return out


def _black_elems(tree, entry, m):
    """Element of the parent-side edge of each black, in flatten order."""
    darts, sig, alp = m.pair()
    sinv = _inv(sig)
    out = []

    def white(node, x, is_root):
        order = []
        if is_root:
            order.append(x)
        y = sinv[x]
        while y != x:
            order.append(y)
            y = sinv[y]
        for y, bl in zip(order, node[1]):
            out.append(y)
            c = alp[y]
            for w in bl:
                white(w, c, False)
                c = alp[c]

    white(tree, entry[0], True)
    return out


def mobile_to_hypermap(mobile: Mobile):
    """Planted mobile to pointed rooted hypermap with geodesic labels.

    Returns ``(h, labels, pointed_vertex, root_dart, info)``.
    """
    sig, alp, lab, entry = _pair_from_mobile(mobile.root)
    if min(lab) != 1:
        raise BijectionError("mobiles have minimal label 1")
    m = hypermap_from_pair(sig, alp)
    if len(m.light_faces()) != 1:
        raise BijectionError("not a tree")
    ml = [0] * m.n_vertices
    for e, x in enumerate(lab):
        ml[m.map.vertex_of[2 * e]] = x
    b, bl, c1 = psi(m, ml)
    h, hl, c2 = phi_minus(b, bl)
    zero = [x for x in range(b.n_vertices) if bl[x] == 0]
    if len(zero) != 1:
        raise BijectionError("intermediate map has several label-0 vertices")
    pointed = next(hv for hv, bv in c2.vertices.items() if bv == zero[0])
    match = face_matching(b, bl)
    asc_index = {d: e2 for e2, d in c2.darts.items()}
    root = asc_index[match[0]]
    return h, hl, pointed, root, {"map": b, "map_labels": bl}


# ---------------------------------------------------------------------------
# maps as 2-hypermaps


def map_to_hypermap(m: DartMap) -> Hypermap:
    """Blow every edge into a dark 2-gon; map dart ``d`` is canonical dart ``2d``."""
    return hypermap_from_pair(list(m.sigma), list(m.alpha))


def hypermap_to_map(h: Hypermap) -> tuple[DartMap, dict]:
    """Shrink dark 2-gons back to edges.  Returns the map and ``{hyper dart: map dart}``."""
    if not h.is_p_hypermap(2):
        raise BijectionError("not a 2-hypermap")
    darts, sig, alp = h.pair()
    return DartMap(sig, alp), {d: e for e, d in enumerate(darts)}


# ---------------------------------------------------------------------------
# constellations


def constellation_to_descending_mobile(c: Hypermap, p: int, v: int, root: int | None = None):
    ok, _ = constellation_check(c, p)
    if not ok:
        raise BijectionError("not a p-constellation")
    mob, info = hypermap_to_mobile(c, v, root)
    return mob, info


def descending_mobile_to_constellation(mobile: Mobile, p: int):
    h, hl, v, root, info = mobile_to_hypermap(mobile)
    ok, _ = constellation_check(h, p)
    if not ok:
        raise BijectionError("image is not a p-constellation")
    return h, hl, v, root, info


def constellation_to_regular(c: Hypermap, p: int, v: int):
    """Pointed p-constellation to pointed (p+1)-regular constellation.

    The mirror closure gives a stretched 2p-angulation; a diagonal from the
    largest to the smallest corner of each face splits it, the part on the
    right of the diagonal (oriented from the max) being dark.

    Returns ``(e, labels, pointed, info)``; ``info['vertices']`` maps vertices
    of ``e`` to vertices of ``c`` and ``info['faces']`` maps faces of ``c``
    to the vertex of ``e`` they become.
    """
    ok, _ = constellation_check(c, p)
    if not ok:
        raise BijectionError("not a p-constellation")
    labels = geodesic_labels(c, v)
    b, bl, corr = psi_minus(c, labels)
    builder = MapBuilder(b)
    for cyc in b.faces:
        if len(cyc) != 2 * p:
            raise BijectionError("intermediate face is not a 2p-gon")
        seq = [bl[b.origin(d)] for d in cyc]
        top = cyc[seq.index(max(seq))]
        bottom = cyc[seq.index(min(seq))]
        if max(seq) - min(seq) != p:
            raise BijectionError("intermediate face is not stretched")
        builder.insert_edge(top, bottom)
    e, ren = builder.freeze()
    # dark faces: right of the new darts leaving the max
    dark = [False] * e.n_faces
    for d in range(b.n_darts, builder.next_dart, 2):
        dark[e.face_of[ren[d]]] = True
    hyp = Hypermap(e, dark)
    el = [0] * e.n_vertices
    vmap = {}
    for d in range(b.n_darts):
        el[e.vertex_of[ren[d]]] = bl[b.origin(d)]
        bv = b.origin(d)
        if bv in corr.vertices:
            vmap[e.vertex_of[ren[d]]] = corr.vertices[bv]
    pointed = e.vertex_of[ren[b.vertices[next(x for x, y in corr.vertices.items() if y == v)][0]]]
    faces = {f: e.vertex_of[ren[b.vertices[cv][0]]] for f, cv in corr.extrema.items()}
    return hyp, el, pointed, {"vertices": vmap, "faces": faces, "map": b, "map_labels": bl}


def regular_to_constellation(e: Hypermap, p: int, v: int):
    """Inverse of :func:`constellation_to_regular`: erase the label-jump-p edges."""
    labels = geodesic_labels(e, v)
    builder = MapBuilder(e.map)
    for d in e.canonical:
        if labels[e.map.origin(d)] - labels[e.map.target(d)] == p:
            builder.delete_edge(d)
    b, ren = builder.freeze()
    bl = [0] * b.n_vertices
    for d, nd in ren.items():
        bl[b.vertex_of[nd]] = labels[e.map.origin(d)]
    c, cl, corr = phi_minus(b, bl)
    vb = b.vertex_of[ren[e.map.vertices[v][0]]]
    pointed = next(hv for hv, bv in corr.vertices.items() if bv == vb)
    return c, cl, pointed


# ---------------------------------------------------------------------------
# classical bijections


def classical_bipartite_to_hypermap(b: DartMap, v: int):
    """Dark face through the even corners of each face (parity labelling + phi)."""
    dist = graph_distances(b, v)
    labels = [1 if x % 2 == 0 else 0 for x in dist]
    if not validate_suitable(b, labels):
        raise BijectionError("map is not bipartite")
    return phi(b, labels)


def classical_constellation_to_regular(c: Hypermap, p: int) -> tuple[Hypermap, list]:
    """Reroute every edge of colours (p-1, 0) through a new vertex of colour p
    placed in the light face on its left.  Returns the hypermap and colours."""
    ok, col = constellation_check(c, p)
    if not ok:
        raise BijectionError("not a p-constellation")
    m = c.map
    builder = MapBuilder(m)
    reroute = [d for d in c.canonical if col[m.origin(d)] == p - 1 and col[m.target(d)] == 0]
    by_face: dict[int, list] = {}
    for f in c.light_faces():
        for x in m.faces[f]:
            d = m.alpha[x]
            if d in reroute:
                by_face.setdefault(f, []).append(d)
    new_dark = []
    for f, ds in by_face.items():
        prev = None
        for d in reversed(ds):
            u_anchor = builder.sigma[d]
            x, y = builder.insert_edge(u_anchor, None if prev is None else builder.sigma[prev])
            new_dark.append(x)
            prev = y
            x2, y2 = builder.insert_edge(m.alpha[d], builder.sigma[prev])
            prev = y2
        for d in ds:
            builder.delete_edge(d)
    e, ren = builder.freeze()
    h = bicolor_faces(e, ren[new_dark[0]]) if new_dark else None
    ok, colours = constellation_check(h, p + 1)
    if not ok:
        raise BijectionError("classical image is not a (p+1)-constellation")
    return h, colours


# ---------------------------------------------------------------------------
# edges of a hypermap and triples of a 2-descending mobile


def hypermap_edge_to_mobile_triple(h: Hypermap, v: int):
    """Count, per vertex, hypermap edges of labels (i-1, i) ending at it and
    counterclockwise contour triples (i, i+1, i+2) starting at it in the associated
    2-descending mobile.

    The chain is: mirror closure to a pointed bipartite map, blow its edges,
    and send that 2-constellation to its 2-descending mobile.  Returns
    ``{hypermap vertex: (edge count, triple count)}`` over unpointed vertices.
    """
    labels = geodesic_labels(h, v)
    b, bl, c1 = psi_minus(h, labels)
    vb = next(x for x, y in c1.vertices.items() if y == v)
    if graph_distances(b, vb) != bl:
        raise BijectionError("intermediate labelling is not geodesic")
    bh = map_to_hypermap(b)
    # map vertex x -> blown vertex
    blown = {x: bh.map.vertex_of[2 * b.vertices[x][0]] for x in range(b.n_vertices)}
    mob, info = hypermap_to_mobile(bh, blown[vb])
    back = {bv: x for x, bv in blown.items()}
    labels_m, blacks = flatten(mob.root)
    # 2-descending mobile as a labelled plane tree: neighbours of each white
    # in clockwise order (black vertices erased)
    nbrs = _tree_cw_neighbours(mob.root)
    counts = {}
    for u in range(h.n_vertices):
        if u == v:
            continue
        counts[u] = [0, 0]
    for d in h.canonical:
        a, z = h.map.origin(d), h.map.target(d)
        la, lz = labels[a], labels[z]
        if la == lz - 1 and z in counts:
            counts[z][0] += 1
    for w, kind in enumerate(info["whites"]):
        if kind[0] != "vertex":
            continue
        bvert = back.get(kind[1], None)
        if bvert is None or bvert not in c1.vertices:
            continue
        u = c1.vertices[bvert]
        if u not in counts:
            continue
        i = labels_m[w]
        ring = nbrs[w]
        k = len(ring)
        for j in range(k):
            x = ring[j]
            if labels_m[x] != i + 1:
                continue
            # next white after x in the contour: the ccw successor of w around x
            ring_x = nbrs[x]
            y = ring_x[(ring_x.index(w) - 1) % len(ring_x)]
            if labels_m[y] == i + 2:
                counts[u][1] += 1
    return {u: tuple(c) for u, c in counts.items()}


def _tree_cw_neighbours(root):
    """White neighbours of every white in clockwise order (blacks of degree 2)."""
    labels, blacks = flatten(root)
    nbrs = [[] for _ in labels]
    # rebuild cw order: around a white, parent first then children in cw order
    pos = [0]

    def walk(node, parent):
        me = pos[0]
        pos[0] += 1
        ring = [] if parent is None else [parent]
        for bl in node[1]:
            for w in bl:
                child = walk(w, me)
                ring.append(child)
        nbrs[me] = ring
        return me

    walk(root, None)
    return nbrs
