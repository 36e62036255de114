"""Brute-force enumeration of small rooted maps and hypermaps.

Everything here is deliberately naive and independent of the mobile
machinery: rooted objects are generated as permutation pairs in canonical
breadth-first labelling, filtered by genus and constraints, and pointed
vertices are classified by plain BFS.  The counts ground the series
coefficients and the bijection suites.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import product

import mpmath

from .maps import DartMap, Hypermap, constellation_check, directed_distances, graph_distances, \
    hypermap_from_pair

__all__ = [
    "OracleError",
    "EnumerationReport",
    "FAMILIES",
    "rooted_pairs",
    "bfs_relabel",
    "enumerate_rooted_maps",
    "enumerate_family",
    "pointed_rooted_profile",
    "enumerate_labelled",
    "tutte_count",
    "sampler_check",
    "pointed_class",
]

CAPS = {"general": 5, "bipartite": 5, "eulerian": 5, "hypermap": 5, "3-hypermap": 3,
        "3-constellation": 3}
FAMILIES = tuple(CAPS)


class OracleError(ValueError):
    pass


@dataclass
class EnumerationReport:
    family: str
    n: int
    count: int
    by_type: Counter = field(default_factory=Counter)
    encodings: list | None = None

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "count": self.count,
            "by_type": {",".join(map(str, k)): v for k, v in sorted(self.by_type.items())},
        }


# ---------------------------------------------------------------------------
# canonical generation


def rooted_pairs(k: int, cycle: int | None = None):
    """All rooted transitive pairs ``(sig, alp)`` on ``k`` points, each once.

    Points are numbered in the breadth-first order met from the root 0 by
    looking at ``sig(x)`` then ``alp(x)`` for x = 0, 1, ...; every rooted
    class has exactly one such numbering.  ``cycle`` restricts ``alp`` to
    cycles of that length (2 gives fixed-point-free involutions).
    """
    if k < 1:
        raise OracleError("at least one point is needed")
    if cycle is not None and k % cycle:
        return
    sig = [-1] * k
    alp = [-1] * k
    sig_inv = [-1] * k
    alp_inv = [-1] * k
    count = [1]

    def chain_ok(x, y):
        # would alp[x] = y keep all alp cycles of length ``cycle``?
        if cycle is None:
            return True
        n, z = 1, y
        while z != x and alp[z] != -1:
            z = alp[z]
            n += 1
        if z == x:
            return n == cycle
        # open chain: prepend the part ending at x
        z = x
        while alp_inv[z] != -1:
            z = alp_inv[z]
            n += 1
        return n + 1 <= cycle

    def options(inv, x):
        for y in range(count[0]):
            if inv[y] == -1:
                yield y, False
        if count[0] < k:
            yield count[0], True

    def go(x, phase):
        if x == k:
            yield tuple(sig), tuple(alp)
            return
        if x >= count[0]:
            return
        if phase == 0:
            for y, new in options(sig_inv, x):
                if new:
                    count[0] += 1
                sig[x], sig_inv[y] = y, x
                yield from go(x, 1)
                sig[x], sig_inv[y] = -1, -1
                if new:
                    count[0] -= 1
            return
        if alp[x] != -1:
            yield from go(x + 1, 0)
            return
        for y, new in options(alp_inv, x):
            if cycle == 2:
                if y == x or alp[y] != -1:
                    continue
            elif not chain_ok(x, y):
                continue
            if new:
                count[0] += 1
            alp[x], alp_inv[y] = y, x
            if cycle == 2:
                alp[y], alp_inv[x] = x, y
            yield from go(x + 1, 0)
            alp[x], alp_inv[y] = -1, -1
            if cycle == 2:
                alp[y], alp_inv[x] = -1, -1
            if new:
                count[0] -= 1

    yield from go(0, 0)


def bfs_relabel(sig, alp, root: int = 0) -> tuple:
    """Canonical numbering of a rooted pair (same scan as the generator)."""
    order = {root: 0}
    queue = [root]
    for x in queue:
        for y in (sig[x], alp[x]):
            if y not in order:
                order[y] = len(queue)
                queue.append(y)
    if len(queue) != len(sig):
        raise OracleError("pair is not transitive")
    s = [0] * len(sig)
    a = [0] * len(sig)
    for x, i in order.items():
        s[i] = order[sig[x]]
        a[i] = order[alp[x]]
    return tuple(s), tuple(a)


def _cycles(perm) -> int:
    seen = [False] * len(perm)
    c = 0
    for x in range(len(perm)):
        if not seen[x]:
            c += 1
            while not seen[x]:
                seen[x] = True
                x = perm[x]
    return c


def _planar(sig, alp) -> bool:
    k = len(sig)
    inv = [0] * k
    for i, x in enumerate(alp):
        inv[x] = i
    rho = [inv[sig[x]] for x in range(k)]
    return _cycles(sig) + _cycles(alp) + _cycles(rho) == k + 2


def _is_bipartite(m: DartMap) -> bool:
    d = graph_distances(m, 0)
    return all((d[m.origin(x)] + d[m.target(x)]) % 2 == 1 for x in range(m.n_darts))


def enumerate_rooted_maps(n_edges: int, bipartite: bool = False, eulerian: bool = False,
                          p_hypermap: int | None = None, p_constellation: int | None = None,
                          cap: int | None = None) -> list:
    """Rooted planar objects, one per class, rooted at point 0.

    Without hypermap constraints these are maps with ``n_edges`` edges
    (``DartMap``, root dart 0).  With ``p_hypermap`` or ``p_constellation``
    they are hypermaps with ``n_edges`` dark faces of that degree; the
    root is canonical dart 0.
    """
    p = p_constellation or p_hypermap
    limit = cap if cap is not None else (CAPS["3-hypermap"] if p else CAPS["general"])
    if n_edges > limit:
        raise OracleError(f"size {n_edges} exceeds the enumeration cap {limit}")
    if n_edges < 1:
        raise OracleError("size must be at least 1")
    out = []
    if p:
        for sig, alp in rooted_pairs(p * n_edges, p):
            if not _planar(sig, alp):
                continue
            h = hypermap_from_pair(sig, alp)
            if p_constellation and not constellation_check(h, p_constellation)[0]:
                continue
            out.append(h)
        return out
    for sig, alp in rooted_pairs(2 * n_edges, 2):
        if not _planar(sig, alp):
            continue
        m = DartMap(sig, alp)
        if bipartite and not _is_bipartite(m):
            continue
        if eulerian and any(len(c) % 2 for c in m.vertices):
            continue
        out.append(m)
    return out


def _general_hypermaps(n: int) -> list:
    """Rooted hypermaps with ``n`` edges (canonical darts), root canonical dart 0."""
    return [hypermap_from_pair(s, a) for s, a in rooted_pairs(n) if _planar(s, a)]


def enumerate_family(family: str, n: int) -> list:
    if family not in CAPS:
        raise OracleError(f"unknown family {family!r}")
    if n > CAPS[family]:
        raise OracleError(f"size {n} exceeds the enumeration cap {CAPS[family]} for {family}")
    if family == "general":
        return enumerate_rooted_maps(n)
    if family == "bipartite":
        return enumerate_rooted_maps(n, bipartite=True)
    if family == "eulerian":
        return enumerate_rooted_maps(n, eulerian=True)
    if family == "hypermap":
        return _general_hypermaps(n)
    if family == "3-hypermap":
        return enumerate_rooted_maps(n, p_hypermap=3)
    return enumerate_rooted_maps(n, p_constellation=3)


def tutte_count(n: int) -> int:
    """Rooted planar maps with n edges, 2 * 3^n (2n)! / (n! (n+2)!)."""
    return 2 * 3 ** n * math.factorial(2 * n) // (math.factorial(n) * math.factorial(n + 2))


# ---------------------------------------------------------------------------
# pointed profiles


def _root_type(family: str, obj, v: int) -> tuple:
    if isinstance(obj, Hypermap):
        m = obj.map
        dist = directed_distances(obj, v)
        root = obj.canonical[0]
        if family.startswith("3-"):
            f = m.faces[m.face_of[root]]
            k = f.index(root)
            f = f[k:] + f[:k]
            # ccw from the endpoint of the root edge
            return (dist[m.origin(f[1])], dist[m.origin(f[0])], dist[m.origin(f[2])])
        return (dist[m.origin(root)], dist[m.target(root)])
    dist = graph_distances(obj, v)
    return (dist[obj.origin(0)], dist[obj.target(0)])


def _face_count(obj) -> int:
    # hypermaps carry the face weight on their dark faces (hyperedges)
    return len(obj.dark_faces()) if isinstance(obj, Hypermap) else obj.n_faces


def pointed_rooted_profile(n: int, family: str = "general", with_faces: bool = False) -> EnumerationReport:
    """Pointed rooted objects of size ``n`` counted by the type of their root.

    Maps and general hypermaps: ``(k, j)`` distances of origin and endpoint
    of the root edge.  3-families: ccw-type of the root face read from the
    endpoint of the root edge.  With ``with_faces`` the key also carries
    the number of faces (dark faces for hypermaps).
    """
    objs = enumerate_family(family, n)
    prof = Counter()
    for obj in objs:
        nv = obj.n_vertices
        extra = (_face_count(obj),) if with_faces else ()
        for v in range(nv):
            prof[_root_type(family, obj, v) + extra] += 1
    return EnumerationReport(family, n, sum(prof.values()), prof)


def cumulative(prof: Counter, pred) -> int:
    return sum(c for key, c in prof.items() if pred(*key))


# ---------------------------------------------------------------------------
# labelled enumeration


def _suitable_labellings(m: DartMap):
    nv = m.n_vertices
    tree = {0: None}
    order = [0]
    for v in order:
        for d in m.vertices[v]:
            w = m.target(d)
            if w not in tree:
                tree[w] = v
                order.append(w)
    for signs in product((1, -1), repeat=nv - 1):
        lab = [0] * nv
        for w, s in zip(order[1:], signs):
            lab[w] = lab[tree[w]] + s
        if all(abs(lab[m.origin(d)] - lab[m.target(d)]) == 1 for d in range(m.n_darts)):
            low = min(lab)
            yield [x - low for x in lab]


def _well_labellings(h: Hypermap, span: int):
    m = h.map
    nv = h.n_vertices
    cons = [[] for _ in range(nv)]
    for d in h.canonical:
        a, b = m.origin(d), m.target(d)
        hi = max(a, b)
        cons[hi].append((a, b))
    lab = [0] * nv

    def go(v):
        if v == nv:
            if min(lab) == 0:
                yield list(lab)
            return
        for x in range(span + 1):
            lab[v] = x
            if all(lab[b] >= lab[a] - 1 for a, b in cons[v]):
                yield from go(v + 1)

    yield from go(0)


def enumerate_labelled(n: int, discipline: str = "suitable") -> list:
    """Rooted objects with every admissible labelling of minimal label 0.

    ``suitable``: maps with ``n`` edges and labels differing by one along
    edges.  ``well``: hypermaps with ``n`` edges, labels dropping by at
    most one along canonical darts (labels lie in ``[0, n]``).
    """
    if n < 1:
        raise OracleError("size must be at least 1")
    out = []
    if discipline == "suitable":
        for m in enumerate_rooted_maps(n):
            for lab in _suitable_labellings(m):
                out.append((m, lab))
    elif discipline == "well":
        for h in _general_hypermaps(n):
            for lab in _well_labellings(h, n):
                out.append((h, lab))
    else:
        raise OracleError(f"unknown discipline {discipline!r}")
    return out


# ---------------------------------------------------------------------------
# sampler goodness of fit


def pointed_class(m: DartMap, root: int, v: int) -> tuple:
    """Class key of a pointed rooted map: canonical pair plus pointed vertex."""
    order = {root: 0}
    queue = [root]
    for x in queue:
        for y in (m.sigma[x], m.alpha[x]):
            if y not in order:
                order[y] = len(queue)
                queue.append(y)
    s, a = bfs_relabel(m.sigma, m.alpha, root)
    return s, a, min(order[d] for d in m.vertices[v])


def sampler_check(n: int, trials: int, seed) -> dict:
    """Chi-square test of the mobile sampler against uniformity over
    pointed rooted maps with ``n`` edges."""
    from .bijections import hypermap_to_map, mobile_to_hypermap
    from .mobiles import Flavor, MobileTable, Mobile
    import random

    expected = set()
    for m in enumerate_rooted_maps(n):
        for v in range(m.n_vertices):
            expected.add(pointed_class(m, 0, v))
    flavor = Flavor(2)
    table = MobileTable(flavor, n)
    rng = random.Random(seed)
    memo = {}
    hits = Counter()
    for _ in range(trials):
        tree = table.sample(n + 1, n, rng)
        mob = Mobile(tree)
        low = min(mob.labels())
        key = mob.shifted(1 - low)
        if key not in memo:
            h, _, v, root, _ = mobile_to_hypermap(key)
            m, dmap = hypermap_to_map(h)
            at_v = next(d for d in h.map.vertices[v] if h.is_canonical(d))
            vm = m.origin(dmap[at_v])
            memo[key] = pointed_class(m, dmap[root], vm)
        hits[memo[key]] += 1
    unknown = set(hits) - expected
    k = len(expected)
    mean = trials / k
    chi2 = sum((hits[c] - mean) ** 2 / mean for c in expected)
    pvalue = float(mpmath.gammainc((k - 1) / 2, chi2 / 2, regularized=True))
    return {
        "n": n,
        "trials": trials,
        "classes": k,
        "hit": len(set(hits) & expected),
        "unknown": len(unknown),
        "chi2": chi2,
        "pvalue": pvalue,
    }
