"""Maps and hypermaps as rotation systems on darts.

A map is a pair of permutations on darts ``0..n-1``: ``sigma`` turns
counterclockwise around a vertex and ``alpha`` swaps the two halves of an
edge.  Faces are the cycles of ``phi = sigma . alpha``, i.e.
``phi[d] = sigma[alpha[d]]``.

Orientation calibration (checked in the tests on a hand-embedded triangle):
walking a face along ``phi`` keeps the face on the *right* of every dart, so
the ``phi``-order of a face is its clockwise order.  The corner just before
dart ``x`` in ccw order at its origin, i.e. the sector between
``sigma^-1(x)`` and ``x``, lies in the face on the right of ``x``.

A hypermap is an Eulerian map with properly bicoloured faces.  Its canonical
darts are those having the dark face on their right; a dark face is then a
directed cycle of canonical darts.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "MapError",
    "DartMap",
    "Hypermap",
    "StarMap",
    "RootedPointedMap",
    "MapBuilder",
    "build_map",
    "bicolor_faces",
    "hypermap_from_pair",
    "star_representation",
    "collapse_star",
    "graph_distances",
    "directed_distances",
    "constellation_check",
    "canonical_code",
    "map_from_json",
    "blow_up",
]


class MapError(ValueError):
    pass


def _orbits(perm: Sequence[int]) -> tuple[list[list[int]], list[int]]:
    n = len(perm)
    owner = [-1] * n
    cycles = []
    for d in range(n):
        if owner[d] >= 0:
            continue
        cyc = []
        x = d
        while owner[x] < 0:
            owner[x] = len(cycles)
            cyc.append(x)
            x = perm[x]
        cycles.append(cyc)
    return cycles, owner


def _inverse(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, x in enumerate(perm):
        inv[x] = i
    return inv


class DartMap:
    """Immutable map on darts ``0..n-1`` with cached vertices and faces.

    Vertex ``k`` is the ``k``-th sigma-orbit met when scanning darts in
    increasing order, so ``vertex_of[0] == 0``; faces likewise.
    """

    def __init__(self, sigma: Sequence[int], alpha: Sequence[int], check: bool = True):
        self.sigma = tuple(sigma)
        self.alpha = tuple(alpha)
        n = len(self.sigma)
        if check:
            if len(self.alpha) != n:
                raise MapError("sigma and alpha have different sizes")
            if n == 0 or n % 2:
                raise MapError("need a positive even number of darts")
            if sorted(self.sigma) != list(range(n)):
                raise MapError("sigma is not a permutation")
            for d in range(n):
                a = self.alpha[d]
                if not 0 <= a < n or self.alpha[a] != d:
                    raise MapError("alpha is not an involution")
                if a == d:
                    raise MapError(f"alpha has a fixed point at dart {d}")
        self.n_darts = n
        self.phi = tuple(self.sigma[self.alpha[d]] for d in range(n))
        self.vertices, self.vertex_of = _orbits(self.sigma)
        self.faces, self.face_of = _orbits(self.phi)
        if check and not self._connected():
            raise MapError("map is not connected")
        chi = len(self.vertices) - n // 2 + len(self.faces)
        self.genus = (2 - chi) // 2

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.sigma[d], self.alpha[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == self.n_darts

    @property
    def n_edges(self) -> int:
        return self.n_darts // 2

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def origin(self, d: int) -> int:
        return self.vertex_of[d]

    def target(self, d: int) -> int:
        return self.vertex_of[self.alpha[d]]

    def degree(self, v: int) -> int:
        return len(self.vertices[v])

    def face_degree(self, f: int) -> int:
        return len(self.faces[f])

    def sigma_inv(self) -> list[int]:
        return _inverse(self.sigma)

    def phi_inv(self) -> list[int]:
        return _inverse(self.phi)

    def neighbours(self, v: int) -> list[int]:
        return [self.target(d) for d in self.vertices[v]]

    def __eq__(self, other):
        if not isinstance(other, DartMap):
            return NotImplemented
        return self.sigma == other.sigma and self.alpha == other.alpha

    def __hash__(self):
        return hash((self.sigma, self.alpha))

    def __repr__(self):
        return (f"DartMap(V={self.n_vertices}, E={self.n_edges}, F={self.n_faces}, "
                f"genus={self.genus})")

    def text_form(self) -> str:
        """One line per vertex: the ccw dart cycle, 1-based, with alpha partners."""
        lines = []
        for v, cyc in enumerate(self.vertices):
            parts = " ".join(f"{d + 1}>{self.alpha[d] + 1}" for d in cyc)
            lines.append(f"v{v}: {parts}")
        return "\n".join(lines)

    def to_json(self, **extra) -> dict:
        data = {
            "n_darts": self.n_darts,
            "sigma": [x + 1 for x in self.sigma],
            "alpha": [x + 1 for x in self.alpha],
        }
        for k, v in extra.items():
            if v is not None:
                data[k] = v
        return data


def build_map(sigma: Sequence[int], alpha: Sequence[int], one_based: bool = False) -> DartMap:
    if one_based:
        sigma = [x - 1 for x in sigma]
        alpha = [x - 1 for x in alpha]
    return DartMap(sigma, alpha)


def map_from_json(data) -> tuple[DartMap, dict]:
    """Parse the JSON map format; returns the map and the remaining fields."""
    if isinstance(data, str):
        data = json.loads(data)
    m = build_map(data["sigma"], data["alpha"], one_based=True)
    if int(data.get("n_darts", m.n_darts)) != m.n_darts:
        raise MapError("n_darts does not match the permutations")
    rest = {k: v for k, v in data.items() if k not in ("n_darts", "sigma", "alpha")}
    return m, rest


class Hypermap:
    """A map whose faces are coloured dark/light, every edge separating the two."""

    def __init__(self, m: DartMap, dark: Sequence[bool], check: bool = True):
        self.map = m
        self.dark = tuple(bool(x) for x in dark)
        if check:
            if len(self.dark) != m.n_faces:
                raise MapError("one colour per face is needed")
            for d in range(m.n_darts):
                if self.dark[m.face_of[d]] == self.dark[m.face_of[m.alpha[d]]]:
                    raise MapError(f"edge of dart {d} has the same colour on both sides")
        self.canonical = tuple(d for d in range(m.n_darts) if self.dark[m.face_of[d]])

    @property
    def n_edges(self) -> int:
        return self.map.n_edges

    @property
    def n_vertices(self) -> int:
        return self.map.n_vertices

    def dark_faces(self) -> list[int]:
        return [f for f, c in enumerate(self.dark) if c]

    def light_faces(self) -> list[int]:
        return [f for f, c in enumerate(self.dark) if not c]

    def is_canonical(self, d: int) -> bool:
        return self.dark[self.map.face_of[d]]

    def canonical_dart(self, d: int) -> int:
        """The canonical dart of the edge containing ``d``."""
        return d if self.is_canonical(d) else self.map.alpha[d]

    def is_p_hypermap(self, p: int) -> bool:
        return all(self.map.face_degree(f) == p for f in self.dark_faces())

    def right_neighbours(self, v: int) -> list[int]:
        """Origins of the canonical darts ending at ``v``."""
        m = self.map
        return [m.target(d) for d in m.vertices[v] if not self.is_canonical(d)]

    def pair(self) -> tuple[list[int], list[int], list[int]]:
        """Permutation-pair form on the canonical darts.

        Returns ``(darts, sig, alp)`` where ``darts[e]`` is the ``e``-th
        canonical dart, ``sig`` is the ccw rotation restricted to canonical
        darts and ``alp`` is the clockwise successor in the dark face.
        """
        m = self.map
        darts = list(self.canonical)
        index = {d: e for e, d in enumerate(darts)}
        sig = [index[m.sigma[m.sigma[d]]] for d in darts]
        alp = [index[m.phi[d]] for d in darts]
        return darts, sig, alp

    def __eq__(self, other):
        if not isinstance(other, Hypermap):
            return NotImplemented
        return self.map == other.map and self.dark == other.dark

    def __hash__(self):
        return hash((self.map, self.dark))

    def __repr__(self):
        return (f"Hypermap(V={self.n_vertices}, E={self.n_edges}, dark={len(self.dark_faces())}, "
                f"light={len(self.light_faces())})")

    def to_json(self, **extra) -> dict:
        colors = ["dark" if self.dark[self.map.face_of[d]] else "light"
                  for d in range(self.map.n_darts)]
        return self.map.to_json(colors=colors, **extra)


def bicolor_faces(m: DartMap, dark_dart: int = 0) -> Hypermap:
    """Properly 2-colour the faces, the face right of ``dark_dart`` dark."""
    for v in range(m.n_vertices):
        if m.degree(v) % 2:
            raise MapError(f"vertex {v} has odd degree")
    colour = [None] * m.n_faces
    start = m.face_of[dark_dart]
    colour[start] = True
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for d in m.faces[f]:
            g = m.face_of[m.alpha[d]]
            if colour[g] is None:
                colour[g] = not colour[f]
                queue.append(g)
            elif colour[g] == colour[f]:
                raise MapError("faces admit no proper bicolouring")
    return Hypermap(m, colour)


def hypermap_from_pair(sig: Sequence[int], alp: Sequence[int]) -> Hypermap:
    """Build a hypermap from its permutation pair on canonical darts.

    Canonical dart ``e`` becomes dart ``2e`` and its reverse ``2e+1``.
    ``sig`` is the vertex rotation and ``alp`` the clockwise dark-face
    successor, as returned by :meth:`Hypermap.pair`.
    """
    k = len(sig)
    ainv = _inverse(alp)
    sigma = [0] * (2 * k)
    alpha = [0] * (2 * k)
    for e in range(k):
        sigma[2 * e] = 2 * ainv[sig[e]] + 1
        sigma[2 * e + 1] = 2 * alp[e]
        alpha[2 * e] = 2 * e + 1
        alpha[2 * e + 1] = 2 * e
    m = DartMap(sigma, alpha)
    dark = [False] * m.n_faces
    for e in range(k):
        dark[m.face_of[2 * e]] = True
    return Hypermap(m, dark)


@dataclass(frozen=True)
class StarMap:
    """Star representation: a bipartite map with black star centres.

    ``white_of[v]`` is the hypermap vertex of white vertex ``v`` (None for
    black ones) and ``black_of[v]`` the dark face of a black vertex.
    """

    map: DartMap
    white_of: tuple
    black_of: tuple

    def is_black(self, v: int) -> bool:
        return self.white_of[v] is None


def star_representation(h: Hypermap) -> StarMap:
    darts, sig, alp = h.pair()
    k = len(darts)
    ainv = _inverse(alp)
    sigma = [0] * (2 * k)
    alpha = [0] * (2 * k)
    for e in range(k):
        sigma[2 * e] = 2 * sig[e]
        sigma[2 * e + 1] = 2 * ainv[e] + 1
        alpha[2 * e] = 2 * e + 1
        alpha[2 * e + 1] = 2 * e
    s = DartMap(sigma, alpha)
    white_of = [None] * s.n_vertices
    black_of = [None] * s.n_vertices
    for e, d in enumerate(darts):
        white_of[s.vertex_of[2 * e]] = h.map.origin(d)
        black_of[s.vertex_of[2 * e + 1]] = h.map.face_of[d]
    return StarMap(s, tuple(white_of), tuple(black_of))


def collapse_star(star: StarMap) -> Hypermap:
    """Inverse of :func:`star_representation` (up to dart renaming)."""
    s = star.map
    whites = [d for d in range(s.n_darts) if not star.is_black(s.origin(d))]
    index = {d: e for e, d in enumerate(whites)}
    sinv = s.sigma_inv()
    sig = [index[s.sigma[d]] for d in whites]
    alp = [index[s.alpha[sinv[s.alpha[d]]]] for d in whites]
    return hypermap_from_pair(sig, alp)


def blow_up(m: DartMap) -> Hypermap:
    """The 2-hypermap of a map: each edge becomes a dark 2-gon.

    Darts ``2d`` (canonical) and ``2d+1`` replace dart ``d``, so vertex
    ``v`` of ``m`` becomes the vertex of dart ``2 * m.vertices[v][0]``.
    """
    n = m.n_darts
    sigma = [0] * (2 * n)
    alpha = [0] * (2 * n)
    for d in range(n):
        sigma[2 * d] = 2 * m.alpha[m.sigma[d]] + 1
        sigma[2 * m.alpha[d] + 1] = 2 * d
        alpha[2 * d] = 2 * d + 1
        alpha[2 * d + 1] = 2 * d
    bm = DartMap(sigma, alpha)
    dark = [False] * bm.n_faces
    for d in range(n):
        dark[bm.face_of[2 * d]] = True
    return Hypermap(bm, dark)


@dataclass
class RootedPointedMap:
    map: object
    root_dart: int
    pointed_vertex: int | None = None

    def __post_init__(self):
        m = self.map.map if isinstance(self.map, Hypermap) else self.map
        if not 0 <= self.root_dart < m.n_darts:
            raise MapError("root dart out of range")
        if isinstance(self.map, Hypermap) and not self.map.is_canonical(self.root_dart):
            raise MapError("hypermap root must have the dark face on its right")
        if self.pointed_vertex is not None and not 0 <= self.pointed_vertex < m.n_vertices:
            raise MapError("pointed vertex out of range")


# ---------------------------------------------------------------------------
# distances and colourings


def graph_distances(m: DartMap, v: int) -> list[int]:
    dist = [-1] * m.n_vertices
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in m.neighbours(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def directed_distances(h: Hypermap, v: int) -> list[int]:
    """Shortest directed paths along canonical darts starting at ``v``."""
    m = h.map
    dist = [-1] * m.n_vertices
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for d in m.vertices[u]:
            if h.is_canonical(d):
                w = m.target(d)
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
    if min(dist) < 0:
        raise MapError("vertex unreachable along canonical darts")
    return dist


def constellation_check(h: Hypermap, p: int):
    """Colour vertices so that colours increase by 1 (mod p) along canonical darts.

    Returns ``(True, colours)`` with vertex 0 coloured 0, or ``(False, f)``
    with a dark face ``f`` witnessing the failure.
    """
    m = h.map
    for f in h.dark_faces():
        if m.face_degree(f) != p:
            return False, f
    col = [None] * m.n_vertices
    col[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for d in m.vertices[u]:
            step = 1 if h.is_canonical(d) else -1
            w = m.target(d)
            c = (col[u] + step) % p
            if col[w] is None:
                col[w] = c
                queue.append(w)
    for d in h.canonical:
        if (col[m.origin(d)] + 1) % p != col[m.target(d)]:
            return False, m.face_of[d]
    return True, col


# ---------------------------------------------------------------------------
# canonical forms


def canonical_code(m: DartMap, root: int, dart_data: Sequence | None = None) -> tuple:
    """Relabel darts in BFS order from ``root``; equal codes mean rooted isomorphism.

    ``dart_data`` optionally attaches a hashable value to every dart (labels,
    colours) that the isomorphism must preserve.
    """
    n = m.n_darts
    new = [-1] * n
    order = [root]
    new[root] = 0
    i = 0
    while i < len(order):
        d = order[i]
        i += 1
        for e in (m.sigma[d], m.alpha[d]):
            if new[e] < 0:
                new[e] = len(order)
                order.append(e)
    code = (tuple(new[m.sigma[d]] for d in order), tuple(new[m.alpha[d]] for d in order))
    if dart_data is not None:
        code += (tuple(dart_data[d] for d in order),)
    return code


# ---------------------------------------------------------------------------
# mutable construction


class MapBuilder:
    """Editable rotation system; ``freeze`` renumbers darts compactly."""

    def __init__(self, m: DartMap | None = None):
        self.sigma: dict[int, int] = {}
        self.sinv: dict[int, int] = {}
        self.alpha: dict[int, int] = {}
        self.next_dart = 0
        if m is not None:
            for d in range(m.n_darts):
                self.sigma[d] = m.sigma[d]
                self.sinv[m.sigma[d]] = d
                self.alpha[d] = m.alpha[d]
            self.next_dart = m.n_darts

    def _new(self) -> int:
        d = self.next_dart
        self.next_dart += 1
        return d

    def _insert_before(self, x: int, a: int | None):
        """Put new dart ``x`` just before ``a`` in ccw order (alone if None)."""
        if a is None:
            self.sigma[x] = x
            self.sinv[x] = x
            return
        b = self.sinv[a]
        self.sigma[b] = x
        self.sinv[x] = b
        self.sigma[x] = a
        self.sinv[a] = x

    def insert_edge(self, a: int | None, b: int | None) -> tuple[int, int]:
        """New edge with dart ``x`` placed before ``a`` and ``y`` before ``b``.

        Either anchor may be None to hang the end on a fresh vertex.
        Returns ``(x, y)``; ``sigma(x) == a``.
        """
        x, y = self._new(), self._new()
        self.alpha[x] = y
        self.alpha[y] = x
        self._insert_before(x, a)
        self._insert_before(y, b)
        return x, y

    def delete_edge(self, x: int):
        y = self.alpha[x]
        for d in (x, y):
            prev, nxt = self.sinv[d], self.sigma[d]
            if prev == d:
                pass
            else:
                self.sigma[prev] = nxt
                self.sinv[nxt] = prev
            del self.sigma[d], self.sinv[d], self.alpha[d]

    def freeze(self) -> tuple[DartMap, dict[int, int]]:
        darts = sorted(self.sigma)
        ren = {d: i for i, d in enumerate(darts)}
        m = DartMap([ren[self.sigma[d]] for d in darts], [ren[self.alpha[d]] for d in darts])
        return m, ren
