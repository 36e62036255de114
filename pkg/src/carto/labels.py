"""Vertex labellings, local extrema, face types and Lukasiewicz sequences."""

from __future__ import annotations

from typing import Iterable, Sequence

from .maps import DartMap, Hypermap

__all__ = [
    "LabelError",
    "CyclicSequence",
    "validate_suitable",
    "validate_well_labelled",
    "validate_mirror",
    "local_extrema",
    "right_local_extrema",
    "face_type",
    "is_lukasiewicz",
    "completion",
    "complement",
    "is_descending",
    "is_stretched",
    "opp",
]


class LabelError(ValueError):
    pass


class CyclicSequence:
    """Cyclic list of integers.

    Equality is up to rotation unless both sides carry a distinguished start
    (``rooted=True``), in which case it is plain list equality.
    """

    __slots__ = ("entries", "rooted")

    def __init__(self, entries: Iterable[int], rooted: bool = False):
        self.entries = tuple(int(x) for x in entries)
        if not self.entries:
            raise LabelError("a cyclic sequence is nonempty")
        self.rooted = rooted

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i % len(self.entries)]

    def rotations(self):
        e = self.entries
        return [e[k:] + e[:k] for k in range(len(e))]

    def canonical(self) -> tuple:
        """Lexicographically least rotation."""
        return min(self.rotations())

    def reversed(self) -> "CyclicSequence":
        return CyclicSequence(reversed(self.entries), self.rooted)

    def __eq__(self, other):
        if isinstance(other, (tuple, list)):
            other = CyclicSequence(other)
        if not isinstance(other, CyclicSequence):
            return NotImplemented
        if self.rooted and other.rooted:
            return self.entries == other.entries
        return len(self) == len(other) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"CyclicSequence({self.entries})"


# ---------------------------------------------------------------------------
# validators


def validate_suitable(m: DartMap, labels: Sequence[int]) -> bool:
    return all(abs(labels[m.origin(d)] - labels[m.target(d)]) == 1 for d in range(m.n_darts))


def validate_well_labelled(h: Hypermap, labels: Sequence[int]) -> bool:
    """Along every canonical dart the label drops by at most one."""
    m = h.map
    return all(labels[m.target(d)] >= labels[m.origin(d)] - 1 for d in h.canonical)


def validate_mirror(h: Hypermap, labels: Sequence[int]) -> bool:
    """Against every canonical dart the label drops by at most one."""
    m = h.map
    return all(labels[m.origin(d)] >= labels[m.target(d)] - 1 for d in h.canonical)


def local_extrema(m: DartMap, labels: Sequence[int]) -> tuple[set, set]:
    """Vertices whose neighbours all have larger (resp. smaller) labels.

    A vertex that is its own neighbour through a loop is never an extremum.
    """
    mins, maxs = set(), set()
    for v in range(m.n_vertices):
        nb = [labels[w] for w in m.neighbours(v)]
        if all(x > labels[v] for x in nb):
            mins.add(v)
        if all(x < labels[v] for x in nb):
            maxs.add(v)
    return mins, maxs


def right_local_extrema(h: Hypermap, labels: Sequence[int]) -> tuple[set, set]:
    """Right local min and right local max (non-strict, right neighbours only)."""
    mins, maxs = set(), set()
    for v in range(h.n_vertices):
        nb = [labels[w] for w in h.right_neighbours(v)]
        if all(x >= labels[v] for x in nb):
            mins.add(v)
        if all(x <= labels[v] for x in nb):
            maxs.add(v)
    return mins, maxs


def face_type(m: DartMap, f: int, labels: Sequence[int], direction: str = "cw",
              start: int | None = None) -> CyclicSequence:
    """Labels of the vertices met around face ``f``.

    ``start`` is a dart of the face; when given, the sequence starts at its
    origin and is rooted.
    """
    cyc = m.faces[f]
    if start is not None:
        k = cyc.index(start)
        cyc = cyc[k:] + cyc[:k]
    seq = [labels[m.origin(d)] for d in cyc]
    if direction == "ccw":
        seq = seq[:1] + seq[1:][::-1]
    elif direction != "cw":
        raise LabelError("direction must be 'cw' or 'ccw'")
    return CyclicSequence(seq, rooted=start is not None)


def opp(labels: Sequence[int]) -> list[int]:
    return [-x for x in labels]


# ---------------------------------------------------------------------------
# Lukasiewicz calculus


def is_lukasiewicz(tau) -> bool:
    e = list(tau)
    return all(e[(k + 1) % len(e)] >= e[k] - 1 for k in range(len(e)))


def _as_seq(tau) -> CyclicSequence:
    return tau if isinstance(tau, CyclicSequence) else CyclicSequence(tau)


def _insertions(tau: CyclicSequence, direction: str) -> list[list[int]]:
    if direction not in ("upper", "lower"):
        raise LabelError("direction must be 'upper' or 'lower'")
    if not is_lukasiewicz(tau):
        raise LabelError(f"{tau.entries} is not a Lukasiewicz sequence")
    shift = 1 if direction == "upper" else -1
    out = []
    e = tau.entries
    for k in range(len(e)):
        i, j = e[k], e[(k + 1) % len(e)]
        out.append(list(range(i + shift, j + shift + 1)) if j >= i else [])
    return out


def completion(tau, direction: str) -> CyclicSequence:
    tau = _as_seq(tau)
    ins = _insertions(tau, direction)
    seq = []
    for x, extra in zip(tau.entries, ins):
        seq.append(x)
        seq.extend(extra)
    return CyclicSequence(seq, tau.rooted)


def complement(tau, direction: str) -> CyclicSequence:
    """Inserted elements of the completion, read backwards."""
    tau = _as_seq(tau)
    seq = [x for extra in _insertions(tau, direction) for x in extra]
    if not seq:
        raise LabelError("empty complement")
    return CyclicSequence(reversed(seq), tau.rooted)


def is_descending(tau) -> bool:
    """Unique rise, all other cyclic steps descents by exactly one."""
    e = list(tau)
    r = len(e)
    steps = [e[(k + 1) % r] - e[k] for k in range(r)]
    rises = [s for s in steps if s >= 0]
    if r == 1:
        return True
    return len(rises) == 1 and all(s == -1 for s in steps if s < 0)


def is_stretched(tau) -> bool:
    """``s`` rises by one followed by ``s`` descents by one (a stretched face)."""
    e = list(tau)
    r = len(e)
    if r % 2:
        return False
    s = r // 2
    k = e.index(min(e))
    e = e[k:] + e[:k]
    return all(e[j + 1] - e[j] == 1 for j in range(s)) and \
        all(e[(j + 1) % r] - e[j] == -1 for j in range(s, r))
