"""Mobiles: labelled bipartite plane trees.

A planted mobile is stored as nested tuples.  A white vertex is
``(label, blacks)`` and a black vertex is a tuple of white children.  All
children are listed in clockwise order starting just after the parent edge
(for the root white: starting at the planting corner), so the cw-type of a
black vertex is ``(parent label, child labels...)``.

Around each black vertex, cw-consecutive whites ``v, u`` must satisfy
``label(u) >= label(v) - 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

__all__ = [
    "MobileError",
    "Flavor",
    "Mobile",
    "leaf",
    "encode",
    "decode",
    "validate",
    "cw_types",
    "flatten",
    "right_local_max_whites",
    "child_sequences",
    "MobileTable",
    "enumerate_mobiles",
    "sample_uniform",
]

# enumeration cap on the size parameter for 2-mobiles
MAX_ENUM_SIZE = 8


class MobileError(ValueError):
    pass


@dataclass(frozen=True)
class Flavor:
    """Which mobiles are meant.

    ``p`` fixes the black degree (None allows any degree, the size then
    counts edges instead of black vertices); ``descending`` asks every black
    cw-type to have a unique rise; ``floating`` asks all labels to be >= 1.
    """

    p: int | None = 2
    descending: bool = False
    floating: bool = True

    def cost(self, n_children: int) -> int:
        return 1 if self.p is not None else n_children + 1


def leaf(label: int) -> tuple:
    return (label, ())


def encode(white) -> str:
    """Canonical text: ``label`` then one parenthesised group per black."""
    label, blacks = white
    return str(label) + "".join("(" + ",".join(encode(w) for w in b) + ")" for b in blacks)


def decode(text: str):
    pos = 0

    def peek():
        return text[pos] if pos < len(text) else ""

    def white():
        nonlocal pos
        start = pos
        if pos < len(text) and text[pos] == "-":
            pos += 1
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise MobileError(f"label expected at position {pos}")
        label = int(text[start:pos])
        blacks = []
        while pos < len(text) and text[pos] == "(":
            pos += 1
            kids = []
            if peek() != ")":
                kids.append(white())
                while peek() == ",":
                    pos += 1
                    kids.append(white())
            if peek() != ")":
                raise MobileError(f"')' expected at position {pos}")
            pos += 1
            blacks.append(tuple(kids))
        return (label, tuple(blacks))

    w = white()
    if pos != len(text):
        raise MobileError(f"trailing text at position {pos}")
    return w


class Mobile:
    """A planted mobile with convenience accessors."""

    __slots__ = ("root",)

    def __init__(self, root):
        if isinstance(root, str):
            root = decode(root)
        self.root = root

    def __eq__(self, other):
        return isinstance(other, Mobile) and self.root == other.root

    def __hash__(self):
        return hash(self.root)

    def __repr__(self):
        return f"Mobile({encode(self.root)!r})"

    def encode(self) -> str:
        return encode(self.root)

    def n_black(self) -> int:
        return len(flatten(self.root)[1])

    def n_edges(self) -> int:
        return sum(len(b) for b in flatten(self.root)[1])

    def labels(self) -> list[int]:
        return flatten(self.root)[0]

    def shifted(self, k: int) -> "Mobile":
        return Mobile(_shift(self.root, k))


def _shift(white, k):
    label, blacks = white
    return (label + k, tuple(tuple(_shift(w, k) for w in b) for b in blacks))


def flatten(root) -> tuple[list[int], list[list[int]]]:
    """Whites in preorder and each black as the list of its cw white ids.

    Returns ``(labels, blacks)`` where ``blacks[j][0]`` is the parent white.
    """
    labels: list[int] = []
    blacks: list[list[int]] = []

    def walk(white):
        me = len(labels)
        labels.append(white[0])
        for b in white[1]:
            entry = [me]
            blacks.append(entry)
            for w in b:
                entry.append(walk(w))
        return me

    walk(root)
    return labels, blacks


def cw_types(root) -> list[tuple]:
    labels, blacks = flatten(root)
    return [tuple(labels[w] for w in b) for b in blacks]


def _cw_ok(seq) -> bool:
    k = len(seq)
    return all(seq[(j + 1) % k] >= seq[j] - 1 for j in range(k))


def _descending(seq) -> bool:
    k = len(seq)
    if k == 1:
        return True
    steps = [seq[(j + 1) % k] - seq[j] for j in range(k)]
    return sum(1 for s in steps if s != -1) == 1


def validate(mobile, flavor: Flavor | None = None, plain: bool = False) -> bool:
    """Check the mobile rule and the constraints of ``flavor``.

    ``plain`` additionally asks for minimal label exactly 1.
    """
    root = mobile.root if isinstance(mobile, Mobile) else mobile
    labels, blacks = flatten(root)
    for b in blacks:
        seq = [labels[w] for w in b]
        if not _cw_ok(seq):
            return False
        if flavor is not None:
            if flavor.p is not None and len(seq) != flavor.p:
                return False
            if flavor.descending and not _descending(seq):
                return False
    if flavor is not None and flavor.floating and min(labels) < 1:
        return False
    if plain and min(labels) != 1:
        return False
    return True


def right_local_max_whites(mobile) -> set[int]:
    """Preorder ids of whites whose right neighbours all have labels <= theirs.

    In a black of cw-type ``(w0, w1, ..., wk)`` the right neighbour of
    ``w_j`` is ``w_{j-1}`` (cyclically, so ``w0``'s is ``wk``).
    """
    root = mobile.root if isinstance(mobile, Mobile) else mobile
    labels, blacks = flatten(root)
    ok = [True] * len(labels)
    for b in blacks:
        k = len(b)
        for j in range(k):
            if labels[b[j - 1]] > labels[b[j]]:
                ok[b[j]] = False
    return {w for w in range(len(labels)) if ok[w]}


# ---------------------------------------------------------------------------
# counting, enumeration, sampling


def child_sequences(label: int, k: int, flavor: Flavor) -> list[tuple]:
    """All child label tuples of length ``k`` for a black under a white ``label``."""
    if flavor.descending:
        out = []
        for r in range(k + 1):
            seq = [label]
            for j in range(k):
                seq.append(seq[-1] + (k if j == r else -1))
            out.append(tuple(seq[1:]))
    else:
        out = []

        def grow(prefix, last):
            j = len(prefix) + 1
            if j > k:
                if label >= last - 1:
                    out.append(tuple(prefix))
                return
            for c in range(last - 1, label + k - j + 2):
                prefix.append(c)
                grow(prefix, c)
                prefix.pop()

        grow([], label)
    if flavor.floating:
        out = [s for s in out if all(c >= 1 for c in s)]
    return out


class MobileTable:
    """Exact counts of planted mobiles by root label and size, with sampling.

    ``count(l, n)`` is the number of planted mobiles of the flavour rooted at
    a white labelled ``l`` whose size is ``n`` (black vertices when ``p`` is
    fixed, edges otherwise).  Counts are big integers memoised over the
    labels actually reachable, which lie within ``n * max(p - 1, 1)`` of the
    root label.
    """

    def __init__(self, flavor: Flavor, max_size: int):
        self.flavor = flavor
        self.max_size = max_size
        self._w: dict = {}
        self._g: dict = {}
        self._seqs: dict = {}

    def _check(self, n):
        if n > self.max_size:
            raise MobileError(f"size {n} beyond table capacity {self.max_size}")

    def sequences(self, label: int, n: int) -> list[tuple]:
        """Child sequences a black under ``label`` may have within size ``n``."""
        key = (label, n)
        if key not in self._seqs:
            f = self.flavor
            if f.p is not None:
                seqs = child_sequences(label, f.p - 1, f) if n >= 1 else []
            else:
                seqs = []
                for k in range(0, n):
                    seqs.extend(child_sequences(label, k, f))
            self._seqs[key] = seqs
        return self._seqs[key]

    def count(self, label: int, n: int) -> int:
        self._check(n)
        key = (label, n)
        v = self._w.get(key)
        if v is None:
            v = 1 if n == 0 else 0
            for m in range(1, n + 1):
                b = self.black_count(label, m)
                if b:
                    v += b * self.count(label, n - m)
            self._w[key] = v
        return v

    def black_count(self, label: int, m: int) -> int:
        """Planted subtrees hanging from one black child of ``label`` of size ``m``."""
        total = 0
        for cs in self.sequences(label, m):
            rest = m - self.flavor.cost(len(cs))
            if rest >= 0:
                total += self._chain(cs, rest)
        return total

    def _chain(self, cs: tuple, m: int) -> int:
        if not cs:
            return 1 if m == 0 else 0
        key = (cs, m)
        v = self._g.get(key)
        if v is None:
            v = 0
            for a in range(m + 1):
                w = self.count(cs[0], a)
                if w:
                    v += w * self._chain(cs[1:], m - a)
            self._g[key] = v
        return v

    # sampling ---------------------------------------------------------------
    def sample(self, label: int, n: int, rng: random.Random):
        """Uniform planted mobile of size ``n`` rooted at ``label``."""
        total = self.count(label, n)
        if total == 0:
            raise MobileError(f"no mobile of size {n} rooted at label {label}")
        blacks = []
        while n > 0:
            r = rng.randrange(self.count(label, n))
            for m in range(1, n + 1):
                w = self.black_count(label, m) * self.count(label, n - m)
                if r < w:
                    blacks.append(self._sample_black(label, m, rng))
                    n -= m
                    break
                r -= w
        return (label, tuple(blacks))

    def _sample_black(self, label: int, m: int, rng: random.Random):
        r = rng.randrange(self.black_count(label, m))
        for cs in self.sequences(label, m):
            rest = m - self.flavor.cost(len(cs))
            if rest < 0:
                continue
            w = self._chain(cs, rest)
            if r < w:
                return self._sample_chain(cs, rest, rng)
            r -= w
        raise AssertionError("black sampling fell through")

    def _sample_chain(self, cs: tuple, m: int, rng: random.Random) -> tuple:
        kids = []
        for j, c in enumerate(cs):
            tail = cs[j + 1:]
            r = rng.randrange(self._chain(cs[j:], m))
            for a in range(m + 1):
                w = self.count(c, a) * self._chain(tail, m - a)
                if r < w:
                    kids.append(self.sample(c, a, rng))
                    m -= a
                    break
                r -= w
        return tuple(kids)

    # enumeration ------------------------------------------------------------
    def enumerate(self, label: int, n: int) -> list:
        self._check(n)
        return self._whites(label, n, {})

    def _whites(self, label, n, memo):
        key = (label, n)
        if key in memo:
            return memo[key]
        out = [(label, ())] if n == 0 else []
        for m in range(1, n + 1):
            firsts = self._blacks(label, m, memo)
            if not firsts:
                continue
            for rest in self._whites(label, n - m, memo):
                for b in firsts:
                    out.append((label, (b,) + rest[1]))
        memo[key] = out
        return out

    def _blacks(self, label, m, memo):
        out = []
        for cs in self.sequences(label, m):
            rest = m - self.flavor.cost(len(cs))
            if rest >= 0:
                out.extend(self._kids(cs, rest, memo))
        return out

    def _kids(self, cs, m, memo):
        if not cs:
            return [()] if m == 0 else []
        out = []
        for a in range(m + 1):
            heads = self._whites(cs[0], a, memo)
            if not heads:
                continue
            tails = self._kids(cs[1:], m - a, memo)
            for h in heads:
                for t in tails:
                    out.append((h,) + t)
        return out


def enumerate_mobiles(flavor: Flavor, n: int, root_label: int = 1, plain: bool = False,
                      cap: int = MAX_ENUM_SIZE) -> list[Mobile]:
    """All planted mobiles of size ``n`` rooted at ``root_label``, sorted by encoding."""
    if n > cap:
        raise MobileError(f"enumeration of size {n} exceeds the cap {cap}")
    table = MobileTable(flavor, n)
    roots = table.enumerate(root_label, n)
    ms = [Mobile(r) for r in roots]
    if plain:
        ms = [m for m in ms if min(m.labels()) == 1]
    ms.sort(key=lambda m: m.encode())
    return ms


def sample_uniform(flavor: Flavor, n: int, seed, root_label: int = 1,
                   table: MobileTable | None = None) -> Mobile:
    rng = random.Random(seed)
    if table is None:
        table = MobileTable(flavor, n)
    return Mobile(table.sample(root_label, n, rng))
