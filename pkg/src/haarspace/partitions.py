"""Colored set partitions and the combinatorics used by the integration formulas.

A :class:`Partition` lives on an upper row of ``k`` legs and a lower row of
``l`` legs.  Internally legs are numbered from 0: upper legs ``0..k-1`` left
to right, then lower legs ``k..k+l-1`` left to right.  The text format used by
the CLI numbers legs from 1 in the same order.

Colors are the characters ``"w"`` (white, the plain coordinate ``u``) and
``"b"`` (black, the conjugate ``u*``); a colored word is a plain string over
that alphabet.
"""

from __future__ import annotations

import enum
import json
import random
from itertools import combinations
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class Color(str, enum.Enum):
    WHITE = "w"
    BLACK = "b"


WHITE = Color.WHITE.value
BLACK = Color.BLACK.value

_FLIP = str.maketrans("wb", "bw")


def flip_colors(word: str) -> str:
    return word.translate(_FLIP)


def check_word(word: str) -> str:
    if any(c not in "wb" for c in word):
        raise ValueError(f"colored word must use only 'w' and 'b', got {word!r}")
    return word


def _canonical(blocks: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


@dataclass(frozen=True)
class Partition:
    """A colored partition of ``len(upper) + len(lower)`` legs.

    Blocks are stored in canonical form (each block sorted, blocks ordered by
    least element), so two equal partitions compare and hash equal.
    """

    blocks: tuple[tuple[int, ...], ...]
    lower: str
    upper: str = ""

    def __post_init__(self):
        check_word(self.lower)
        check_word(self.upper)
        blocks = _canonical(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        n = len(self.upper) + len(self.lower)
        seen = sorted(x for b in blocks for x in b)
        if seen != list(range(n)) or any(len(b) == 0 for b in blocks):
            raise ValueError(f"blocks {blocks} do not partition {n} legs")

    @classmethod
    def from_blocks(cls, blocks, lower=None, upper: str = "") -> "Partition":
        """Build a partition from 0-based blocks; ``lower`` defaults to all white."""
        if lower is None:
            n = sum(len(b) for b in blocks) - len(upper)
            lower = WHITE * n
        return cls(tuple(tuple(b) for b in blocks), lower, upper)

    @classmethod
    def parse(cls, text: str, lower: str | None = None, upper: str = "") -> "Partition":
        """Parse the 1-based text form, e.g. ``Partition.parse("[[1,4],[2,3]]", "wbwb")``."""
        raw = json.loads(text)
        blocks = [[int(x) - 1 for x in b] for b in raw]
        return cls.from_blocks(blocks, lower, upper)

    def to_text(self) -> str:
        return json.dumps([[x + 1 for x in b] for b in self.blocks], separators=(",", ":"))

    def to_dict(self) -> dict:
        return {"blocks": [[x + 1 for x in b] for b in self.blocks],
                "lower": self.lower, "upper": self.upper}

    def __str__(self):
        colors = self.lower if not self.upper else f"{self.upper}/{self.lower}"
        return f"{self.to_text()} {colors!r}"

    @property
    def size(self) -> int:
        return len(self.upper) + len(self.lower)

    @property
    def n_upper(self) -> int:
        return len(self.upper)

    @property
    def n_lower(self) -> int:
        return len(self.lower)

    def labels(self) -> tuple[int, ...]:
        """Block index of each leg."""
        lab = [0] * self.size
        for k, b in enumerate(self.blocks):
            for x in b:
                lab[x] = k
        return tuple(lab)

    def one_line(self) -> tuple[tuple[int, ...], str]:
        """Rotate the upper row onto the lower line.

        Returns the block label of every leg and the resulting colors, going
        around the boundary counterclockwise: upper legs right to left (with
        their colors flipped), then lower legs left to right.
        """
        lab = self.labels()
        k = self.n_upper
        order = list(range(k - 1, -1, -1)) + list(range(k, self.size))
        colors = flip_colors(self.upper[::-1]) + self.lower
        return tuple(lab[x] for x in order), colors


EMPTY = Partition((), "")


def block_count(p: Partition) -> int:
    return len(p.blocks)


def kernel(i: Sequence[int]) -> Partition:
    """Partition of positions grouping equal entries of ``i`` (all legs white)."""
    groups: dict[int, list[int]] = {}
    for r, v in enumerate(i):
        groups.setdefault(v, []).append(r)
    return Partition(tuple(tuple(g) for g in groups.values()), WHITE * len(i))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def groups(self, items) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in items:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def join(p: Partition, q: Partition) -> Partition:
    """Lattice join: the finest partition coarser than both ``p`` and ``q``.

    Colors are taken from ``p``.
    """
    if p.size != q.size:
        raise ValueError(f"join of partitions on {p.size} and {q.size} legs")
    uf = _UnionFind(p.size)
    for b in p.blocks + q.blocks:
        for x in b[1:]:
            uf.union(b[0], x)
    return Partition(tuple(map(tuple, uf.groups(range(p.size)))), p.lower, p.upper)


def join_count(p: Partition, q: Partition) -> int:
    """``|p v q|`` without building the joined partition."""
    if p.size != q.size:
        raise ValueError(f"join of partitions on {p.size} and {q.size} legs")
    uf = _UnionFind(p.size)
    for b in p.blocks + q.blocks:
        for x in b[1:]:
            uf.union(b[0], x)
    return sum(1 for x in range(p.size) if uf.find(x) == x)


def refines(p: Partition, q: Partition) -> bool:
    """True if every block of ``p`` lies inside a block of ``q``."""
    lab = q.labels()
    return all(len({lab[x] for x in b}) == 1 for b in p.blocks)


def _labels_noncrossing(lab: Sequence[int]) -> bool:
    last = {}
    for pos, b in enumerate(lab):
        last[b] = pos
    stack: list[int] = []
    opened = set()
    for pos, b in enumerate(lab):
        if b in opened:
            if not stack or stack[-1] != b:
                return False
        else:
            opened.add(b)
            stack.append(b)
        if last[b] == pos:
            stack.pop()
    return True


def is_noncrossing(p: Partition) -> bool:
    """Noncrossing test, on the one-line (rotated) form for two-row partitions."""
    lab, _ = p.one_line()
    return _labels_noncrossing(lab)


def is_even(p: Partition) -> bool:
    return all(len(b) % 2 == 0 for b in p.blocks)


def signature(p: Partition, rng: random.Random | None = None) -> int:
    """The signature of an even partition.

    Legs lying in different blocks are swapped by adjacent transpositions
    until the partition becomes noncrossing; the result is ``(-1)`` to the
    number of swaps.  Without ``rng`` the swaps are those of a bubble sort
    grouping the blocks in order of first appearance.  With ``rng`` a random
    target order of the blocks is drawn and random improving swaps are made,
    stopping as soon as the arrangement is noncrossing.
    """
    if not is_even(p):
        raise ValueError(f"signature needs even blocks, got {p}")
    lab, _ = p.one_line()
    if rng is None:
        return _signature_cached(lab)
    return _reduce(list(lab), rng)


@lru_cache(maxsize=65536)
def _signature_cached(lab: tuple[int, ...]) -> int:
    return _reduce(list(lab), None)


def _reduce(lab: list[int], rng: random.Random | None) -> int:
    blocks = list(dict.fromkeys(lab))
    if rng is not None:
        rng.shuffle(blocks)
    rank = {b: r for r, b in enumerate(blocks)}
    swaps = 0
    while not _labels_noncrossing(lab):
        inverted = [r for r in range(len(lab) - 1) if rank[lab[r]] > rank[lab[r + 1]]]
        r = inverted[0] if rng is None else rng.choice(inverted)
        lab[r], lab[r + 1] = lab[r + 1], lab[r]
        swaps += 1
    return -1 if swaps % 2 else 1


def delta(p: Partition, i: Sequence[int], q: int = 1) -> int:
    """Kronecker symbol of ``p`` at the multi-index ``i``, twisted when ``q == -1``.

    Nonzero exactly when ``i`` is constant on every block of ``p``; the
    twisted value is then the signature of ``kernel(i)``, or 0 when that
    kernel has an odd block.
    """
    if len(i) != p.size:
        raise ValueError(f"multi-index of length {len(i)} for a partition on {p.size} legs")
    if q not in (1, -1):
        raise ValueError(f"twist must be +1 or -1, got {q}")
    for b in p.blocks:
        v = i[b[0]]
        if any(i[x] != v for x in b[1:]):
            return 0
    if q == 1:
        return 1
    ker = kernel(i)
    if not is_even(ker):
        return 0
    return signature(ker)


def tensor(p: Partition, q: Partition) -> Partition:
    """Horizontal concatenation, ``p`` on the left."""
    k1, l1, k2 = p.n_upper, p.n_lower, q.n_upper
    def pmap(x):
        return x if x < k1 else k1 + k2 + (x - k1)
    def qmap(x):
        return k1 + x if x < k2 else k1 + k2 + l1 + (x - k2)
    blocks = [tuple(map(pmap, b)) for b in p.blocks] + [tuple(map(qmap, b)) for b in q.blocks]
    return Partition(tuple(blocks), p.lower + q.lower, p.upper + q.upper)


def compose(p: Partition, q: Partition) -> tuple[Partition, int]:
    """Stack ``p`` on top of ``q`` and trace out the middle row.

    Returns the composite and the number of closed loops removed.
    """
    if p.lower != q.upper:
        raise ValueError(f"cannot compose: lower word {p.lower!r} != upper word {q.upper!r}")
    k, l, m = p.n_upper, p.n_lower, q.n_lower
    # nodes: p's upper legs 0..k-1, middle row k..k+l-1, q's lower legs k+l..k+l+m-1
    uf = _UnionFind(k + l + m)
    for b in p.blocks:
        for x in b[1:]:
            uf.union(b[0], x)
    for b in q.blocks:
        nodes = [k + x for x in b]
        for x in nodes[1:]:
            uf.union(nodes[0], x)
    groups = uf.groups(range(k + l + m))
    blocks, loops = [], 0
    for g in groups:
        outer = [x if x < k else x - l for x in g if x < k or x >= k + l]
        if outer:
            blocks.append(tuple(outer))
        else:
            loops += 1
    return Partition(tuple(blocks), q.lower, p.upper), loops


def involve(p: Partition) -> Partition:
    """Upside-down turning: rows swapped, every color flipped."""
    k, l = p.n_upper, p.n_lower
    def f(x):
        return l + x if x < k else x - k
    blocks = tuple(tuple(map(f, b)) for b in p.blocks)
    return Partition(blocks, flip_colors(p.upper), flip_colors(p.lower))


def rotate(p: Partition) -> Partition:
    """Move the leftmost upper leg down to the leftmost lower position, flipping its color."""
    k = p.n_upper
    if k == 0:
        raise ValueError("rotate needs at least one upper leg")
    def f(x):
        if x == 0:
            return k - 1
        return x - 1 if x < k else x
    blocks = tuple(tuple(map(f, b)) for b in p.blocks)
    return Partition(blocks, flip_colors(p.upper[0]) + p.lower, p.upper[1:])


def remove_block(p: Partition, block: Iterable[int]) -> Partition:
    """Delete one block and renumber the remaining legs order-preservingly."""
    block = tuple(sorted(block))
    if block not in p.blocks:
        raise ValueError(f"{block} is not a block of {p}")
    gone = set(block)
    keep = [x for x in range(p.size) if x not in gone]
    new = {x: r for r, x in enumerate(keep)}
    k = p.n_upper
    upper = "".join(p.upper[x] for x in keep if x < k)
    lower = "".join(p.lower[x - k] for x in keep if x >= k)
    blocks = tuple(tuple(new[x] for x in b) for b in p.blocks if b != block)
    return Partition(blocks, lower, upper)


def set_partitions(n: int, sizes=None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All set partitions of ``range(n)`` as canonical block tuples.

    ``sizes`` optionally restricts the allowed block sizes (a container of ints).
    """
    def rec(rest: tuple[int, ...]):
        if not rest:
            yield ()
            return
        first, others = rest[0], rest[1:]
        for extra in range(len(others) + 1):
            if sizes is not None and extra + 1 not in sizes:
                continue
            for combo in combinations(others, extra):
                chosen = set(combo)
                remaining = tuple(x for x in others if x not in chosen)
                for tail in rec(remaining):
                    yield ((first,) + combo,) + tail
    yield from rec(tuple(range(n)))


def all_partitions(word: str, sizes=None) -> list[Partition]:
    """Every single-row partition on ``word``, sorted in canonical order."""
    out = [Partition(b, word) for b in set_partitions(len(word), sizes)]
    out.sort(key=lambda p: p.blocks)
    return out
