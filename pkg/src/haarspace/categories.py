"""Categories of partitions for the uniform easy quantum group families.

Every category here is described by a membership predicate on the one-line
(rotated) form of a partition, so the same predicate handles single-row
partitions used by the integration code and the two-row partitions needed to
check the category axioms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Union

from .partitions import (
    EMPTY, Partition, WHITE, all_partitions, check_word, compose, involve,
    remove_block, set_partitions, tensor, _labels_noncrossing,
)

INF = math.inf
MAX_LEGS = 10

P2 = "P2"
NC2 = "NC2"
MATCH_P2 = "MatchP2"
MATCH_NC2 = "MatchNC2"
PEVEN = "Peven"
NCEVEN = "NCeven"
MATCH_PEVEN = "MatchPeven"
MATCH_NCEVEN = "MatchNCeven"
PEVEN_S = "PevenS"
NCEVEN_S = "NCevenS"
NCEVEN_MINUS = "NCevenMinus"

TAGS = (P2, NC2, MATCH_P2, MATCH_NC2, PEVEN, NCEVEN, MATCH_PEVEN, MATCH_NCEVEN,
        PEVEN_S, NCEVEN_S, NCEVEN_MINUS)

# categories whose members do not depend on leg colors
COLORBLIND = frozenset({P2, NC2, PEVEN, NCEVEN})
PAIRINGS = frozenset({P2, NC2, MATCH_P2, MATCH_NC2})
NONCROSSING = frozenset({NC2, MATCH_NC2, NCEVEN, MATCH_NCEVEN, NCEVEN_S, NCEVEN_MINUS})

CLI_NAMES = {
    "p2": P2, "nc2": NC2, "p2-match": MATCH_P2, "nc2-match": MATCH_NC2,
    "peven": PEVEN, "nceven": NCEVEN, "peven-match": MATCH_PEVEN,
    "nceven-match": MATCH_NCEVEN, "peven-s": PEVEN_S, "nceven-s": NCEVEN_S,
    "nceven-minus": NCEVEN_MINUS,
}


class SizeLimitError(ValueError):
    pass


@dataclass(frozen=True)
class CategoryId:
    tag: str
    s: float | int | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown category tag {self.tag!r}")
        if self.tag in (PEVEN_S, NCEVEN_S):
            s = self.s
            if s is None or not (s == INF or (isinstance(s, int) and s >= 2 and s % 2 == 0)):
                raise ValueError(f"{self.tag} needs an even parameter s >= 2 or infinity, got {s!r}")
        elif self.s is not None:
            raise ValueError(f"{self.tag} takes no parameter s")

    def __str__(self):
        if self.s is None:
            return self.tag
        return f"{self.tag}({'inf' if self.s == INF else self.s})"

    @property
    def colorblind(self) -> bool:
        return self.tag in COLORBLIND

    @classmethod
    def from_name(cls, name: str, s=None) -> "CategoryId":
        tag = CLI_NAMES.get(name.lower(), name)
        if tag in (PEVEN_S, NCEVEN_S):
            return cls(tag, parse_s(s))
        return cls(tag)


def parse_s(s):
    """Read a parameter ``s``: an even int, or ``"inf"``/infinity."""
    if s is None:
        raise ValueError("parameter s is required")
    if s == INF or str(s).lower() in ("inf", "infinity"):
        return INF
    return int(s)


Predicate = Callable[[Partition], bool]
CategoryLike = Union[CategoryId, Predicate]


def _balance(colors: str, block) -> int:
    return sum(1 if colors[x] == "w" else -1 for x in block)


def _contains_oneline(tag: str, s, lab: tuple[int, ...], colors: str) -> bool:
    blocks: dict[int, list[int]] = {}
    for pos, b in enumerate(lab):
        blocks.setdefault(b, []).append(pos)
    sizes = [len(b) for b in blocks.values()]
    if tag in PAIRINGS:
        if any(n != 2 for n in sizes):
            return False
    elif any(n % 2 for n in sizes):
        return False
    if tag in NONCROSSING and not _labels_noncrossing(lab):
        return False
    if tag in COLORBLIND:
        return True
    if tag in (MATCH_P2, MATCH_NC2):
        return all(colors[b[0]] != colors[b[1]] for b in blocks.values())
    if tag in (MATCH_PEVEN, MATCH_NCEVEN):
        return all(_balance(colors, b) == 0 for b in blocks.values())
    if tag in (PEVEN_S, NCEVEN_S):
        if s == INF:
            return all(_balance(colors, b) == 0 for b in blocks.values())
        return all(_balance(colors, b) % s == 0 for b in blocks.values())
    if tag == NCEVEN_MINUS:
        return all(colors[x] != colors[y] for b in blocks.values() for x, y in zip(b, b[1:]))
    raise AssertionError(tag)


@lru_cache(maxsize=1 << 18)
def _contains_cached(cat: CategoryId, lab, colors) -> bool:
    return _contains_oneline(cat.tag, cat.s, lab, colors)


def contains(cat: CategoryLike, p: Partition) -> bool:
    """Membership of ``p`` (single- or two-row) in the category ``cat``.

    ``cat`` may also be any predicate on partitions.
    """
    if not isinstance(cat, CategoryId):
        return bool(cat(p))
    lab, colors = p.one_line()
    if cat.colorblind:
        colors = WHITE * len(colors)
    return _contains_cached(cat, lab, colors)


def _sizes_for(cat: CategoryId, n: int):
    if cat.tag in PAIRINGS:
        return {2}
    return set(range(2, n + 1, 2))


def enumerate_category(cat: CategoryLike, word: str, limit: int = MAX_LEGS) -> list[Partition]:
    """All single-row partitions on ``word`` belonging to ``cat``, in canonical order.

    Colorblind categories read every word as all white.
    """
    check_word(word)
    if len(word) > limit:
        raise SizeLimitError(f"{len(word)} legs exceeds the enumeration limit {limit}")
    if isinstance(cat, CategoryId):
        if cat.colorblind:
            word = WHITE * len(word)
        return list(_enumerate_cached(cat, word))
    return [p for p in all_partitions(word) if cat(p)]


@lru_cache(maxsize=4096)
def _enumerate_cached(cat: CategoryId, word: str) -> tuple[Partition, ...]:
    n = len(word)
    if n == 0:
        return (EMPTY,)
    if n % 2:
        return ()
    out = [p for p in all_partitions(word, _sizes_for(cat, n)) if contains(cat, p)]
    return tuple(out)


@dataclass(frozen=True)
class QuantumFamily:
    """A uniform family ``G = (G_N)`` from the classification.

    ``name`` is one of ``O, Obar, Oplus, U, Ubar, Uplus, Hs, HsPlus, K, Kplus``;
    ``s`` is used by ``Hs``/``HsPlus``; ``q`` is the twist.
    """

    name: str
    s: float | int | None = None
    q: int = field(default=0)

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.name!r}")
        forced = {"Obar": -1, "Ubar": -1, "O": 1, "U": 1}
        q = self.q
        if self.name in forced:
            if q not in (0, forced[self.name]):
                raise ValueError(f"{self.name} has twist {forced[self.name]}")
            q = forced[self.name]
        elif q == 0:
            q = 1
        if q not in (1, -1):
            raise ValueError(f"twist must be +1 or -1, got {q}")
        object.__setattr__(self, "q", q)
        if self.name in ("Hs", "HsPlus"):
            s = self.s
            if not (s == INF or (isinstance(s, int) and s >= 2 and s % 2 == 0)):
                raise ValueError(f"{self.name} needs an even s >= 2 or infinity, got {s!r}")
        elif self.s is not None:
            raise ValueError(f"{self.name} takes no parameter s")

    def __str__(self):
        base = self.name if self.s is None else f"{self.name}({'inf' if self.s == INF else self.s})"
        return base if self.q == 1 else f"{base}[q=-1]"

    @property
    def classical(self) -> bool:
        return self.name in ("O", "Obar", "U", "Ubar", "Hs", "K")

    @property
    def real(self) -> bool:
        """True when ``u`` is self-conjugate, so word colors are irrelevant."""
        return family_category(self).colorblind

    @property
    def category(self) -> CategoryId:
        return family_category(self)

    @classmethod
    def from_token(cls, token: str, s=None, q: int = 0) -> "QuantumFamily":
        """Parse the lowercase CLI tokens ``o, o-bar, o+, u, u-bar, u+, h, h+, hs, hs+, k, k+``."""
        t = token.lower()
        simple = {"o": "O", "o-bar": "Obar", "o+": "Oplus",
                  "u": "U", "u-bar": "Ubar", "u+": "Uplus", "k": "K", "k+": "Kplus"}
        if t in simple:
            return cls(simple[t], None, q)
        if t in ("h", "h+"):
            return cls("Hs" if t == "h" else "HsPlus", 2, q)
        if t in ("hs", "hs+"):
            if s is None:
                raise ValueError(f"family {token} needs --s")
            return cls("Hs" if t == "hs" else "HsPlus", parse_s(s), q)
        raise ValueError(f"unknown family token {token!r}")


FAMILY_NAMES = ("O", "Obar", "Oplus", "U", "Ubar", "Uplus", "Hs", "HsPlus", "K", "Kplus")

_FAMILY_TAGS = {"O": P2, "Obar": P2, "Oplus": NC2, "U": MATCH_P2, "Ubar": MATCH_P2,
                "Uplus": MATCH_NC2, "K": MATCH_PEVEN, "Kplus": MATCH_NCEVEN}


def family_category(f: QuantumFamily) -> CategoryId:
    if f.name == "Hs":
        return CategoryId(PEVEN, None) if f.s == 2 else CategoryId(PEVEN_S, f.s)
    if f.name == "HsPlus":
        return CategoryId(NCEVEN, None) if f.s == 2 else CategoryId(NCEVEN_S, f.s)
    return CategoryId(_FAMILY_TAGS[f.name])


def words(n: int, colorblind: bool = False):
    if colorblind:
        return [WHITE * n]
    return ["".join(w) for w in product("wb", repeat=n)]


def uniformity_check(cat: CategoryLike, max_legs: int, colorblind: bool | None = None) -> bool:
    """Closure of the single-row members under removing any one block."""
    return not uniformity_violations(cat, max_legs, colorblind)


def uniformity_violations(cat: CategoryLike, max_legs: int, colorblind: bool | None = None):
    if max_legs > MAX_LEGS:
        raise SizeLimitError(f"max_legs {max_legs} exceeds {MAX_LEGS}")
    if colorblind is None:
        colorblind = isinstance(cat, CategoryId) and cat.colorblind
    bad = []
    for n in range(1, max_legs + 1):
        for w in words(n, colorblind):
            for p in enumerate_category(cat, w):
                for b in p.blocks:
                    r = remove_block(p, b)
                    if not contains(cat, r):
                        bad.append((p, b, r))
    return bad


@dataclass
class AxiomReport:
    category: str
    max_legs: int
    checked: dict = field(default_factory=lambda: {"identity": 0, "tensor": 0, "compose": 0, "involve": 0})
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed


def two_row_members(cat: CategoryLike, max_legs: int, colorblind: bool = False) -> list[Partition]:
    """Every member with ``k`` upper and ``l`` lower legs, ``k + l <= max_legs``."""
    out = []
    for n in range(0, max_legs + 1):
        shapes = list(set_partitions(n))
        for w in words(n, colorblind):
            for k in range(n + 1):
                upper, lower = w[:k], w[k:]
                for blocks in shapes:
                    p = Partition(blocks, lower, upper)
                    if contains(cat, p):
                        out.append(p)
    return out


def axioms_check(cat: CategoryLike, max_legs: int, colorblind: bool | None = None) -> AxiomReport:
    """Check identity, and closure under tensor, composition and involution.

    All members with at most ``max_legs`` legs are generated; every product
    whose result also has at most ``max_legs`` legs must again be a member.
    """
    if colorblind is None:
        colorblind = isinstance(cat, CategoryId) and cat.colorblind
    rep = AxiomReport(str(cat), max_legs)
    members = two_row_members(cat, max_legs, colorblind)

    def norm(p: Partition) -> Partition:
        if colorblind:
            return Partition(p.blocks, WHITE * p.n_lower, WHITE * p.n_upper)
        return p

    ident = Partition(((0, 1),), WHITE, WHITE)
    rep.checked["identity"] += 1
    if max_legs >= 2 and not contains(cat, ident):
        rep.violations.append(("identity", ident))

    for p in members:
        rep.checked["involve"] += 1
        r = norm(involve(p))
        if not contains(cat, r):
            rep.violations.append(("involve", p, r))

    by_size: dict[int, list[Partition]] = {}
    for p in members:
        by_size.setdefault(p.size, []).append(p)
    for a in members:
        for n in range(0, max_legs - a.size + 1):
            for b in by_size.get(n, ()):
                rep.checked["tensor"] += 1
                r = tensor(a, b)
                if not contains(cat, r):
                    rep.violations.append(("tensor", a, b, r))

    by_upper: dict[str, list[Partition]] = {}
    for p in members:
        by_upper.setdefault(p.upper, []).append(p)
    for a in members:
        for b in by_upper.get(a.lower, ()):
            if a.n_upper + b.n_lower > max_legs:
                continue
            rep.checked["compose"] += 1
            r, _ = compose(a, b)
            if not contains(cat, r):
                rep.violations.append(("compose", a, b, r))
    return rep
