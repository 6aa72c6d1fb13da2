"""Weingarten-type integration over the homogeneous spaces ``G_MN^L``.

Moments are evaluated from the partition side only.  For a word ``w`` on
``s`` legs, with ``D`` the partitions of the family's category on ``w``::

    int u_{i1 j1}^{e1} ... u_{is js}^{es}
        = sum_{p,r,t,v in D} L^|r v v| delta_p(i) delta_t(j) W_M(p, r) W_N(t, v)

where ``W_M`` inverts the Gram matrix ``M^|p v q|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .categories import CategoryId, QuantumFamily, contains
from .partitions import Partition, check_word, delta, join_count
from .weingarten import generalized_weingarten, join_table, power_matrix, weingarten


@dataclass(frozen=True)
class SpaceSpec:
    family: QuantumFamily
    L: int
    M: int
    N: int

    def __post_init__(self):
        if not 0 <= self.L <= self.M <= self.N:
            raise ValueError(f"need 0 <= L <= M <= N, got L={self.L}, M={self.M}, N={self.N}")


@dataclass(frozen=True)
class MomentSpec:
    """The monomial ``u_{i1 j1}^{e1} ... u_{is js}^{es}``; indices are 1-based."""

    word: str
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        check_word(self.word)
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        if not len(self.word) == len(self.rows) == len(self.cols):
            raise ValueError("word, rows and cols must have equal length")

    def validate(self, M: int, N: int):
        if any(not 1 <= i <= M for i in self.rows):
            raise ValueError(f"row indices {self.rows} out of range 1..{M}")
        if any(not 1 <= j <= N for j in self.cols):
            raise ValueError(f"column indices {self.cols} out of range 1..{N}")


def _norm(cat: CategoryId, word: str) -> str:
    return "w" * len(word) if cat.colorblind else word


def _wg(cat, word, n, generalized):
    return generalized_weingarten(cat, word, n) if generalized else weingarten(cat, word, n)


def _matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


@lru_cache(maxsize=1024)
def _space_kernel(cat: CategoryId, word: str, L: int, M: int, N: int, generalized: bool):
    """``(parts, X, d)`` with ``X / d = W_M . (L^|r v v|) . W_N``."""
    parts, table = join_table(cat, word)
    wm = _wg(cat, word, M, generalized)
    wn = _wg(cat, word, N, generalized)
    c = power_matrix(table, L)
    x = _matmul(_matmul(wm.numerators, c), wn.numerators)
    return parts, x, wm.denominator * wn.denominator


def _deltas(parts: Sequence[Partition], i: Sequence[int], q: int) -> list[int]:
    return [delta(p, i, q) for p in parts]


def _bilinear(u, x, v) -> int:
    total = 0
    for a, row in zip(u, x):
        if a:
            total += a * sum(r * b for r, b in zip(row, v) if b)
    return total


def qg_moment(f: QuantumFamily, N: int, word: str, i: Sequence[int], j: Sequence[int],
              generalized: bool = False) -> Fraction:
    """Haar moment ``int_{G_N} u_{i1 j1}^{e1} ... u_{is js}^{es}``.

    With ``generalized=True`` a singular Gram matrix is replaced by a
    generalized inverse instead of raising :class:`SingularGram`.
    """
    MomentSpec(word, i, j).validate(N, N)
    cat = f.category
    w = _wg(cat, word, N, generalized)
    u = _deltas(w.index, tuple(i), f.q)
    v = _deltas(w.index, tuple(j), f.q)
    return Fraction(_bilinear(u, w.numerators, v), w.denominator)


def space_moment(spec: SpaceSpec, m: MomentSpec, generalized: bool = False) -> Fraction:
    """Integral of the monomial ``m`` over ``G_MN^L``.

    Raises :class:`SingularGram` when ``M`` or ``N`` is too small for the
    Gram matrix to be invertible, unless ``generalized=True``.
    """
    m.validate(spec.M, spec.N)
    cat, q = spec.family.category, spec.family.q
    parts, x, d = _space_kernel(cat, _norm(cat, m.word), spec.L, spec.M, spec.N, generalized)
    if not parts:
        return Fraction(0)
    u = _deltas(parts, m.rows, q)
    v = _deltas(parts, m.cols, q)
    return Fraction(_bilinear(u, x, v), d)


def relation_trace_value(spec: SpaceSpec, p: Partition, r: Partition, word: str,
                         generalized: bool = False) -> Fraction:
    """``sum_{i,j} delta_p(i) delta_r(j) int u_{i1 j1}^{e1} ... u_{is js}^{es}``."""
    cat, q = spec.family.category, spec.family.q
    for x in (p, r):
        if x.upper or x.size != len(word) or not contains(cat, Partition(x.blocks, word)):
            raise ValueError(f"{x} is not in {cat} on {word!r}")
    parts, x, d = _space_kernel(cat, _norm(cat, word), spec.L, spec.M, spec.N, generalized)
    s = len(word)
    # the sum over i of delta_p(i) * delta(i) commutes with the bilinear form
    u = [0] * len(parts)
    for i in product(range(1, spec.M + 1), repeat=s):
        a = delta(p, i, q)
        if a:
            for k, dk in enumerate(_deltas(parts, i, q)):
                u[k] += a * dk
    v = [0] * len(parts)
    for j in product(range(1, spec.N + 1), repeat=s):
        b = delta(r, j, q)
        if b:
            for k, dk in enumerate(_deltas(parts, j, q)):
                v[k] += b * dk
    return Fraction(_bilinear(u, x, v), d)


def relation_trace_check(spec: SpaceSpec, p: Partition, r: Partition, word: str,
                         generalized: bool = False) -> bool:
    """Whether the traced defining relation holds: the sum above equals ``L ** |p v r|``."""
    return relation_trace_value(spec, p, r, word, generalized) == spec.L ** join_count(p, r)


def chi_moment(spec: SpaceSpec, K: int, word: str, generalized: bool = False) -> Fraction:
    """Moment of ``chi_E``, a sum of ``K`` non-overlapping coordinates, along ``word``.

    ``sum_{p,r,t,v} K^|p v t| L^|r v v| W_M(p, r) W_N(t, v)``; independent of
    the twist and of which coordinates make up ``E``.
    """
    check_word(word)
    if not 0 <= K <= min(spec.M, spec.N):
        raise ValueError(f"K={K} must lie in 0..min(M, N)={min(spec.M, spec.N)}")
    cat = spec.family.category
    parts, x, d = _space_kernel(cat, _norm(cat, word), spec.L, spec.M, spec.N, generalized)
    if not parts:
        return Fraction(0)
    _, table = join_table(cat, _norm(cat, word))
    k = power_matrix(table, K)
    total = sum(k[a][b] * x[a][b] for a in range(len(parts)) for b in range(len(parts)))
    return Fraction(total, d)


def moment_table(spec: SpaceSpec, word: str, generalized: bool = False) -> dict:
    """Every moment on ``word`` keyed by ``(rows, cols)``; used for exhaustive comparisons."""
    cat, q = spec.family.category, spec.family.q
    parts, x, d = _space_kernel(cat, _norm(cat, word), spec.L, spec.M, spec.N, generalized)
    s = len(word)
    rows = list(product(range(1, spec.M + 1), repeat=s))
    cols = list(product(range(1, spec.N + 1), repeat=s))
    if not parts:
        return {(i, j): Fraction(0) for i in rows for j in cols}
    # precompute delta^T X once per row index
    left = {}
    for i in rows:
        u = _deltas(parts, i, q)
        left[i] = [sum(u[a] * x[a][b] for a in range(len(parts)) if u[a]) for b in range(len(parts))]
    right = {j: _deltas(parts, j, q) for j in cols}
    out = {}
    for i in rows:
        li = left[i]
        for j in cols:
            out[i, j] = Fraction(sum(a * b for a, b in zip(li, right[j]) if b), d)
    return out
