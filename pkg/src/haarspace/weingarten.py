"""Gram and Weingarten matrices of a category on a colored word."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .categories import CategoryId, enumerate_category
from .linalg import SingularMatrixError, bareiss_inverse, symmetric_generalized_inverse
from .partitions import Partition, WHITE, join_count


class SingularGram(ArithmeticError):
    """The Gram matrix is singular: ``N`` is too small for the partitions to be independent."""

    def __init__(self, category, word, N):
        self.category, self.word, self.N = category, word, N
        super().__init__(f"singular Gram matrix for {category} on {word!r} at N={N}")


@dataclass(frozen=True)
class GramMatrix:
    index: tuple[Partition, ...]
    entries: tuple[tuple[int, ...], ...]
    dim: int

    def __len__(self):
        return len(self.index)


@dataclass(frozen=True)
class WeingartenMatrix:
    """Inverse of a Gram matrix, held as integer numerators over one denominator."""

    index: tuple[Partition, ...]
    numerators: tuple[tuple[int, ...], ...]
    denominator: int
    dim: int
    generalized: bool = False

    def __len__(self):
        return len(self.index)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(self.numerators[i][j], self.denominator)

    @property
    def entries(self) -> list[list[Fraction]]:
        d = self.denominator
        return [[Fraction(x, d) for x in row] for row in self.numerators]


def _key_word(cat: CategoryId, word: str) -> str:
    return WHITE * len(word) if cat.colorblind else word


@lru_cache(maxsize=1024)
def join_table(cat: CategoryId, word: str) -> tuple[tuple[Partition, ...], tuple[tuple[int, ...], ...]]:
    """The enumerated partitions and the matrix of join block counts ``|p v q|``."""
    parts = tuple(enumerate_category(cat, word))
    table = tuple(tuple(join_count(p, q) for q in parts) for p in parts)
    return parts, table


def power_matrix(table, base: int) -> list[list[int]]:
    return [[base ** e for e in row] for row in table]


def gram(cat: CategoryId, word: str, N: int) -> GramMatrix:
    """``G(p, q) = N ** |p v q|`` over the partitions of ``cat`` on ``word``."""
    if N < 0:
        raise ValueError("dimension must be nonnegative")
    parts, table = join_table(cat, _key_word(cat, word))
    return GramMatrix(parts, tuple(map(tuple, power_matrix(table, N))), N)


def weingarten(cat: CategoryId, word: str, N: int) -> WeingartenMatrix:
    """Exact inverse of the Gram matrix; raises :class:`SingularGram` if there is none."""
    return _weingarten(cat, _key_word(cat, word), N, False)


def generalized_weingarten(cat: CategoryId, word: str, N: int) -> WeingartenMatrix:
    """The Weingarten matrix, or a generalized inverse of the Gram matrix when it is singular.

    Any generalized inverse gives the same moments, since the moment formulas
    only pair it with vectors in the row space of the Gram matrix.
    """
    return _weingarten(cat, _key_word(cat, word), N, True)


@lru_cache(maxsize=2048)
def _weingarten(cat, word, N, allow_singular) -> WeingartenMatrix:
    g = gram(cat, word, N)
    try:
        adj, det = bareiss_inverse(g.entries)
        generalized = False
    except SingularMatrixError:
        if not allow_singular:
            raise SingularGram(cat, word, N) from None
        adj, det = symmetric_generalized_inverse(g.entries)
        generalized = True
    if det < 0:
        adj, det = [[-x for x in row] for row in adj], -det
    return WeingartenMatrix(g.index, tuple(map(tuple, adj)), det, N, generalized)
