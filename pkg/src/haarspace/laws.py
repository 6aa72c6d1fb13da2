"""Limit laws of the chi_E variables and finite-N convergence tables.

In the regime ``K = kappa N, L = lambda N, M = mu N`` the moments of chi_E
tend to ``sum_{p in D(w)} t^|p|`` with ``t = kappa lambda / mu``: Gaussian or
semicircular (orthogonal), complex Gaussian or circular (unitary), Bessel or
free Bessel (``H^s``) laws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .categories import (
    CategoryId, MATCH_NC2, MATCH_P2, NC2, NCEVEN, NCEVEN_S, P2, PEVEN, PEVEN_S,
    QuantumFamily, enumerate_category,
)
from .integration import SpaceSpec, chi_moment
from .weingarten import SingularGram

LAWS = ("gaussian", "semicircular", "complex-gaussian", "circular", "bessel", "free-bessel")


def limit_moment(cat: CategoryId, word: str, t) -> Fraction:
    """``sum_{p in D(word)} t^|p|``."""
    t = Fraction(t)
    return sum((t ** len(p.blocks) for p in enumerate_category(cat, word)), Fraction(0))


def alternating(n: int) -> str:
    return ("wb" * n)[:n]


def default_word(f: QuantumFamily, order: int) -> str:
    """All white for real families, alternating colors otherwise."""
    return "w" * order if f.real else alternating(order)


def law_category(law: str, s=None) -> tuple[CategoryId, bool]:
    """Category whose partition sum gives the law, and whether the variable is complex."""
    if law == "gaussian":
        return CategoryId(P2), False
    if law == "semicircular":
        return CategoryId(NC2), False
    if law == "complex-gaussian":
        return CategoryId(MATCH_P2), True
    if law == "circular":
        return CategoryId(MATCH_NC2), True
    if law in ("bessel", "free-bessel"):
        s = 2 if s is None else s
        free = law == "free-bessel"
        if s == 2:
            return CategoryId(NCEVEN if free else PEVEN), False
        return CategoryId(NCEVEN_S if free else PEVEN_S, s), True
    raise ValueError(f"unknown law {law!r}; expected one of {LAWS}")


def closed_form(law: str, t, order: int, s=None) -> Fraction | None:
    """Textbook moment formulas where one exists, else ``None``."""
    t = Fraction(t)
    if order % 2:
        return Fraction(0) if law in ("gaussian", "semicircular", "complex-gaussian", "circular") else None
    k = order // 2
    if law == "gaussian":
        return t ** k * math.prod(range(1, order, 2))
    if law == "semicircular":
        return t ** k * (math.comb(2 * k, k) // (k + 1))
    if law == "complex-gaussian":
        return t ** k * math.factorial(k)
    if law == "circular":
        return t ** k * (math.comb(2 * k, k) // (k + 1))
    if law == "free-bessel" and (s in (None, 2)) and t == 1:
        # noncrossing partitions of 2k points into even blocks
        return Fraction(math.comb(3 * k, k), 2 * k + 1)
    return None


def reference_moments(law: str, t, order: int, s=None) -> Fraction:
    """Moment of the given order of a reference law with parameter ``t``.

    Complex laws are read along the alternating word.  The partition sum is
    compared against the closed form whenever one is known.
    """
    if order < 0 or order > 10:
        raise ValueError("order must lie in 0..10")
    cat, cplx = law_category(law, s)
    word = alternating(order) if cplx else "w" * order
    value = limit_moment(cat, word, t)
    known = closed_form(law, t, order, s)
    if known is not None and known != value:
        raise AssertionError(f"{law} moment {order}: partition sum {value} != closed form {known}")
    return value


def family_law(f: QuantumFamily) -> str:
    free = f.name.endswith("plus") or f.name == "HsPlus"
    if f.name in ("O", "Obar", "Oplus"):
        return "semicircular" if free else "gaussian"
    if f.name in ("U", "Ubar", "Uplus"):
        return "circular" if free else "complex-gaussian"
    return "free-bessel" if free else "bessel"


@dataclass(frozen=True)
class RegimeSpec:
    """``K = kappa N, L = lambda N, M = mu N`` along the listed ``Ns``."""

    kappa: Fraction
    lam: Fraction
    mu: Fraction
    Ns: tuple[int, ...]

    def __post_init__(self):
        for name in ("kappa", "lam", "mu"):
            v = Fraction(getattr(self, name))
            if v <= 0:
                raise ValueError(f"{name} must be positive")
            object.__setattr__(self, name, v)
        object.__setattr__(self, "Ns", tuple(self.Ns))
        if list(self.Ns) != sorted(set(self.Ns)):
            raise ValueError("Ns must be strictly increasing")
        if self.kappa > self.mu:
            raise ValueError("need kappa <= mu")
        for N in self.Ns:
            K, L, M = self.sizes(N)
            if not (L <= M <= N and K <= min(M, N)):
                raise ValueError(f"at N={N}: need lambda N <= mu N <= N and kappa N <= mu N")

    def sizes(self, N: int) -> tuple[int, int, int]:
        out = []
        for v in (self.kappa, self.lam, self.mu):
            x = v * N
            if x.denominator != 1:
                raise ValueError(f"{v} * {N} is not an integer")
            out.append(int(x))
        return tuple(out)

    @property
    def t(self) -> Fraction:
        return self.kappa * self.lam / self.mu


@dataclass(frozen=True)
class TableRow:
    N: int
    order: int
    word: str
    moment: Fraction | None
    limit: Fraction
    error: str | None = None

    @property
    def gap(self) -> Fraction | None:
        return None if self.moment is None else abs(self.moment - self.limit)


def convergence_table(f: QuantumFamily, regime: RegimeSpec,
                      orders: Sequence[str | int], generalized: bool = False) -> list[TableRow]:
    """chi_E moments along the regime next to their limit, one row per ``(N, word)``.

    ``orders`` holds colored words, or integers meaning :func:`default_word`.
    A singular Gram matrix at small ``N`` is recorded in the row's ``error``.
    """
    words = [default_word(f, o) if isinstance(o, int) else o for o in orders]
    cat = f.category
    limits = {w: limit_moment(cat, w, regime.t) for w in words}
    rows = []
    for N in regime.Ns:
        K, L, M = regime.sizes(N)
        spec = SpaceSpec(f, L, M, N)
        for w in words:
            try:
                m = chi_moment(spec, K, w, generalized)
                rows.append(TableRow(N, len(w), w, m, limits[w]))
            except SingularGram as e:
                rows.append(TableRow(N, len(w), w, None, limits[w], "singular-gram: " + str(e)))
    return rows
