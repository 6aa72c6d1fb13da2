"""Independent ground truth for the integration formulas.

Two oracles live here:

* exact enumeration over the finite spaces of signed partial permutations
  (rank ``L`` partial permutation matrices of size ``M x N`` whose nonzero
  entries are ``s``-th roots of unity), which for ``L = M = N`` is the
  group ``Z_s wr S_N``;
* Monte Carlo integration over the classical spaces ``O_MN^L`` and
  ``U_MN^L``, sampled as ``A J B*`` with ``A, B`` Haar distributed and
  ``J`` the rank ``L`` truncated identity.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Sequence

import numpy as np

from .categories import QuantumFamily
from .integration import MomentSpec, SpaceSpec

DEFAULT_BUDGET = 10 ** 7
GENERATOR = "numpy PCG64 via SeedSequence"


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GaussianRational:
    """Exact ``re + im*i`` with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


@dataclass(frozen=True)
class SignedPartialPermutation:
    """``T(e_i) = zeta^{w_i} e_{sigma(i)}`` for ``i`` in ``domain``.

    ``domain`` lists columns (subset of 1..N), ``target`` the matching rows
    (subset of 1..M) so that ``sigma(domain[k]) = target[k]``; ``weights``
    are exponents of the primitive ``s``-th root of unity.
    """

    domain: tuple[int, ...]
    target: tuple[int, ...]
    weights: tuple[int, ...]
    s: int

    def __post_init__(self):
        L = len(self.domain)
        if len(self.target) != L or len(self.weights) != L:
            raise ValueError("domain, target and weights must have equal length")
        if len(set(self.domain)) != L or len(set(self.target)) != L:
            raise ValueError("sigma is not a bijection")
        if any(not 0 <= w < self.s for w in self.weights):
            raise ValueError(f"weight exponents must lie in 0..{self.s - 1}")

    def matrix(self, M: int, N: int) -> np.ndarray:
        u = np.zeros((M, N), dtype=complex)
        zeta = np.exp(2j * np.pi / self.s)
        for j, i, w in zip(self.domain, self.target, self.weights):
            u[i - 1, j - 1] = zeta ** w
        return u


def space_size(s: int, L: int, M: int, N: int) -> int:
    return s ** L * math.comb(M, L) * math.comb(N, L) * math.factorial(L)


def signed_partial_permutations(s: int, L: int, M: int, N: int):
    for dom in combinations(range(1, N + 1), L):
        for tgt in combinations(range(1, M + 1), L):
            for perm in permutations(tgt):
                for w in product(range(s), repeat=L):
                    yield SignedPartialPermutation(dom, perm, w, s)


@lru_cache(maxsize=64)
def _configurations(s: int, L: int, M: int, N: int):
    """Arrays ``row[c, j]`` (0-based row of the entry in column j, or -1) and ``wt[c, j]``."""
    count = space_size(s, L, M, N)
    row = np.full((count, N), -1, dtype=np.int64)
    wt = np.zeros((count, N), dtype=np.int64)
    for c, t in enumerate(signed_partial_permutations(s, L, M, N)):
        for j, i, w in zip(t.domain, t.target, t.weights):
            row[c, j - 1] = i - 1
            wt[c, j - 1] = w
    row.flags.writeable = False
    wt.flags.writeable = False
    return row, wt


def _check_exact(s, spec: SpaceSpec, budget: int):
    if s == math.inf or not isinstance(s, int):
        raise ValueError("the exact oracle needs a finite s")
    if s not in (2, 4):
        raise ValueError(f"exact arithmetic is implemented for s in (2, 4), got {s}")
    f = spec.family
    if f.name != "Hs" or f.s != s or f.q != 1:
        raise ValueError(f"exact oracle is for the untwisted classical family Hs with s={s}, got {f}")
    size = space_size(s, spec.L, spec.M, spec.N)
    if size > budget:
        raise BudgetExceeded(f"{size} signed partial permutations exceed the budget {budget}")


def exact_space_moment_h(s: int, spec: SpaceSpec, m: MomentSpec, budget: int = DEFAULT_BUDGET):
    """Uniform average of the monomial over the finite space ``H_MN^{sL}``.

    Returns a :class:`~fractions.Fraction` for ``s = 2`` and a
    :class:`GaussianRational` for ``s = 4``.
    """
    _check_exact(s, spec, budget)
    m.validate(spec.M, spec.N)
    row, wt = _configurations(s, spec.L, spec.M, spec.N)
    total = row.shape[0]
    mask = np.ones(total, dtype=bool)
    expo = np.zeros(total, dtype=np.int64)
    for c, i, j in zip(m.word, m.rows, m.cols):
        mask &= row[:, j - 1] == i - 1
        expo += wt[:, j - 1] if c == "w" else -wt[:, j - 1]
    counts = np.bincount(expo[mask] % s, minlength=s)
    if s == 2:
        return Fraction(int(counts[0]) - int(counts[1]), total)
    re = Fraction(int(counts[0]) - int(counts[2]), total)
    im = Fraction(int(counts[1]) - int(counts[3]), total)
    return GaussianRational(re, im)


def exact_group_moment_h(s: int, N: int, word: str, i: Sequence[int], j: Sequence[int],
                         budget: int = DEFAULT_BUDGET):
    """Uniform average over the whole group ``Z_s wr S_N``."""
    spec = SpaceSpec(QuantumFamily("Hs", s), N, N, N)
    return exact_space_moment_h(s, spec, MomentSpec(word, i, j), budget)


def haar_orthogonal(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` Haar orthogonal ``n x n`` matrices, from QR with sign correction."""
    z = rng.standard_normal((size, n, n))
    q, r = np.linalg.qr(z)
    d = np.sign(np.diagonal(r, axis1=1, axis2=2))
    d[d == 0] = 1
    return q * d[:, None, :]


def haar_unitary(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` Haar unitary ``n x n`` matrices, from QR with phase correction."""
    z = (rng.standard_normal((size, n, n)) + 1j * rng.standard_normal((size, n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    ph = d / np.abs(d)
    ph[~np.isfinite(ph)] = 1
    return q * ph[:, None, :]


def _complex_family(f: QuantumFamily) -> bool:
    if f.name in ("O",):
        return False
    if f.name in ("U",):
        return True
    raise ValueError(f"Monte Carlo oracle supports the classical families O and U, got {f}")


def sample_space(spec: SpaceSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` points ``A J B*`` of the classical space, shape ``(count, M, N)``."""
    cplx = _complex_family(spec.family)
    haar = haar_unitary if cplx else haar_orthogonal
    a = haar(spec.M, count, rng)
    b = haar(spec.N, count, rng)
    L = spec.L
    return a[:, :, :L] @ np.conj(np.swapaxes(b[:, :, :L], 1, 2))


def monomial(samples: np.ndarray, m: MomentSpec) -> np.ndarray:
    out = np.ones(samples.shape[0], dtype=samples.dtype)
    for c, i, j in zip(m.word, m.rows, m.cols):
        x = samples[:, i - 1, j - 1]
        out = out * (x if c == "w" else np.conj(x))
    return out


@dataclass(frozen=True)
class SampleBatch:
    """Monte Carlo estimates of several monomials from one sample stream."""

    seed: int
    count: int
    moments: tuple[MomentSpec, ...]
    means: np.ndarray
    stderrs: np.ndarray
    generator: str = GENERATOR
    shards: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be positive")
        if np.any(self.stderrs < 0):
            raise ValueError("standard errors must be nonnegative")

    @property
    def mean(self):
        return self.means[0]

    @property
    def stderr(self):
        return float(self.stderrs[0])

    def within(self, exact, k: float = 3.0, index: int = 0) -> bool:
        """``|mean - exact| <= k * stderr`` for moment ``index``."""
        return abs(self.means[index] - complex(exact)) <= k * self.stderrs[index]


def _default_threads() -> int:
    return max(1, int(os.environ.get("HAARSPACE_THREADS", "1")))


def _estimate(spec, moments, count, seed, shards, threads, transform=None):
    children = np.random.SeedSequence(seed).spawn(shards)
    sizes = [count // shards + (1 if k < count % shards else 0) for k in range(shards)]

    def run(k):
        rng = np.random.Generator(np.random.PCG64(children[k]))
        u = sample_space(spec, sizes[k], rng)
        if transform is not None:
            u = transform(u)
        vals = [monomial(u, m) for m in moments]
        return [(v.sum(), (np.abs(v) ** 2).sum()) for v in vals]

    with ThreadPoolExecutor(max_workers=threads or _default_threads()) as ex:
        parts = list(ex.map(run, range(shards)))
    means, errs = [], []
    for r in range(len(moments)):
        s1 = sum(p[r][0] for p in parts)
        s2 = sum(p[r][1] for p in parts)
        mean = s1 / count
        var = max(s2 / count - abs(mean) ** 2, 0.0) * count / max(count - 1, 1)
        means.append(mean)
        errs.append(math.sqrt(var / count))
    cplx = _complex_family(spec.family)
    means = np.array(means, dtype=complex if cplx else float)
    return means, np.array(errs)


def mc_space_moment(spec: SpaceSpec, m, count: int, seed: int, shards: int = 1,
                    threads: int | None = None) -> SampleBatch:
    """Monte Carlo estimate of one monomial (or a sequence of them) over ``O_MN^L`` / ``U_MN^L``.

    The sample stream is fixed by ``seed`` and ``shards``; ``threads`` only
    changes how shards are scheduled.
    """
    moments = (m,) if isinstance(m, MomentSpec) else tuple(m)
    for x in moments:
        x.validate(spec.M, spec.N)
    means, errs = _estimate(spec, moments, count, seed, shards, threads)
    return SampleBatch(seed, count, moments, means, errs, shards=shards)


def invariance_mc(spec: SpaceSpec, m, A0: np.ndarray, B0: np.ndarray, count: int, seed: int,
                  shards: int = 1, threads: int | None = None) -> tuple[SampleBatch, SampleBatch]:
    """Estimates of the monomials at ``A0 U B0*`` and at ``U``, from the same samples."""
    moments = (m,) if isinstance(m, MomentSpec) else tuple(m)
    A0, B0 = np.asarray(A0), np.asarray(B0)
    if A0.shape != (spec.M, spec.M) or B0.shape != (spec.N, spec.N):
        raise ValueError("A0 must be M x M and B0 must be N x N")

    def rotate(u):
        return A0 @ u @ np.conj(B0.T)

    rot = _estimate(spec, moments, count, seed, shards, threads, rotate)
    plain = _estimate(spec, moments, count, seed, shards, threads)
    return (SampleBatch(seed, count, moments, *rot, shards=shards),
            SampleBatch(seed, count, moments, *plain, shards=shards))
