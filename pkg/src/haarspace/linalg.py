"""Exact integer/rational matrix inversion by fraction-free elimination."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrixError(ValueError):
    pass


def bareiss_inverse(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Invert an integer matrix exactly.

    Fraction-free Gauss-Jordan elimination on ``[a | I]``.  Returns
    ``(adj, det)`` with ``inverse = adj / det``; every intermediate division is
    exact, so all arithmetic stays in the integers.
    """
    n = len(a)
    rows = [list(map(int, r)) + [int(i == j) for j in range(n)] for i, r in enumerate(a)]
    if any(len(r) != 2 * n for r in rows):
        raise ValueError("matrix is not square")
    prev = 1
    sign = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if rows[r][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        pk = rows[k][k]
        rk = rows[k]
        for i in range(n):
            if i == k:
                continue
            ri = rows[i]
            f = ri[k]
            for j in range(2 * n):
                num = pk * ri[j] - f * rk[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "inexact division in fraction-free elimination"
                ri[j] = q
        prev = pk
    det = prev * sign
    # each row now reads [det' * e_i | adj'] with det' the last pivot
    adj = [[sign * x for x in rows[i][n:]] for i in range(n)]
    return adj, det


def exact_inverse(a: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    adj, det = bareiss_inverse(a)
    return [[Fraction(x, det) for x in row] for row in adj]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant of an integer matrix."""
    n = len(a)
    m = [list(map(int, r)) for r in a]
    prev, sign = 1, 1
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def independent_columns(a: Sequence[Sequence[int]]) -> list[int]:
    """Indices of a maximal linearly independent set of columns, chosen greedily."""
    n = len(a)
    basis: list[list[Fraction]] = []   # reduced vectors
    pivots: list[int] = []
    chosen = []
    for c in range(len(a[0]) if n else 0):
        v = [Fraction(a[r][c]) for r in range(n)]
        for b, p in zip(basis, pivots):
            if v[p] != 0:
                f = v[p] / b[p]
                v = [x - f * y for x, y in zip(v, b)]
        nz = next((r for r in range(n) if v[r] != 0), None)
        if nz is not None:
            basis.append(v)
            pivots.append(nz)
            chosen.append(c)
    return chosen


def symmetric_generalized_inverse(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """A generalized inverse ``g`` with ``a g a = a`` for a symmetric positive semidefinite ``a``.

    The inverse of a full-rank principal block, padded with zeros.  Returned as
    ``(numerators, denominator)`` like :func:`bareiss_inverse`.
    """
    n = len(a)
    keep = independent_columns(a)
    if not keep:
        return [[0] * n for _ in range(n)], 1
    sub = [[a[i][j] for j in keep] for i in keep]
    adj, det = bareiss_inverse(sub)
    out = [[0] * n for _ in range(n)]
    for x, i in enumerate(keep):
        for y, j in enumerate(keep):
            out[i][j] = adj[x][y]
    return out, det
