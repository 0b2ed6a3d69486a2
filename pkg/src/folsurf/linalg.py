"""Fraction-free (Bareiss) elimination over Z and Q.

No floating point: every pivot division is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list]


def _to_int_rows(m: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns rows and the product of row scales."""
    rows, scale = [], 1
    for r in m:
        den = 1
        for v in r:
            den = lcm(den, Fraction(v).denominator)
        rows.append([int(Fraction(v) * den) for v in r])
        scale *= den
    return rows, scale


def bareiss_det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    a, scale = _to_int_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], scale)


def leading_minors(m: Sequence[Sequence]) -> list[Fraction]:
    return [bareiss_det([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def is_negative_definite(m: Sequence[Sequence]) -> bool:
    """Sylvester's criterion for -m: leading minors alternate in sign, starting negative."""
    n = len(m)
    if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
        return False
    return all((-1) ** k * d > 0 for k, d in enumerate(leading_minors(m), start=1))


def solve(m: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique solution of m x = b; raises ValueError when m is singular.

    Fraction-free forward elimination on the integer-scaled augmented matrix,
    then exact back substitution.
    """
    n = len(m)
    aug = [list(m[i]) + [b[i]] for i in range(n)]
    a, _ = _to_int_rows(aug)
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    break
            else:
                raise ValueError("singular matrix")
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(a[i][n])
        for j in range(i + 1, n):
            s -= a[i][j] * x[j]
        x[i] = s / a[i][i]
    return x


def matvec(m: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((Fraction(mij) * vj for mij, vj in zip(row, v)), Fraction(0)) for row in m]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))
