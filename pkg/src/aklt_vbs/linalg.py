"""Exact rational linear algebra: rank, null space, span membership.

Rank uses fraction-free (Bareiss) elimination on integer rows; rows of
Fractions are cleared of denominators first. Null spaces go through a
reduced row echelon form over Fractions, which is fine at the sizes used here.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

__all__ = ["integer_rows", "rank", "nullspace", "rref", "in_span"]


def integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; rank is unchanged."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            d = Fraction(x).denominator
            den = den * d // math.gcd(den, d)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a rational matrix given as a list of rows."""
    m = [r for r in integer_rows(rows) if any(r)]
    if not m:
        return 0
    n_cols = len(m[0])
    r = 0
    prev = 1
    for c in range(n_cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        pv = pr[c]
        rest = []
        for i in range(r + 1, len(m)):
            row = m[i]
            f = row[c]
            new = [(pv * row[j] - f * pr[j]) // prev for j in range(c + 1, n_cols)]
            if any(new):
                rest.append([0] * (c + 1) + new)
        # rows that became zero never matter again
        m = m[:r + 1] + rest
        prev = pv
        r += 1
        if r == len(m):
            break
    return r


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fractions and its pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : A x = 0}, one vector per free column."""
    if n_cols is None:
        n_cols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    red, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def in_span(vectors: Sequence[Sequence], target: Sequence) -> bool:
    """Whether target is an exact rational combination of the given vectors."""
    return rank(list(vectors) + [list(target)]) == rank(vectors)
