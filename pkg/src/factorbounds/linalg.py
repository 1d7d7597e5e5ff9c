"""Exact linear algebra over Q: reduced row echelon form and nullspace.

Rows are scaled to primitive integers before elimination to keep Fraction
arithmetic cheap; the elimination itself is plain exact Gaussian elimination
with deterministic pivoting, so kernel bases are reproducible.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _prescale(row: list[Fraction]) -> list[Fraction]:
    nonzero = [c for c in row if c]
    if not nonzero:
        return row
    den = math.lcm(*(c.denominator for c in nonzero))
    nums = [int(c * den) for c in row]
    g = math.gcd(*(abs(n) for n in nums if n))
    return [Fraction(n, g) for n in nums]


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = [_prescale(list(r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: list[list[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column, ordered by free
    column index (this makes downstream tie-breaking deterministic)."""
    if ncols is None:
        if not rows:
            raise ValueError("nullspace needs explicit ncols for an empty system")
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            vec[pc] = -row[fc]
        basis.append(vec)
    return basis


def nullity(rows: list[list[Fraction]], ncols: int | None = None) -> int:
    if ncols is None:
        if not rows:
            raise ValueError("nullity needs explicit ncols for an empty system")
        ncols = len(rows[0])
    if not rows:
        return ncols
    _, pivots = rref(rows)
    return ncols - len(pivots)


def determinant(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-free-ish elimination (exact Fractions)."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = Fraction(1)
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            det = -det
        pv = m[c][c]
        det *= pv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det
