"""Exact rational linear algebra: fraction-free kernels and dense solves."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def _strip_content(row: list[int]) -> list[int]:
    g = math.gcd(*[abs(x) for x in row]) if any(row) else 0
    if g > 1:
        return [x // g for x in row]
    return row


def kernel_basis(matrix: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Basis of the right kernel, each vector scaled to coprime integers.

    Elimination is fraction-free (Bareiss with per-row content stripping)
    after clearing row denominators; back substitution runs over exact
    rationals and the final vectors are normalized so the first nonzero
    entry is positive.  Empty list when the kernel is trivial.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    # clear denominators row by row
    imat: list[list[int]] = []
    for r in rows:
        den = math.lcm(*[Fraction(x).denominator for x in r]) if r else 1
        irow = [int(Fraction(x) * den) for x in r]
        imat.append(_strip_content(irow))

    nrows = len(imat)
    pivot_cols: list[int] = []
    piv_row = 0
    for col in range(ncols):
        if piv_row >= nrows:
            break
        sel = next((r for r in range(piv_row, nrows) if imat[r][col] != 0), None)
        if sel is None:
            continue
        if sel != piv_row:
            imat[piv_row], imat[sel] = imat[sel], imat[piv_row]
        piv = imat[piv_row][col]
        for r in range(piv_row + 1, nrows):
            f = imat[r][col]
            if f == 0:
                continue
            imat[r] = [piv * imat[r][c] - f * imat[piv_row][c] for c in range(ncols)]
            imat[r] = _strip_content(imat[r])
        pivot_cols.append(col)
        piv_row += 1

    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis: list[list[int]] = []
    for free in free_cols:
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        # rows above piv_row are in echelon form
        for r in range(len(pivot_cols) - 1, -1, -1):
            pc = pivot_cols[r]
            s = sum((imat[r][c] * vec[c] for c in range(pc + 1, ncols)), Fraction(0))
            vec[pc] = -s / imat[r][pc]
        den = math.lcm(*[v.denominator for v in vec])
        ivec = [int(v * den) for v in vec]
        g = math.gcd(*[abs(v) for v in ivec])
        ivec = [v // g for v in ivec]
        first = next(v for v in ivec if v != 0)
        if first < 0:
            ivec = [-v for v in ivec]
        basis.append(ivec)
    return basis


class SolveReport:
    """Outcome of an exact dense solve: unique / inconsistent / free unknowns."""

    __slots__ = ("status", "solution", "free_count")

    def __init__(self, status: str, solution=None, free_count: int = 0):
        self.status = status  # 'unique' | 'inconsistent' | 'underdetermined'
        self.solution = solution
        self.free_count = free_count


def solve_exact(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> SolveReport:
    """Gaussian elimination over Fractions for a possibly non-square system."""
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    if len(aug) != len(rhs):
        raise ValueError("rhs length mismatch")
    ncols = len(matrix[0]) if matrix else 0
    piv_row = 0
    pivot_cols = []
    for col in range(ncols):
        sel = next((r for r in range(piv_row, len(aug)) if aug[r][col] != 0), None)
        if sel is None:
            continue
        aug[piv_row], aug[sel] = aug[sel], aug[piv_row]
        piv = aug[piv_row][col]
        aug[piv_row] = [x / piv for x in aug[piv_row]]
        for r in range(len(aug)):
            if r != piv_row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[piv_row])]
        pivot_cols.append(col)
        piv_row += 1
    for r in range(piv_row, len(aug)):
        if aug[r][ncols] != 0:
            return SolveReport("inconsistent")
    if len(pivot_cols) < ncols:
        return SolveReport("underdetermined", free_count=ncols - len(pivot_cols))
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(pivot_cols):
        sol[col] = aug[r][ncols]
    return SolveReport("unique", solution=sol)


def invert_fraction_matrix(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix (raises if singular)."""
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        sel = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if sel is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[sel] = aug[sel], aug[col]
        piv = aug[col][col]
        aug[col] = [x / piv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def matvec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m]
