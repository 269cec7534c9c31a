"""Exact rational elimination helpers: rank, unique solve, nullspace.

Deterministic throughout: pivots are chosen by first nonzero position, never
by magnitude. The LP solver does not use this module; it keeps its own
pivoting so the brute-force cross-checks stay independent of it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

Row = Sequence[Fraction]


def rank(rows: Sequence[Row]) -> int:
    """Rank via sparse row reduction with first-column pivoting."""
    pivots: dict[int, dict[int, Fraction]] = {}
    for dense in rows:
        row = {j: Fraction(v) for j, v in enumerate(dense) if v != 0}
        while row:
            col = min(row)
            pivot = pivots.get(col)
            if pivot is None:
                inv = row[col]
                pivots[col] = {j: v / inv for j, v in row.items()}
                break
            factor = row[col]
            for j, v in pivot.items():
                new = row.get(j, ZERO) - factor * v
                if new:
                    row[j] = new
                else:
                    row.pop(j, None)
    return len(pivots)


def solve_unique(rows: Sequence[Row], rhs: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """Exact solution of A x = b when it exists and is unique, else None.

    None covers both inconsistent and underdetermined systems; callers that
    enumerate subsets rely on some affinely independent subset producing a
    unique solution.
    """
    m = len(rows)
    if m != len(rhs):
        raise ValueError(f"{m} rows but {len(rhs)} right-hand sides")
    if m == 0:
        return None
    ncols = len(rows[0])
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for row in aug:
        if len(row) != ncols + 1:
            raise ValueError("ragged coefficient rows")
    if ncols == 0:
        return None
    where = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(where, m) if aug[i][col] != 0), None)
        if pivot_row is None:
            # free column: solution cannot be unique
            return None
        aug[where], aug[pivot_row] = aug[pivot_row], aug[where]
        inv = aug[where][col]
        if inv != ONE:
            aug[where] = [v / inv for v in aug[where]]
        prow = aug[where]
        for i in range(m):
            if i == where:
                continue
            factor = aug[i][col]
            if factor == 0:
                continue
            aug[i] = [v - factor * p for v, p in zip(aug[i], prow)]
        where += 1
        if where == m:
            break
    if where < ncols:
        return None
    for i in range(ncols, m):
        if aug[i][ncols] != 0:
            return None
    return tuple(aug[i][ncols] for i in range(ncols))


def nullspace(rows: Sequence[Row]) -> list[tuple[Fraction, ...]]:
    """Kernel basis from the reduced row echelon form, one vector per free column."""
    m = len(rows)
    if m == 0:
        raise ValueError("no rows")
    ncols = len(rows[0])
    mat = [[Fraction(v) for v in row] for row in rows]
    for row in mat:
        if len(row) != ncols:
            raise ValueError("ragged rows")
    pivot_cols: list[int] = []
    where = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(where, m) if mat[i][col] != 0), None)
        if pivot_row is None:
            continue
        mat[where], mat[pivot_row] = mat[pivot_row], mat[where]
        inv = mat[where][col]
        if inv != ONE:
            mat[where] = [v / inv for v in mat[where]]
        prow = mat[where]
        for i in range(m):
            if i == where:
                continue
            factor = mat[i][col]
            if factor == 0:
                continue
            mat[i] = [v - factor * p for v, p in zip(mat[i], prow)]
        pivot_cols.append(col)
        where += 1
        if where == m:
            break
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vec = [ZERO] * ncols
        vec[free] = ONE
        for r, col in enumerate(pivot_cols):
            vec[col] = -mat[r][free]
        basis.append(tuple(vec))
    return basis
