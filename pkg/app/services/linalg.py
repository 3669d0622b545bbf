"""Exact Gaussian elimination over the tower field.

Matrices are lists of rows; entries are TowerElements (ints and Fractions
are coerced). Nothing here uses a tolerance: zero tests are exact.
"""
from __future__ import annotations

from typing import Optional, Sequence

from app.services.arith import ONE, ZERO, Scalar, TowerElement, coerce
from app.services.errors import DimensionMismatch, DivisionByZero

Matrix = list[list[TowerElement]]


def as_matrix(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    return [[coerce(v) for v in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0]) if b else 0}")
    columns = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in columns:
            acc = ZERO
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(a: Matrix, v: Sequence[TowerElement]) -> list[TowerElement]:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def conjugate_transpose(a: Matrix) -> Matrix:
    return [[x.conj() for x in col] for col in zip(*a)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def row_reduce(rows: Sequence[Sequence[Scalar]], ncols: Optional[int] = None) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form.

    Returns the nonzero rows of the RREF (pivot entries normalised to 1) and
    the list of pivot columns, scanning columns left to right.
    """
    work = as_matrix(rows)
    if ncols is None:
        ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    pivot_row = 0
    for col in range(ncols):
        found = next((r for r in range(pivot_row, len(work)) if work[r][col]), None)
        if found is None:
            continue
        work[pivot_row], work[found] = work[found], work[pivot_row]
        lead_inv = work[pivot_row][col].inverse()
        work[pivot_row] = [x * lead_inv if x else x for x in work[pivot_row]]
        pivot = work[pivot_row]
        for r in range(len(work)):
            if r != pivot_row and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b if b else a for a, b in zip(work[r], pivot)]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(work):
            break
    return work[:pivot_row], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(row_reduce(rows)[1])


def solve(matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> Optional[list[TowerElement]]:
    """One solution of matrix * x = rhs (free unknowns set to 0), or None."""
    if len(matrix) != len(rhs):
        raise DimensionMismatch(f"{len(matrix)} equations but {len(rhs)} right-hand sides")
    ncols = len(matrix[0]) if matrix else 0
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = row_reduce(augmented, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    solution = [ZERO] * ncols
    for row, col in zip(reduced, pivots):
        solution[col] = row[ncols]
    return solution


def determinant(matrix: Sequence[Sequence[Scalar]]) -> TowerElement:
    work = as_matrix(matrix)
    n = len(work)
    if any(len(row) != n for row in work):
        raise DimensionMismatch("determinant of a non-square matrix")
    det = ONE
    for col in range(n):
        found = next((r for r in range(col, n) if work[r][col]), None)
        if found is None:
            return ZERO
        if found != col:
            work[col], work[found] = work[found], work[col]
            det = -det
        lead = work[col][col]
        det = det * lead
        lead_inv = lead.inverse()
        for r in range(col + 1, n):
            if work[r][col]:
                factor = work[r][col] * lead_inv
                work[r] = [a - factor * b if b else a for a, b in zip(work[r], work[col])]
    return det


def inverse(matrix: Sequence[Sequence[Scalar]]) -> Matrix:
    n = len(matrix)
    augmented = [list(row) + list(eye_row) for row, eye_row in zip(matrix, identity(n))]
    reduced, pivots = row_reduce(augmented, n)
    if pivots != list(range(n)):
        raise DivisionByZero("matrix is singular")
    return [row[n:] for row in reduced]
