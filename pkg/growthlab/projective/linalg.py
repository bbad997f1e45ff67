"""Exact linear algebra over any field by Gaussian elimination.

Matrices are tuples of rows of FieldElements.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence

    from fields.base import Field, FieldElement

Matrix = tuple[tuple["FieldElement", ...], ...]


class SingularMatrixError(Exception):
    """Exception raised when a matrix that must be invertible is singular."""


def identity(field: Field, size: int) -> Matrix:
    return tuple(tuple(field.one() if i == j else field.zero() for j in range(size)) for i in range(size))


def transpose(M: Sequence[Sequence[FieldElement]]) -> Matrix:
    return tuple(zip(*M, strict=True))


def matmul(M: Sequence[Sequence[FieldElement]], N: Sequence[Sequence[FieldElement]]) -> Matrix:
    columns = transpose(N)
    return tuple(tuple(_dot(row, column) for column in columns) for row in M)


def matvec(M: Sequence[Sequence[FieldElement]], v: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    return tuple(_dot(row, v) for row in M)


def _dot(u: Sequence[FieldElement], v: Sequence[FieldElement]) -> FieldElement:
    total = u[0] * v[0]
    for x, y in zip(u[1:], v[1:], strict=True):
        total = total + x * y
    return total


def _row_reduce(rows: list[list[FieldElement]]) -> tuple[list[list[FieldElement]], int]:
    """Reduce rows in place to reduced row echelon form and return them with the rank."""
    pivots = 0
    width = len(rows[0]) if rows else 0
    for column in range(width):
        pivot = next((r for r in range(pivots, len(rows)) if not rows[r][column].is_zero), None)
        if pivot is None:
            continue
        if pivot != pivots:
            rows[pivots], rows[pivot] = rows[pivot], rows[pivots]
        scale = rows[pivots][column].inverse()
        rows[pivots] = [x * scale for x in rows[pivots]]
        for r in range(len(rows)):
            if r != pivots and not rows[r][column].is_zero:
                factor = rows[r][column]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[pivots], strict=True)]
        pivots += 1
        if pivots == len(rows):
            break
    return rows, pivots


def rank(M: Sequence[Sequence[FieldElement]]) -> int:
    return _row_reduce([list(row) for row in M])[1] if M else 0


def determinant(M: Sequence[Sequence[FieldElement]]) -> FieldElement:
    """Determinant by elimination, tracking the pivots."""
    rows = [list(row) for row in M]
    field = rows[0][0].field
    result = field.one()
    for column in range(len(rows)):
        pivot = next((r for r in range(column, len(rows)) if not rows[r][column].is_zero), None)
        if pivot is None:
            return field.zero()
        if pivot != column:
            rows[column], rows[pivot] = rows[pivot], rows[column]
            result = -result
        result = result * rows[column][column]
        scale = rows[column][column].inverse()
        for r in range(column + 1, len(rows)):
            factor = rows[r][column] * scale
            if not factor.is_zero:
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[column], strict=True)]
    return result


def inverse(M: Sequence[Sequence[FieldElement]]) -> Matrix:
    """Inverse of a square matrix.

    Raises:
        SingularMatrixError: If M is singular
    """
    size = len(M)
    field = M[0][0].field
    augmented = [list(row) + list(unit) for row, unit in zip(M, identity(field, size), strict=True)]
    rows, found = _row_reduce(augmented)
    if found < size or any(rows[i][i].is_zero for i in range(size)):
        error_message = "Matrix is singular"
        raise SingularMatrixError(error_message)
    return tuple(tuple(row[size:]) for row in rows)


def solve(M: Sequence[Sequence[FieldElement]], b: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    """Solve M x = b for a square invertible M.

    Raises:
        SingularMatrixError: If M is singular
    """
    return matvec(inverse(M), b)
