"""Exact linear algebra over Q with numpy object arrays of Fractions."""
import math
from fractions import Fraction

import numpy as np


def fraction_matrix(rows, columns: int | None = None) -> np.ndarray:
    """Convert a list of rows into a 2-D object array of Fractions."""
    rows = [list(row) for row in rows]
    if not rows:
        return np.empty((0, columns or 0), dtype=object)
    return np.array([[Fraction(c) for c in row] for row in rows], dtype=object)


def rref(matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.

    Args:
        matrix: A 2-D object array of Fractions. It is not modified.

    Returns:
        tuple[np.ndarray, list[int]]: The reduced matrix and the list of pivot columns.
    """
    reduced = matrix.copy()
    n_rows, n_cols = reduced.shape
    pivots = []
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        pivot = next((r for r in range(row, n_rows) if reduced[r, col] != 0), None)
        if pivot is None:
            continue
        if pivot != row:
            reduced[[row, pivot]] = reduced[[pivot, row]]
        reduced[row, :] = reduced[row, :] / reduced[row, col]
        for r in range(n_rows):
            if r != row and reduced[r, col] != 0:
                reduced[r, :] = reduced[r, :] - reduced[r, col] * reduced[row, :]
        pivots.append(col)
        row += 1
    return reduced, pivots


def rank(rows) -> int:
    matrix = fraction_matrix(rows)
    if matrix.size == 0:
        return 0
    return len(rref(matrix)[1])


def nullspace(rows, columns: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x in Q^columns : A x = 0}, one vector per free column."""
    matrix = fraction_matrix(rows, columns)
    if matrix.shape[0] == 0:
        return [tuple(Fraction(int(k == j)) for k in range(columns)) for j in range(columns)]
    reduced, pivots = rref(matrix)
    free = [c for c in range(columns) if c not in pivots]
    basis = []
    for f in free:
        vector = [Fraction(0)] * columns
        vector[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vector[p] = -reduced[r, f]
        basis.append(tuple(vector))
    return basis


def primitive_integer_vector(vector) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers whose first non-zero entry is positive."""
    values = [Fraction(c) for c in vector]
    denominator = math.lcm(*(c.denominator for c in values)) if values else 1
    integers = [int(c * denominator) for c in values]
    divisor = math.gcd(*integers) if integers else 0
    if divisor == 0:
        return tuple(integers)
    integers = [c // divisor for c in integers]
    leading = next((c for c in integers if c), 0)
    if leading < 0:
        integers = [-c for c in integers]
    return tuple(integers)


def integer_nullspace(rows, columns: int) -> list[tuple[int, ...]]:
    return [primitive_integer_vector(v) for v in nullspace(rows, columns)]


def solve_affine(rows, rhs) -> tuple[tuple[Fraction, ...], list[tuple[Fraction, ...]]] | None:
    """Solve A x = b exactly.

    Args:
        rows: The rows of A.
        rhs: The vector b.

    Returns:
        tuple | None: (particular solution, nullspace basis), or None when the system is inconsistent.
    """
    rows = [list(row) for row in rows]
    if not rows:
        return None
    columns = len(rows[0])
    augmented = fraction_matrix([[*row, b] for row, b in zip(rows, rhs, strict=True)])
    reduced, pivots = rref(augmented)
    if columns in pivots:
        return None
    particular = [Fraction(0)] * columns
    for r, p in enumerate(pivots):
        particular[p] = reduced[r, columns]
    return tuple(particular), nullspace(rows, columns)
