"""
Exact linear algebra on sparse rational vectors.

Vectors are ``Dict[int, Fraction]`` (absent coordinates are zero). Column
lists are packed into sympy ``DomainMatrix`` objects over ``QQ`` in sparse
format and reduced there; results come back as Fractions. Every pivot choice
is the lowest index first, so outputs are reproducible.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

Vector = Dict[int, Fraction]


def to_qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def from_qq(value) -> Fraction:
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


def _matrix_from_columns(columns: Sequence[Vector], dim: int) -> DomainMatrix:
    rows: Dict[int, Dict[int, object]] = {}
    for j, column in enumerate(columns):
        for i, value in column.items():
            if not 0 <= i < dim:
                raise ValueError(f"Coordinate {i} outside dimension {dim}")
            if value:
                rows.setdefault(i, {})[j] = to_qq(value)
    return DomainMatrix(rows, (dim, len(columns)), QQ)


def _sparse_rows(matrix: DomainMatrix) -> Dict[int, Dict[int, Fraction]]:
    rep = matrix.to_sparse().rep
    return {
        i: {j: from_qq(v) for j, v in row.items() if v}
        for i, row in rep.items()
    }


def rref(columns: Sequence[Vector], dim: int) -> Tuple[Dict[int, Dict[int, Fraction]], Tuple[int, ...]]:
    """Reduced row echelon form of the matrix whose columns are given."""
    if not columns or dim == 0:
        return {}, ()
    reduced, pivots = _matrix_from_columns(columns, dim).rref()
    return _sparse_rows(reduced), tuple(pivots)


def independent_columns(columns: Sequence[Vector], dim: int) -> List[int]:
    """Indices of the first maximal linearly independent subsequence."""
    return list(rref(columns, dim)[1])


def rank(columns: Sequence[Vector], dim: int) -> int:
    return len(rref(columns, dim)[1])


def kernel_basis(columns: Sequence[Vector], dim: int) -> List[Vector]:
    """
    Basis of {x : Σ x_j column_j = 0}, one vector per free column.

    Each vector has coefficient 1 on its free column and is supported on
    that column plus pivot columns.
    """
    n = len(columns)
    if n == 0:
        return []
    reduced, pivots = rref(columns, dim)
    pivot_rows = {}
    for r, p in enumerate(pivots):
        pivot_rows[p] = reduced.get(r, {})

    basis = []
    pivot_set = set(pivots)
    for free in range(n):
        if free in pivot_set:
            continue
        vector: Vector = {free: Fraction(1)}
        for p, row in pivot_rows.items():
            value = row.get(free)
            if value:
                vector[p] = -value
        basis.append(vector)
    return basis


def invert(columns: Sequence[Vector], dim: int) -> List[Vector]:
    """
    Inverse of a square matrix given by its columns, returned as columns.

    Raises:
        ValueError: If the matrix is singular
    """
    if len(columns) != dim:
        raise ValueError(f"Cannot invert a {dim}x{len(columns)} matrix")
    if dim == 0:
        return []
    matrix = _matrix_from_columns(columns, dim)
    try:
        inverse = matrix.inv()
    except DMNonInvertibleMatrixError as e:
        raise ValueError(f"Matrix is singular: {e}") from e

    rows = _sparse_rows(inverse)
    result: List[Vector] = [{} for _ in range(dim)]
    for i, row in rows.items():
        for j, value in row.items():
            result[j][i] = value
    return result


def combine(columns: Sequence[Vector], coefficients: Vector) -> Vector:
    """Σ coefficients[j] · columns[j]."""
    acc: Vector = {}
    for j, c in coefficients.items():
        for i, value in columns[j].items():
            total = acc.get(i, 0) + c * value
            if total:
                acc[i] = total
            else:
                acc.pop(i, None)
    return acc


class SpanSolver:
    """
    Coordinates of vectors with respect to a list of independent columns.

    A square submatrix on pivot rows is inverted once; ``coordinates``
    multiplies by it and verifies the candidate against the full columns,
    returning None when the vector lies outside the span.
    """

    def __init__(self, columns: Sequence[Vector], dim: int):
        self.columns = [dict(c) for c in columns]
        self.dim = dim
        r = len(self.columns)

        # Pivot rows: independent columns of the transpose.
        rows_as_columns: List[Vector] = [{} for _ in range(dim)]
        for j, column in enumerate(self.columns):
            for i, value in column.items():
                rows_as_columns[i][j] = value
        self.rows = independent_columns(rows_as_columns, r) if r else []
        if len(self.rows) != r:
            raise ValueError(f"SpanSolver needs independent columns (rank {len(self.rows)} < {r})")

        square = [{k: column.get(row, Fraction(0)) for k, row in enumerate(self.rows)} for column in self.columns]
        square = [{k: v for k, v in col.items() if v} for col in square]
        inverse_columns = invert(square, r)
        # inverse[j][k]: row j, column k
        self._inverse: List[Dict[int, Fraction]] = [{} for _ in range(r)]
        for k, column in enumerate(inverse_columns):
            for j, value in column.items():
                self._inverse[j][k] = value

    def coordinates(self, vector: Vector) -> Optional[Vector]:
        """Coefficients x with Σ x_j column_j = vector, or None if none exist."""
        restricted = [vector.get(row, Fraction(0)) for row in self.rows]
        x: Vector = {}
        for j, row in enumerate(self._inverse):
            value = sum((c * restricted[k] for k, c in row.items()), Fraction(0))
            if value:
                x[j] = value

        if combine(self.columns, x) != {i: v for i, v in vector.items() if v}:
            return None
        return x
