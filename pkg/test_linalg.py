"""
Tests for exact elimination over the rationals.
"""

from fractions import Fraction

import hypothesis
import hypothesis.strategies as strat
import pytest

from core.linalg import SpanSolver, combine, independent_columns, invert, kernel_basis, rank

small = strat.integers(-4, 4).map(Fraction)


@strat.composite
def column_sets(draw, max_dim=4, max_columns=5):
    dim = draw(strat.integers(1, max_dim))
    count = draw(strat.integers(1, max_columns))
    columns = []
    for _ in range(count):
        values = draw(strat.lists(small, min_size=dim, max_size=dim))
        columns.append({i: v for i, v in enumerate(values) if v})
    return columns, dim


def test_rank_of_dependent_columns():
    columns = [{0: Fraction(1), 1: Fraction(2)}, {0: Fraction(2), 1: Fraction(4)}, {2: Fraction(1)}]
    assert rank(columns, 3) == 2
    assert independent_columns(columns, 3) == [0, 2]


def test_kernel_of_dependent_columns():
    columns = [{0: Fraction(1), 1: Fraction(2)}, {0: Fraction(2), 1: Fraction(4)}]
    kernel = kernel_basis(columns, 2)
    assert kernel == [{1: Fraction(1), 0: Fraction(-2)}]


@hypothesis.given(column_sets())
def test_kernel_vectors_are_killed(data):
    columns, dim = data
    kernel = kernel_basis(columns, dim)
    assert len(kernel) == len(columns) - rank(columns, dim)
    for vector in kernel:
        assert combine(columns, vector) == {}


def test_invert_round_trip():
    columns = [{0: Fraction(2), 1: Fraction(1)}, {0: Fraction(1), 1: Fraction(1)}]
    inverse = invert(columns, 2)
    # Columns of A⁻¹ combined by A's columns give the identity.
    for j, column in enumerate(inverse):
        assert combine(columns, column) == {j: Fraction(1)}


def test_invert_singular_raises():
    with pytest.raises(ValueError):
        invert([{0: Fraction(1)}, {0: Fraction(2)}], 2)


@hypothesis.given(column_sets(), strat.lists(small, min_size=5, max_size=5))
def test_span_solver_recovers_coordinates(data, coefficients):
    columns, dim = data
    independent = [columns[j] for j in independent_columns(columns, dim)]
    solver = SpanSolver(independent, dim)
    x = {j: c for j, c in enumerate(coefficients[:len(independent)]) if c}
    target = combine(independent, x)
    assert solver.coordinates(target) == x


def test_span_solver_rejects_outside_vectors():
    solver = SpanSolver([{0: Fraction(1)}], 2)
    assert solver.coordinates({1: Fraction(1)}) is None
    assert solver.coordinates({0: Fraction(3)}) == {0: Fraction(3)}
