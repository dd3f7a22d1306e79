"""
Tests for the operations built from a degree +1 operator: explicit values on
the triangular algebra, Stasheff identities, the Δ² comparison, associative
order, compatibility with the product and triviality on Δ-cohomology.
"""

import hypothesis
import hypothesis.strategies as strat
import pytest

from borjeson import (
    assoc_vs_delta_squared, associative_order, compat_check, construct_m, construct_structure,
    derivation_defect, induced_on_cohomology, left_action_structure, left_multiplication,
    m_delta_entry, naive_projection, stasheff_defect, stasheff_report, triviality_report,
)
from core import DegreeError, Element, OrderError, SquareZeroError, delta_contraction, identity_op
from fixture_algebras import (
    FIXTURES, derivation_fixture, dual_numbers, k_times_k, matrix_algebra_m2, odd_elements,
    triangular, truncated_exterior, uvw, with_zero_delta,
)

SQUARE_ZERO = ['tri2', 'deriv', 'k', 'kxk', 'kx3e']


def diagonal(alg, a, b):
    return alg.element([('e11', a), ('e22', b)])


# =============================================================================
# Triangular algebra values
# =============================================================================

@pytest.mark.parametrize('a,b,c,d', [(1, 0, 0, 1), (1, 2, 3, 4), (0, 1, 1, 0), (1, 1, 1, 1)])
def test_triangular_m2_on_diagonals(a, b, c, d):
    alg = triangular()
    m2 = construct_m(alg, alg.delta, 2)
    value = m2(diagonal(alg, a, b), diagonal(alg, c, d))
    assert value == alg.vector('e12').scale(-a * d)


@hypothesis.given(*(strat.integers(-5, 5) for _ in range(4)))
def test_triangular_m2_formula_holds_generally(a, b, c, d):
    alg = triangular()
    m2 = construct_m(alg, alg.delta, 2)
    assert m2(diagonal(alg, a, b), diagonal(alg, c, d)) == alg.vector('e12').scale(-a * d)


def test_triangular_higher_arities_vanish():
    alg = triangular()
    for n in (3, 4, 5, 6):
        assert construct_m(alg, alg.delta, n).is_zero()
    assert len(list(construct_m(alg, alg.delta, 3).index_space())) == 27


def test_m1_is_delta():
    alg = triangular()
    m1 = construct_m(alg, alg.delta, 1)
    for i in range(alg.dim):
        assert m1.entry((i,)) == alg.delta.image(i)


def test_single_entries_match_the_table():
    alg = truncated_exterior()
    m3 = construct_m(alg, alg.delta, 3)
    x = alg.basis.index('x')
    assert m_delta_entry(alg, alg.delta, (x, x, x)) == m3.entry((x, x, x))
    assert m_delta_entry(alg, alg.delta, (x,)) == alg.delta.image(x)


def test_construct_m_rejects_wrong_degree():
    alg = triangular()
    with pytest.raises(DegreeError):
        construct_m(alg, identity_op(alg.basis), 2)
    with pytest.raises(ValueError):
        construct_m(alg, alg.delta, 0)


# =============================================================================
# Stasheff identities and the Δ² comparison
# =============================================================================

@pytest.mark.parametrize('name', SQUARE_ZERO)
def test_stasheff_identities_hold(name):
    alg = FIXTURES[name]()
    s = construct_structure(alg, alg.delta, 5)
    for n in range(1, 6):
        assert stasheff_defect(s, n).is_zero(), f"{name} n={n}"


def test_stasheff_up_to_six_on_triangular():
    alg = triangular()
    s = construct_structure(alg, alg.delta, 6)
    for n in range(2, 7):
        assert stasheff_report(s, n).ok


def test_uvw_stasheff_defect_equals_delta_squared_operations():
    alg = uvw()
    s = construct_structure(alg, alg.delta, 3)
    assert not stasheff_defect(s, 1).is_zero()
    for n in range(1, 6):
        assert assoc_vs_delta_squared(alg, alg.delta, n).is_zero(), f"n={n}"


def test_perturbation_in_two_degrees_is_invisible():
    # Every Stasheff composite of tri2 lands in degree ≥ 2, where tri2 is zero.
    alg = triangular()
    s = construct_structure(alg, alg.delta, 3)
    e11 = alg.basis.index('e11')
    s.ops[2] = s.op(2).with_entry((e11, e11), alg.vector('e12'))
    assert s.op(2).entry((e11, e11)) == alg.vector('e12')
    for n in (1, 2, 3):
        assert stasheff_defect(s, n).is_zero()


def test_stasheff_report_names_the_failing_tuple():
    alg = uvw()
    report = stasheff_report(construct_structure(alg, alg.delta, 1), 1)
    assert not report.ok
    assert report.first().witness == ('u',)
    assert 'w' in report.first().detail


# =============================================================================
# Associative order
# =============================================================================

def test_triangular_order_is_two():
    alg = triangular()
    result = associative_order(alg, alg.delta, 6)
    assert result.order == 2
    assert result.describe() == 'order=2'
    assert result.zero_arities == [3, 4, 5, 6, 7]
    assert result.monotone


def test_derivation_has_order_one():
    alg = derivation_fixture()
    assert derivation_defect(alg, alg.delta).is_zero()
    assert associative_order(alg, alg.delta, 6).order == 1


@pytest.mark.parametrize('factory', [triangular, dual_numbers, matrix_algebra_m2])
def test_zero_delta_has_order_zero(factory):
    alg = with_zero_delta(factory())
    result = associative_order(alg, alg.delta, 4)
    assert result.order == 0
    assert result.zero_arities == [1, 2, 3, 4, 5]


def test_truncated_exterior_exceeds_order_two():
    alg = truncated_exterior()
    x = alg.vector('x')
    m3 = construct_m(alg, alg.delta, 3)
    assert m3(x, x, x) == alg.vector('xe').scale(-2)
    result = associative_order(alg, alg.delta, 2)
    assert result.exceeds_cap
    assert result.describe() == 'order>2'


def test_order_requires_square_zero():
    alg = uvw()
    with pytest.raises(SquareZeroError):
        associative_order(alg, alg.delta, 3)


# =============================================================================
# Compatibility with the product
# =============================================================================

@pytest.mark.parametrize('factory', [triangular, derivation_fixture, k_times_k])
def test_compat_holds_for_order_two(factory):
    alg = factory()
    report = compat_check(alg, alg.delta)
    assert report.ok
    assert report.checked == 2 * alg.dim ** 3


def test_compat_refuses_higher_order():
    alg = truncated_exterior()
    with pytest.raises(OrderError) as excinfo:
        compat_check(alg, alg.delta)
    assert 'm3' in str(excinfo.value)


@pytest.mark.parametrize('factory', [triangular, truncated_exterior])
def test_left_actions_are_compatible(factory):
    alg = factory()
    for xi in odd_elements(alg):
        action = left_multiplication(alg, xi)
        s = left_action_structure(alg, action, n_max=3)
        assert s.ledger['left_action'] == 'strict'
        assert compat_check(alg, action).ok


def test_left_action_of_e12_is_the_triangular_delta():
    alg = triangular()
    (xi,) = odd_elements(alg)
    action = left_multiplication(alg, xi)
    for i in range(alg.dim):
        assert action.image(i) == alg.delta.image(i)


# =============================================================================
# Triviality on Δ-cohomology
# =============================================================================

@pytest.mark.parametrize('name', SQUARE_ZERO)
def test_induced_operations_vanish(name):
    alg = FIXTURES[name]()
    induced = induced_on_cohomology(alg, alg.delta, 4)
    assert triviality_report(induced).ok, name


def test_induced_requires_square_zero():
    alg = uvw()
    with pytest.raises(SquareZeroError):
        induced_on_cohomology(alg, alg.delta, 2)


def test_naive_projection_is_only_diagnostic():
    alg = truncated_exterior()
    s = construct_structure(alg, alg.delta, 3)
    contraction = delta_contraction(alg)
    naive = naive_projection(s, contraction, 3)
    # The naive table is well defined on every class tuple; it is not asserted zero.
    assert naive.arity == 3
    assert all(isinstance(v, Element) for _, v in naive.nonzero_entries())
