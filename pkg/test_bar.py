"""
Tests for the truncated bar construction: square-zero coderivation, t_k
against the construction on words, collapse for strict inputs and the
splitting coproduct.
"""

import pytest

from bar import (
    BarInput, WordSpace, bar_coderivation, bar_delta_operator, bar_square_report, broken_bar_input,
    coproduct_report, m3_fixture, shift_strict, strict_collapse_report, t_op, t_stasheff_report,
    tk_equals_construction, word_algebra, word_coproduct, words_up_to,
)
from borjeson import construct_structure, strict_associativity_defect
from core import StasheffError, TensorElement, TruncationError, Word, compose, validate_algebra
from fixture_algebras import derivation_fixture, dual_numbers, triangular

L = 4


# =============================================================================
# Inputs
# =============================================================================

def test_shift_strict_lowers_degrees_and_signs_products():
    alg = triangular()
    inp = shift_strict(alg, use_delta=False)
    assert inp.space.degrees == (-1, -1, 0)
    assert inp.is_strict()
    e11 = inp.space.index('e11')
    e12 = inp.space.index('e12')
    # e11 has shifted degree −1, so m₂(e11, e12) = −e11·e12.
    assert inp.op(2).entry((e11, e12)).coefficient(e12) == -1


def test_shifted_product_satisfies_the_arity_three_identity():
    for alg in (triangular(), dual_numbers()):
        assert strict_associativity_defect(shift_strict(alg, use_delta=False).op(2)).is_zero()


def test_shift_strict_rejects_non_derivation_delta():
    with pytest.raises(StasheffError):
        shift_strict(triangular(), use_delta=True)


def test_shift_strict_keeps_derivation_delta():
    inp = shift_strict(derivation_fixture(), use_delta=True)
    assert not inp.op(1).is_zero()
    assert bar_square_report(inp, L).ok


def test_bar_input_validates_stasheff():
    broken = broken_bar_input(L)
    with pytest.raises(StasheffError):
        BarInput(broken.space, broken.ops, n_max=3, max_length=L)


# =============================================================================
# Square-zero coderivation
# =============================================================================

@pytest.mark.parametrize('make', [
    lambda: shift_strict(triangular(), use_delta=False),
    lambda: m3_fixture(L),
    lambda: shift_strict(dual_numbers(), use_delta=False),
])
def test_bar_coderivation_squares_to_zero(make):
    report = bar_square_report(make(), L)
    assert report.ok
    assert report.checked > 0


def test_construction_feeds_a_square_zero_bar():
    alg = triangular()
    s = construct_structure(alg, alg.delta, L)
    assert bar_square_report(BarInput(alg.basis, s, n_max=L, max_length=L), L).ok


def test_bar_operator_on_the_word_basis_squares_to_zero():
    inp = m3_fixture(L)
    delta = bar_delta_operator(inp, WordSpace(inp.space, L))
    assert delta.degree == 1
    assert compose(delta, delta).is_zero()
    assert not delta.is_zero()


def test_broken_input_fails_with_a_word_witness():
    report = bar_square_report(broken_bar_input(L), L)
    assert not report.ok
    violation = report.first()
    assert violation.kind == 'bar_square'
    # D[x|x] = [y] and D[y] = [z].
    assert violation.witness == ('x|x',)
    assert violation.detail == 'D²=z'


def test_broken_input_keeps_its_perturbation_note():
    assert broken_bar_input(L).ops.ledger['perturbed'] == 'm2(x,x)+=y'


def test_coderivation_refuses_long_words():
    inp = m3_fixture(2)
    with pytest.raises(TruncationError):
        bar_coderivation(inp, TensorElement.from_word(inp.space, (0, 0, 0)))


def test_m3_fixture_coderivation_value():
    inp = m3_fixture(L)
    x, y = 0, 1
    image = bar_coderivation(inp, TensorElement.from_word(inp.space, (x, x, x, x), L))
    # m₃ contracts either the first three letters or the last three.
    assert image == TensorElement(inp.space, {(y, x): 1, (x, y): 1}, L)


# =============================================================================
# t_k operations
# =============================================================================

@pytest.mark.parametrize('make,k_max', [
    (lambda: shift_strict(triangular(), use_delta=False), 4),
    (lambda: m3_fixture(L), 3),
])
def test_tk_equals_construction(make, k_max):
    report = tk_equals_construction(make(), L, k_max)
    assert report.ok, report.to_lines()[:3]


def test_t_stasheff_holds_on_m3_fixture():
    assert t_stasheff_report(m3_fixture(L), L, 3).ok


def test_t_op_length_guard():
    inp = m3_fixture(3)
    with pytest.raises(TruncationError):
        t_op(inp, 2, [(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        t_op(inp, 2, [(0,)])


def test_t3_on_m3_fixture_contracts_across_the_middle_word():
    inp = m3_fixture(L)
    value = t_op(inp, 3, [(0,), (0,), (0,)])
    assert value == TensorElement(inp.space, {(1,): 1}, L)


def test_strict_input_collapses():
    report = strict_collapse_report(shift_strict(triangular(), use_delta=False), L)
    assert report.ok


def test_strict_collapse_rejects_m3_input():
    with pytest.raises(ValueError):
        strict_collapse_report(m3_fixture(L), L)


# =============================================================================
# Words and coproduct
# =============================================================================

def test_word_counts():
    space = triangular().basis
    assert len(words_up_to(space, 2)) == 3 + 9
    assert len(WordSpace(space, 2).basis) == 12


def test_word_algebra_is_associative_and_truncated():
    alg = word_algebra(m3_fixture(2).space, 2)
    assert validate_algebra(alg).ok
    x = alg.basis.index('x')
    xx = alg.basis.index('x|x')
    assert alg.product_entry(x, x).coefficient(xx) == 1
    assert alg.product_entry(xx, x).is_zero()


def test_coproduct_is_coassociative():
    report = coproduct_report(triangular().basis.shifted(-1), L)
    assert report.ok
    assert report.checked > 0


def test_word_coproduct_splits():
    assert word_coproduct((0, 1, 2)) == [(Word((0,)), Word((1, 2))), (Word((0, 1)), Word((2,)))]
    assert word_coproduct((0,)) == []
