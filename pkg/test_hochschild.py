"""
Tests for Hochschild cochains of Frobenius algebras: pairing validation,
cohomology dimensions, the cochain laws, the dual Connes operator and the
A∞-structure built on normalized cochains.
"""

from fractions import Fraction

import hypothesis
import hypothesis.strategies as strat
import numpy as np
import pytest

from core import FrobeniusError
from fixture_algebras import build_algebra, dual_numbers, matrix_algebra_m2, triangular
from hochschild import (
    Cochain, borjeson_on_hochschild, bv_identity_on_hh, check_tradler, circle, connes_b_dual, cup,
    element_cochain, frobenius_validate, gerstenhaber_bracket, hh_cohomology, hochschild_delta,
    hochschild_law_reports, identity_cochain, multiplication_cochain, random_cochain,
)


@pytest.fixture
def dual():
    return frobenius_validate(dual_numbers())


@pytest.fixture
def m2():
    return frobenius_validate(matrix_algebra_m2())


@pytest.fixture
def kxk():
    """K×K with ⟨p,p⟩ = ⟨q,q⟩ = 1."""
    return frobenius_validate(build_algebra(
        'kxk_trace',
        [('p', 0), ('q', 0)],
        {('p', 'p'): {'p': 1}, ('q', 'q'): {'q': 1}},
        unit={'p': 1, 'q': 1},
        pairing={('p', 'p'): 1, ('q', 'q'): 1},
    ))


# =============================================================================
# Frobenius data
# =============================================================================

def test_dual_numbers_pairing(dual):
    assert not dual.rebased
    one, x = dual.alg.vector('1'), dual.alg.vector('x')
    assert dual.pair(one, x) == 1
    assert dual.trace(x) == 1
    assert dual.trace(one) == 0
    # ⟨y, 1⟩ = 0 and ⟨y, x⟩ = 1 pick out y = 1.
    assert dual.element_from_functional({0: Fraction(0), 1: Fraction(1)}) == one


def test_m2_is_rebased_onto_its_unit(m2):
    assert m2.rebased
    assert m2.unit() == m2.alg.unit
    assert m2.alg.basis.has('1')


def test_degenerate_pairing_is_rejected():
    alg = build_algebra(
        'dual_degenerate',
        [('1', 0), ('x', 0)],
        {('1', '1'): {'1': 1}, ('1', 'x'): {'x': 1}, ('x', '1'): {'x': 1}},
        unit={'1': 1},
        pairing={('1', '1'): 1},
    )
    with pytest.raises(FrobeniusError):
        frobenius_validate(alg)


def test_asymmetric_pairing_names_the_pair():
    alg = build_algebra(
        'dual_asymmetric',
        [('1', 0), ('x', 0)],
        {('1', '1'): {'1': 1}, ('1', 'x'): {'x': 1}, ('x', '1'): {'x': 1}},
        unit={'1': 1},
        pairing={('1', 'x'): 1},
        symmetric_pairing=False,
    )
    with pytest.raises(FrobeniusError) as excinfo:
        frobenius_validate(alg)
    assert excinfo.value.witness == ('1', 'x')


def test_graded_algebra_is_not_frobenius():
    with pytest.raises(FrobeniusError):
        frobenius_validate(triangular(), {(0, 0): Fraction(1)})


# =============================================================================
# Cochain operations
# =============================================================================

def test_delta_of_identity_is_the_unit(dual):
    value = connes_b_dual(dual, identity_cochain(dual.alg))
    assert value.n == 0
    assert value == element_cochain(dual.unit(), dual.alg)


def test_delta_of_a_zero_cochain_vanishes(dual):
    assert connes_b_dual(dual, element_cochain(dual.unit(), dual.alg)).is_zero()


def test_multiplication_is_a_cocycle(dual, m2):
    for fd in (dual, m2):
        assert hochschild_delta(fd, multiplication_cochain(fd.alg)).is_zero()
        assert gerstenhaber_bracket(multiplication_cochain(fd.alg), multiplication_cochain(fd.alg)).is_zero()


def test_bracket_of_one_cochains_is_the_reversed_commutator(m2):
    rng = np.random.default_rng(3)
    f = random_cochain(m2, 1, rng, normalized=False)
    g = random_cochain(m2, 1, rng, normalized=False)
    assert gerstenhaber_bracket(f, g) == circle(g, f) - circle(f, g)
    assert not gerstenhaber_bracket(f, g).is_zero()


def test_coboundary_of_identity_is_the_multiplication(dual, m2):
    for fd in (dual, m2):
        assert hochschild_delta(fd, identity_cochain(fd.alg)) == multiplication_cochain(fd.alg)


def test_inner_derivations_are_coboundaries(dual):
    x = element_cochain(dual.alg.vector('x'), dual.alg)
    # δx(a) = a·x − x·a vanishes on a commutative algebra.
    assert hochschild_delta(dual, x).is_zero()


@hypothesis.settings(max_examples=25, deadline=None)
@hypothesis.given(strat.integers(0, 2**16), strat.integers(0, 2), strat.integers(0, 2))
def test_coboundary_is_a_derivation_of_cup(seed, m, n):
    fd = frobenius_validate(dual_numbers())
    rng = np.random.default_rng(seed)
    f = random_cochain(fd, m, rng, normalized=False)
    g = random_cochain(fd, n, rng, normalized=False)
    sign = -1 if m % 2 else 1
    lhs = hochschild_delta(fd, cup(f, g))
    rhs = cup(hochschild_delta(fd, f), g) + cup(f, hochschild_delta(fd, g)).scale(sign)
    assert lhs == rhs


@hypothesis.settings(max_examples=25, deadline=None)
@hypothesis.given(strat.integers(0, 2**16), strat.integers(0, 3))
def test_connes_operator_squares_to_zero(seed, n):
    fd = frobenius_validate(dual_numbers())
    f = random_cochain(fd, n, np.random.default_rng(seed), normalized=True)
    assert connes_b_dual(fd, connes_b_dual(fd, f)).is_zero()


def test_cochain_arithmetic_checks_degrees(dual):
    with pytest.raises(ValueError):
        Cochain.zero(dual.alg, 1) + Cochain.zero(dual.alg, 2)


# =============================================================================
# Cohomology
# =============================================================================

def test_dual_numbers_hh_dimensions(dual):
    assert hh_cohomology(dual, 4).dims() == (2, 1, 1, 1, 1)


def test_normalized_complex_has_the_same_cohomology(dual):
    assert hh_cohomology(dual, 4, normalized=True).dims() == hh_cohomology(dual, 4).dims()


def test_m2_is_separable(m2):
    assert hh_cohomology(m2, 3, normalized=True).dims() == (1, 0, 0, 0)


def test_kxk_cohomology_is_its_center(kxk):
    assert kxk.rebased
    assert hh_cohomology(kxk, 3).dims() == (2, 0, 0, 0)
    assert hh_cohomology(kxk, 3, normalized=True).dims() == (2, 0, 0, 0)


def test_projection_rejects_non_cocycles(dual):
    hh = hh_cohomology(dual, 2)
    # f(1) = 1, f(x) = 0 has (δf)(1,1) = 1
    f = Cochain(dual.alg, 1, {(dual.unit_index,): dual.unit()})
    assert not hochschild_delta(dual, f).is_zero()
    with pytest.raises(ValueError):
        hh.project(f)


def test_coboundaries_project_to_zero(dual):
    hh = hh_cohomology(dual, 3)
    rng = np.random.default_rng(1)
    boundary = hochschild_delta(dual, random_cochain(dual, 1, rng, normalized=False, density=1.0))
    assert not any(hh.project(boundary))


# =============================================================================
# Laws, δΔ relation and BV
# =============================================================================

@pytest.mark.parametrize('make', [dual_numbers, matrix_algebra_m2])
def test_law_reports_hold(make):
    fd = frobenius_validate(make())
    reports = hochschild_law_reports(fd, 3, seed=0, samples=5)
    for name, report in reports.items():
        assert report.ok, name
        assert report.checked > 0


def test_tradler_relation_pins_a_sign(dual):
    report = check_tradler(dual, 4, seed=0)
    assert report.ok, report.first()
    assert report.ledger['epsilon'] == '-1'
    assert int(report.ledger['epsilon_samples']) > 0


@hypothesis.settings(max_examples=20, deadline=None)
@hypothesis.given(strat.integers(0, 2**16), strat.integers(1, 3))
def test_coboundary_anticommutes_with_connes_on_full_cochains(seed, n):
    fd = frobenius_validate(dual_numbers())
    f = random_cochain(fd, n, np.random.default_rng(seed), normalized=False)
    lhs = hochschild_delta(fd, connes_b_dual(fd, f))
    rhs = connes_b_dual(fd, hochschild_delta(fd, f))
    assert lhs == rhs.scale(-1)


def test_unpinned_epsilon_is_a_failure(kxk):
    report = check_tradler(kxk, 0, seed=0)
    assert report.ledger['epsilon'] == 'unpinned'
    assert not report.ok
    assert report.first().kind == 'epsilon_unpinned'


def test_bv_identity_on_dual_numbers(dual):
    report = bv_identity_on_hh(dual, 3, seed=0)
    assert report.ok, report.first()
    assert report.checked > 0
    assert report.ledger['bv_reading'] == 'cochain'


def test_bv_identity_on_kxk_is_vacuous(kxk):
    report = bv_identity_on_hh(kxk, 2, seed=0)
    assert report.ok
    assert report.ledger['bv_reading'] == 'vacuous'


def test_bv_identity_on_m2_is_vacuous(m2):
    report = bv_identity_on_hh(m2, 2, seed=0)
    assert report.ok
    assert report.ledger['bv_reading'] == 'vacuous'


# =============================================================================
# A∞ on cochains
# =============================================================================

def test_borjeson_on_hochschild_dual_numbers(dual):
    s, report = borjeson_on_hochschild(dual, n_arities=3, n_max=3, seed=0)
    assert report.ok, report.first()
    assert report.ledger['hh_parity'] in ('cochain', 'shifted')
    # both rules agree on every class pair of dual numbers up to degree 3
    assert report.ledger['sigma'] == '-(-1)^|a|;+(-1)^|b|'
    assert s.ledger['stasheff_sweep'] == 'exhaustive'
    nonzero, total = (int(v) for v in report.ledger['hh_m3_nonzero'].split('/'))
    assert total > 0
    assert 0 <= nonzero <= total


def test_sampled_sweep_records_its_size(dual):
    s, report = borjeson_on_hochschild(dual, n_arities=3, n_max=2, seed=0, max_sweep_tuples=30)
    # arity 3: 10 degree compositions of 8 normalized tuples each
    assert report.ledger['stasheff_sweep'] == 'sampled n=3:30/80'
    assert s.ledger['stasheff_sweep'] == report.ledger['stasheff_sweep']
