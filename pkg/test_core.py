"""
Tests for the graded linear algebra kernel: scalars, elements, operators,
Koszul signs, validation, basis changes and Δ-cohomology.
"""

from fractions import Fraction
from itertools import product

import hypothesis
import hypothesis.strategies as strat
import pytest

from core import (
    BasisMismatchError, DegreeError, Element, GradedBasis, InhomogeneousError,
    LinearOperator, MultiOp, TensorElement, apply_coderivation, apply_tensor_slot,
    change_basis, compose, delta_cohomology, delta_contraction, direct_product, identity_op,
    format_scalar, gamma_n, koszul_sign, parse_scalar, tensor_of, validate_algebra,
)
from core.linalg import rank
from fixture_algebras import (
    FIXTURES, build_algebra, derivation_fixture, dual_numbers, field_k, k_times_k, perturbed,
    triangular, truncated_exterior, uvw, with_zero_delta,
)

fractions = strat.fractions(max_denominator=12).filter(lambda f: abs(f) < 50)


def tri_element(draw_coeffs):
    alg = triangular()
    return Element(alg.basis, dict(enumerate(draw_coeffs)))


elements = strat.lists(fractions, min_size=3, max_size=3).map(tri_element)


# =============================================================================
# Scalars
# =============================================================================

def test_parse_scalar_literals():
    assert parse_scalar('3') == Fraction(3)
    assert parse_scalar('-2/6') == Fraction(-1, 3)
    assert parse_scalar(' 4 / 2 ') == Fraction(2)


@pytest.mark.parametrize('text', ['', 'x', '1.5', '1/0', '2/-3'])
def test_parse_scalar_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


@hypothesis.given(fractions)
def test_format_then_parse_is_exact(value):
    assert parse_scalar(format_scalar(value)) == value


# =============================================================================
# Elements
# =============================================================================

@hypothesis.given(elements, elements)
def test_element_addition_commutes(a, b):
    assert a + b == b + a


@hypothesis.given(elements, fractions, fractions)
def test_scaling_distributes(a, s, t):
    assert a.scale(s + t) == a.scale(s) + a.scale(t)


@hypothesis.given(elements)
def test_element_minus_itself_is_zero(a):
    assert (a - a).is_zero()
    assert (a - a).format() == '0'


def test_element_format_and_degree():
    alg = triangular()
    x = alg.element([('e11', 1), ('e22', Fraction(-1, 3))])
    assert x.format() == 'e11 - 1/3*e22'
    assert x.degree() == 0
    with pytest.raises(InhomogeneousError):
        (x + alg.vector('e12')).degree()
    with pytest.raises(InhomogeneousError):
        Element.zero(alg.basis).degree()


def test_elements_of_different_bases_do_not_mix():
    with pytest.raises(BasisMismatchError):
        triangular().vector('e11') + dual_numbers().vector('x')


def test_basis_rejects_duplicates():
    with pytest.raises(ValueError):
        GradedBasis(('a', 'a'), (0, 1))


# =============================================================================
# Operators and signs
# =============================================================================

@hypothesis.given(strat.integers(-3, 3), strat.lists(strat.integers(-3, 3), max_size=4),
                  strat.lists(strat.integers(-3, 3), max_size=4))
def test_koszul_sign_is_multiplicative(op_degree, first, second):
    assert koszul_sign(op_degree, first + second) == koszul_sign(op_degree, first) * koszul_sign(op_degree, second)


def test_apply_tensor_slot_carries_koszul_sign():
    alg = triangular()
    e12, e22 = alg.vector('e12'), alg.vector('e22')
    delta = alg.delta
    unary = MultiOp.from_rule(1, 1, alg.basis, lambda idx: delta.image(idx[0]))

    # Δ passes e12 (degree 1) to reach e22.
    args = apply_tensor_slot(2, 1, unary, [e12, e22])
    assert args[0] == e12
    assert args[1] == -e12


def test_operator_degree_is_checked():
    alg = triangular()
    with pytest.raises(DegreeError):
        alg.delta.require_degree(2, 'delta')
    bad = LinearOperator(alg.basis, 1, {0: alg.vector('e22')})
    assert bad.degree_violations()


def test_compose_squares_delta():
    assert compose(triangular().delta, triangular().delta).is_zero()
    square = compose(uvw().delta, uvw().delta)
    assert square.image(0) == uvw().vector('w')


def test_identity_op_is_neutral_for_compose():
    alg = triangular()
    identity = identity_op(alg.basis)
    assert identity.degree == 0
    for op in (compose(alg.delta, identity), compose(identity, alg.delta)):
        assert op.degree == 1
        for i in range(alg.dim):
            assert op.image(i) == alg.delta.image(i)
    x = alg.element([('e11', 2), ('e12', -1)])
    assert identity(x) == x


def test_gamma_n_is_left_to_right():
    alg = triangular()
    e11, e12, e22 = (alg.vector(n) for n in ('e11', 'e12', 'e22'))
    assert gamma_n(alg, [e11, e12, e22]) == e12
    assert gamma_n(alg, [e12, e11]).is_zero()


@pytest.mark.parametrize('make', [triangular, dual_numbers])
def test_gamma_n_matches_every_bracketing(make):
    alg = make()
    vectors = [Element.basis_vector(alg.basis, i) for i in range(alg.dim)]
    for n in range(1, 7):
        for args in product(vectors, repeat=n):
            value = gamma_n(alg, list(args))
            nested = args[-1]
            for a in reversed(args[:-1]):
                nested = alg.multiply(a, nested)
            assert value == nested
            for k in range(1, n):
                split = alg.multiply(gamma_n(alg, list(args[:k])), gamma_n(alg, list(args[k:])))
                assert value == split, (n, k)


# =============================================================================
# Validation
# =============================================================================

@pytest.mark.parametrize('name', sorted(set(FIXTURES) - {'uvw'}))
def test_fixtures_validate(name):
    assert validate_algebra(FIXTURES[name]()).ok


def test_uvw_reports_only_delta_square():
    report = validate_algebra(uvw())
    assert {v.kind for v in report} == {'delta_square'}
    assert report.first().witness == ('u',)


def test_perturbed_product_is_reported_with_witness():
    alg = perturbed(triangular(), 'e12', 'e22', {'e12': 2})
    report = validate_algebra(alg)
    kinds = [v.kind for v in report]
    assert 'associativity' in kinds
    assert 'unit' in kinds
    witness = next(v for v in report if v.kind == 'associativity')
    assert 'e12' in witness.witness


def test_grading_violation():
    alg = perturbed(triangular(), 'e11', 'e22', {'e12': 1})
    assert any(v.kind == 'grading' and v.witness == ('e11', 'e22') for v in validate_algebra(alg))


# =============================================================================
# Basis changes and products
# =============================================================================

def test_change_basis_preserves_structure():
    alg = dual_numbers()
    one, x = alg.vector('1'), alg.vector('x')
    moved = change_basis(alg, [one + x, x], names=['a', 'b'])
    assert validate_algebra(moved).ok
    # (1+x)² = 1 + 2x = a + b in the new basis.
    assert moved.product_entry(0, 0) == moved.element([('a', 1), ('b', 1)])
    assert moved.pair(moved.vector('a'), moved.vector('a')) == 2


def test_direct_product_of_fields():
    alg = k_times_k()
    assert alg.dim == 2
    assert alg.basis.names == ('a.1', 'b.1')
    assert validate_algebra(alg).ok
    assert alg.product_entry(0, 1).is_zero()
    assert alg.unit == alg.element([('a.1', 1), ('b.1', 1)])


def test_direct_product_prefixes_clashing_names():
    alg = direct_product(field_k(), dual_numbers())
    assert alg.basis.names == ('a.1', 'b.1', 'b.x')
    assert alg.product_entry(2, 1) == alg.vector('b.x')


# =============================================================================
# Δ-cohomology
# =============================================================================

def test_triangular_cohomology():
    dims = delta_cohomology(triangular()).dimensions()
    assert dims.get(0) == 1
    assert dims.get(1, 0) == 0


def test_derivation_cohomology_projects_cocycles():
    alg = derivation_fixture()
    basis = delta_cohomology(alg)
    assert sum(basis.dimensions().values()) == 1
    one = alg.vector('1')
    assert not basis.project(one).is_zero()
    with pytest.raises(ValueError):
        basis.project(alg.vector('u'))


def test_contraction_identity():
    alg = truncated_exterior()
    contraction = delta_contraction(alg)
    h = contraction.homotopy_operator()
    for i in range(alg.dim):
        x = Element.basis_vector(alg.basis, i)
        lhs = contraction.retract(x) - x
        rhs = alg.delta(h(x)) + h(alg.delta(x))
        assert lhs == rhs
        assert h(h(x)).is_zero()


def delta_rank(alg, degree):
    target = {g: k for k, g in enumerate(alg.basis.indices_of_degree(degree))}
    if not target:
        return 0
    columns = [{target[j]: c for j, c in alg.delta.image(i).coeffs.items()}
               for i in alg.basis.indices_of_degree(degree - 1)]
    return rank(columns, len(target)) if columns else 0


@pytest.mark.parametrize('make', [triangular, derivation_fixture, truncated_exterior])
def test_class_count_is_kernel_minus_image(make):
    alg = make()
    basis = delta_cohomology(alg)
    for d, count in basis.dimensions().items():
        kernel = len(alg.basis.indices_of_degree(d)) - delta_rank(alg, d + 1)
        assert count == kernel - delta_rank(alg, d), d


@pytest.mark.parametrize('make', [triangular, derivation_fixture, truncated_exterior])
def test_projection_of_representatives_is_the_identity(make):
    basis = delta_cohomology(make())
    for k, rep in enumerate(basis.representatives):
        assert basis.project(rep) == Element.basis_vector(basis.classes, k)
        assert basis.include(Element.basis_vector(basis.classes, k)) == rep


@hypothesis.settings(max_examples=20, deadline=None)
@hypothesis.given(strat.lists(strat.integers(-3, 3), min_size=6, max_size=6))
def test_boundaries_project_to_zero(coeffs):
    alg = truncated_exterior()
    basis = delta_cohomology(alg)
    x = Element(alg.basis, dict(enumerate(Fraction(c) for c in coeffs)))
    assert basis.project(alg.delta(x)).is_zero()


def test_triangular_representative_is_e11():
    alg = triangular()
    basis = delta_cohomology(alg)
    assert basis.representatives == [alg.vector('e11')]


def test_zero_delta_keeps_the_whole_basis():
    alg = with_zero_delta(triangular())
    basis = delta_cohomology(alg)
    assert basis.dimensions() == {0: 2, 1: 1}
    assert basis.representatives == [Element.basis_vector(alg.basis, i) for i in range(alg.dim)]


def test_acyclic_pair_has_no_classes():
    alg = build_algebra('uv', [('u', 0), ('v', 1)], {}, delta={'u': {'v': 1}})
    basis = delta_cohomology(alg)
    assert len(basis) == 0
    assert basis.dimensions() == {0: 0, 1: 0}


# =============================================================================
# Tensor words
# =============================================================================

def test_tensor_of_expands_multilinearly():
    alg = triangular()
    a = alg.element([('e11', 1), ('e22', 2)])
    t = tensor_of(alg.basis, [a, alg.vector('e12')])
    assert t == TensorElement(alg.basis, {(0, 2): 1, (1, 2): 2})


def test_coderivation_with_only_delta():
    alg = triangular()
    m1 = MultiOp.from_rule(1, 1, alg.basis, lambda idx: alg.delta.image(idx[0]))
    t = TensorElement.from_word(alg.basis, (2, 1))  # e12 ⊗ e22
    result = apply_coderivation({1: m1}, t)
    # Δ passes e12, giving −e12 ⊗ e12.
    assert result == TensorElement(alg.basis, {(2, 2): -1})
