"""
Verification suite implementations and their registration.

Each suite reads the parsed algebra from a CheckContext and appends named
checks to the run report. Importing this module registers every suite.
"""

import logging
from typing import List, Tuple

from bar import (
    BarInput, bar_square_report, coproduct_report, shift_strict, strict_collapse_report,
    t_stasheff_report, tk_equals_construction,
)
from borjeson import (
    assoc_vs_delta_squared, associative_order, compat_check, construct_m, construct_structure,
    derivation_defect, induced_on_cohomology, left_action_structure, left_multiplication,
    naive_projection, stasheff_defect, stasheff_report, triviality_report,
)
from check_registry import (
    COMMANDS, REQUIRES_DELTA, REQUIRES_PAIRING, REQUIRES_SQUARE_ZERO, CheckContext, register_suite,
)
from core.algebra import ValidationReport, validate_algebra
from core.cohomology import delta_cohomology, delta_contraction
from fixture_algebras import odd_elements
from hochschild import (
    borjeson_on_hochschild, bv_identity_on_hh, check_tradler, frobenius_validate,
    hh_cohomology, hochschild_law_reports,
)
from random_algebras import operator_instances, square_zero_instances

logger = logging.getLogger(__name__)


def _first_entry(op) -> str:
    first = op.first_nonzero()
    if first is None:
        return ''
    idx, value = first
    return op.format_entry(idx, value)


# =============================================================================
# core
# =============================================================================

def run_validate_suite(ctx: CheckContext):
    """Structure constants, unit and Δ degree; Δ² is routed, not failed."""
    full = validate_algebra(ctx.algebra)
    structural = ValidationReport([v for v in full if v.kind != 'delta_square'], checked=full.checked)
    ctx.report.add_validation('validate_algebra', {}, structural, 'validate', pass_detail=f"dim={ctx.algebra.dim}")
    if ctx.has_delta:
        squares = [v for v in full if v.kind == 'delta_square']
        ctx.report.record('delta_square', 'zero' if not squares else f"nonzero:{squares[0].format()}")


# =============================================================================
# borjeson
# =============================================================================

def run_ainf_suite(ctx: CheckContext):
    """Stasheff identities when Δ² = 0, and the Δ² comparison for every arity."""
    alg, delta = ctx.algebra, ctx.delta
    n_max = ctx.bounds['max_arity']

    if ctx.square_zero:
        def stasheff():
            s = construct_structure(alg, delta, n_max)
            for n in range(1, n_max + 1):
                ctx.report.add_validation('stasheff', {'n': n}, stasheff_report(s, n), 'ainf')
        ctx.attempt('ainf', 'stasheff', {'n_max': n_max}, stasheff)

    def assoc():
        for n in range(1, n_max + 1):
            defect = assoc_vs_delta_squared(alg, delta, n)
            detail = _first_entry(defect)
            ctx.report.add('assoc_vs_delta_squared', {'n': n}, not detail, detail, 'ainf')
    ctx.attempt('ainf', 'assoc_vs_delta_squared', {'n_max': n_max}, assoc)


def run_order_suite(ctx: CheckContext):
    alg, delta = ctx.algebra, ctx.delta
    cap = ctx.bounds['order_cap']

    def order():
        result = associative_order(alg, delta, cap)
        ctx.report.add('associative_order', {'cap': cap}, True, result.describe(), 'order')
        ctx.report.record('associative_order', result.order if result.order is not None else f">{cap}")
        zeros = ','.join(str(a) for a in result.zero_arities) or 'none'
        detail = f"zero={zeros}" if result.monotone else result.witness
        ctx.report.add('order_monotone', {'cap': cap}, result.monotone, detail, 'order')
    ctx.attempt('order', 'associative_order', {'cap': cap}, order)


def run_compat_suite(ctx: CheckContext):
    """Compatibility of m₂ with the product for Δ and for every odd left action."""
    alg, delta = ctx.algebra, ctx.delta
    m3_nonzero = _first_entry(construct_m(alg, delta, 3))

    if m3_nonzero and ctx.report.command == 'all':
        ctx.report.record('compat', f"skipped:order>2 m3{m3_nonzero}")
    else:
        ctx.attempt('compat', 'compat', {}, lambda: ctx.report.add_validation(
            'compat', {}, compat_check(alg, delta), 'compat', pass_detail=f"triples={alg.dim ** 3}"))

    actions = odd_elements(alg)
    if not actions:
        ctx.report.record('left_action', 'none')
    for xi in actions:
        label = xi.format()

        def left_action(xi=xi, label=label):
            action = left_multiplication(alg, xi)
            s = left_action_structure(alg, action, n_max=3)
            ctx.report.add_validation('left_action', {'xi': label}, compat_check(alg, action), 'compat',
                                      pass_detail=s.ledger.get('left_action', ''))
        ctx.attempt('compat', 'left_action', {'xi': label}, left_action)


def run_cohomology_suite(ctx: CheckContext):
    alg, delta = ctx.algebra, ctx.delta
    n_max = min(ctx.bounds['cohomology_arity'], ctx.bounds['max_arity'])

    def cohomology():
        basis = delta_cohomology(alg.with_delta(delta))
        dims = ','.join(f"{d}:{k}" for d, k in sorted(basis.dimensions().items()))
        ctx.report.add('delta_cohomology', {}, True, f"dims={dims}", 'cohomology')
        return basis
    if ctx.attempt('cohomology', 'delta_cohomology', {}, cohomology) is None:
        return

    def induced():
        ctx.report.add_validation('induced_on_cohomology', {'n_max': n_max},
                                  triviality_report(induced_on_cohomology(alg, delta, n_max)), 'cohomology')
        s = construct_structure(alg, delta, n_max)
        contraction = delta_contraction(alg.with_delta(delta))
        naive = [f"m{n}:{'0' if naive_projection(s, contraction, n).is_zero() else 'nonzero'}"
                 for n in range(2, n_max + 1)]
        ctx.report.record('naive_projection', ','.join(naive))
    ctx.attempt('cohomology', 'induced_on_cohomology', {'n_max': n_max}, induced)


# =============================================================================
# bar
# =============================================================================

def run_bar_suite(ctx: CheckContext):
    alg, delta = ctx.algebra, ctx.delta
    length = ctx.bounds['max_word']
    use_delta = ctx.has_delta and ctx.square_zero and derivation_defect(alg, delta).is_zero()
    ctx.report.record('bar_use_delta', use_delta)

    inp = ctx.attempt('bar', 'shift_strict', {'use_delta': use_delta},
                      lambda: shift_strict(alg, use_delta=use_delta, n_max=length, max_length=length))
    if inp is not None:
        ctx.report.add('shift_strict', {'use_delta': use_delta}, True, f"letters={alg.dim}", 'bar')
        params = {'L': length, 'input': 'shift'}
        ctx.attempt('bar', 'bar_square_zero', params, lambda: ctx.report.add_validation(
            'bar_square_zero', params, bar_square_report(inp, length), 'bar'))

        k_max = min(ctx.bounds['tk_arity'], length)
        ctx.attempt('bar', 'tk_equals_construction', {'L': length, 'k': k_max}, lambda: ctx.report.add_validation(
            'tk_equals_construction', {'L': length, 'k': k_max}, tk_equals_construction(inp, length, k_max), 'bar'))

        k_stasheff = min(ctx.bounds['t_stasheff_arity'], length)
        ctx.attempt('bar', 't_stasheff', {'L': length, 'k': k_stasheff}, lambda: ctx.report.add_validation(
            't_stasheff', {'L': length, 'k': k_stasheff}, t_stasheff_report(inp, length, k_stasheff), 'bar'))

        ctx.attempt('bar', 'strict_collapse', {'L': length}, lambda: ctx.report.add_validation(
            'strict_collapse', {'L': length}, strict_collapse_report(inp, length), 'bar'))

        ctx.attempt('bar', 'coproduct_coassociative', {'L': length}, lambda: ctx.report.add_validation(
            'coproduct_coassociative', {'L': length}, coproduct_report(inp.space, length), 'bar'))

    if ctx.square_zero:
        params = {'L': length, 'input': 'construction'}

        def construction():
            s = construct_structure(alg, delta, length)
            built = BarInput(alg.basis, s, n_max=length, max_length=length)
            ctx.report.add_validation('bar_square_zero', params, bar_square_report(built, length), 'bar')
        ctx.attempt('bar', 'bar_square_zero', params, construction)


# =============================================================================
# hochschild
# =============================================================================

LAW_CHECKS = {
    'delta_square': 'hochschild_delta_square',
    'cup_associative': 'cup_associative',
    'cup_leibniz': 'cup_leibniz',
    'bracket_antisymmetry': 'bracket_antisymmetry',
    'bracket_mu_mu': 'bracket_mu_mu',
}


def run_hochschild_suite(ctx: CheckContext):
    settings = ctx.settings['hochschild']
    n_max = ctx.bounds['max_cochain']
    seed = ctx.seed
    density = settings['density']

    fd = ctx.attempt('hochschild', 'frobenius', {}, lambda: frobenius_validate(ctx.algebra))
    if fd is None:
        return
    unit = fd.basis.names[fd.unit_index]
    ctx.report.add('frobenius', {}, True, f"unit={unit}" + (",rebased" if fd.rebased else ''), 'hochschild')

    def laws():
        reports = hochschild_law_reports(fd, n_max, seed, settings['samples'], density)
        for key, name in LAW_CHECKS.items():
            ctx.report.add_validation(name, {'n_max': n_max, 'samples': settings['samples']}, reports[key], 'hochschild')
    ctx.attempt('hochschild', 'hochschild_laws', {'n_max': n_max}, laws)

    def dimensions():
        full = hh_cohomology(fd, n_max, normalized=False, max_coordinates=settings['full_complex_max_coordinates'])
        normalized = hh_cohomology(fd, n_max, normalized=True)
        common = min(full.n_max, normalized.n_max)
        agree = full.dims()[:common + 1] == normalized.dims()[:common + 1]
        detail = 'dims=' + ','.join(str(d) for d in normalized.dims())
        if not agree:
            detail += ' full=' + ','.join(str(d) for d in full.dims())
        ctx.report.add('hh_dimensions', {'n_max': n_max}, agree, detail, 'hochschild')
        ctx.report.record('hh_full_through', full.n_max)
    ctx.attempt('hochschild', 'hh_dimensions', {'n_max': n_max}, dimensions)

    per_degree = settings['samples_per_degree']
    ctx.attempt('hochschild', 'tradler', {'n_max': n_max}, lambda: ctx.report.add_validation(
        'tradler', {'n_max': n_max}, check_tradler(fd, n_max, seed, per_degree, density), 'hochschild'))

    ctx.attempt('hochschild', 'bv_identity', {'n_max': n_max}, lambda: ctx.report.add_validation(
        'bv_identity', {'n_max': n_max}, bv_identity_on_hh(fd, n_max, seed, density), 'hochschild'))

    arity = settings['ainf_arity']
    cochains = min(settings['ainf_max_cochain'], n_max)
    params = {'arity': arity, 'n_max': cochains}

    def ainf():
        _, result = borjeson_on_hochschild(fd, arity, cochains, seed, settings['max_sweep_tuples'], density)
        ctx.report.add_validation('hochschild_ainf', params, result, 'hochschild')
    ctx.attempt('hochschild', 'hochschild_ainf', params, ainf)


# =============================================================================
# random
# =============================================================================

def _stasheff_failures(instances, n_max: int) -> List[Tuple[str, str]]:
    failures = []
    for inst in instances:
        s = construct_structure(inst.algebra, inst.delta, n_max)
        for n in range(2, n_max + 1):
            detail = _first_entry(stasheff_defect(s, n))
            if detail:
                failures.append((inst.label, f"n={n} {detail}"))
                break
    return failures


def _assoc_failures(instances, n_max: int) -> List[Tuple[str, str]]:
    failures = []
    for inst in instances:
        for n in range(1, n_max + 1):
            detail = _first_entry(assoc_vs_delta_squared(inst.algebra, inst.delta, n))
            if detail:
                failures.append((inst.label, f"n={n} {detail}"))
                break
    return failures


def run_random_suite(ctx: CheckContext):
    settings = ctx.settings['random']
    count = settings['instances']

    for name, draw, check, n_max in (
        ('random_stasheff', square_zero_instances, _stasheff_failures, settings['stasheff_arity']),
        ('random_assoc', operator_instances, _assoc_failures, settings['assoc_arity']),
    ):
        params = {'instances': count, 'n_max': n_max, 'seed': ctx.seed}

        def run(draw=draw, check=check, n_max=n_max, name=name, params=params):
            instances = draw(ctx.seed, count, settings)
            failures = check(instances, n_max)
            detail = f"{failures[0][0]} {failures[0][1]}" if failures else ''
            ctx.report.add(name, params, not failures, detail, 'random')
            ctx.report.record(f"{name}_families", ','.join(sorted({i.family for i in instances})))
        ctx.attempt('random', name, params, run)


# =============================================================================
# Registration
# =============================================================================

register_suite(
    id='validate',
    name='Algebra Validation',
    category='core',
    description='Grading, associativity, unit laws and Δ degree; records whether Δ² = 0',
    function=run_validate_suite,
    commands=list(COMMANDS),
    checks=['validate_algebra'],
)

register_suite(
    id='ainf',
    name='A-infinity Identities',
    category='borjeson',
    description='Stasheff identities of m_Δ up to max arity, and Stasheff defect = m_{Δ²}',
    function=run_ainf_suite,
    commands=['ainf', 'all'],
    checks=['stasheff', 'assoc_vs_delta_squared'],
)

register_suite(
    id='order',
    name='Associative Order',
    category='borjeson',
    description='Least n with m_{n+1} = 0, and vanishing of every higher arity up to the cap',
    function=run_order_suite,
    commands=['order', 'all'],
    requires=[REQUIRES_DELTA, REQUIRES_SQUARE_ZERO],
    checks=['associative_order', 'order_monotone'],
)

register_suite(
    id='compat',
    name='Compatibility with the Product',
    category='borjeson',
    description='γ₂(id,m₂) = m₂(γ₂,id) and γ₂(m₂,id) = m₂(id,γ₂), for Δ and for odd left actions',
    function=run_compat_suite,
    commands=['compat', 'all'],
    requires=[REQUIRES_SQUARE_ZERO],
    checks=['compat', 'left_action'],
)

register_suite(
    id='cohomology',
    name='Triviality on Δ-Cohomology',
    category='borjeson',
    description='Δ-cohomology and vanishing of the operations transferred to it',
    function=run_cohomology_suite,
    commands=['cohomology', 'all'],
    requires=[REQUIRES_DELTA, REQUIRES_SQUARE_ZERO],
    checks=['delta_cohomology', 'induced_on_cohomology'],
)

register_suite(
    id='bar',
    name='Bar Construction',
    category='bar',
    description='Shifted strict structure, square-zero bar coderivation, t_k versus the construction',
    function=run_bar_suite,
    commands=['bar', 'all'],
    checks=['shift_strict', 'bar_square_zero', 'tk_equals_construction', 't_stasheff',
            'strict_collapse', 'coproduct_coassociative'],
)

register_suite(
    id='hochschild',
    name='Hochschild Cochains',
    category='hochschild',
    description='Frobenius pairing, cochain laws, HH dimensions, the δΔ relation and the BV identity, A∞ on cochains',
    function=run_hochschild_suite,
    commands=['hochschild', 'all'],
    requires=[REQUIRES_PAIRING],
    checks=['frobenius', 'hochschild_delta_square', 'cup_associative', 'cup_leibniz',
            'bracket_antisymmetry', 'bracket_mu_mu', 'hh_dimensions', 'tradler', 'bv_identity',
            'hochschild_ainf'],
)

register_suite(
    id='random',
    name='Random Instances',
    category='random',
    description='Stasheff identities and the Δ² comparison on seeded random algebras',
    function=run_random_suite,
    commands=['ainf', 'all'],
    checks=['random_stasheff', 'random_assoc'],
)
