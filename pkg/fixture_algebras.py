"""
Small exact algebras used by the checks, the tests and the bundled files.

Each builder returns a fresh GradedAlgebra; structure constants are written
out by basis name, unlisted products are zero.
"""

from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from core.algebra import GradedAlgebra, direct_product
from core.graded import Element, GradedBasis, LinearOperator

Terms = Dict[str, int]


def build_algebra(
    name: str,
    basis_pairs: Iterable[Tuple[str, int]],
    products: Dict[Tuple[str, str], Terms],
    unit: Optional[Terms] = None,
    delta: Optional[Dict[str, Terms]] = None,
    pairing: Optional[Dict[Tuple[str, str], int]] = None,
    symmetric_pairing: bool = True,
) -> GradedAlgebra:
    """
    Assemble an algebra from name-keyed tables.

    Args:
        name: Algebra label
        basis_pairs: (name, degree) in basis order
        products: (left, right) -> {name: coefficient}
        unit: Unit as {name: coefficient}
        delta: Name -> image; when given (even empty) Δ is attached with degree +1
        pairing: (left, right) -> value
        symmetric_pairing: Fill in (right, left) for every listed pair
    """
    basis = GradedBasis.from_pairs(basis_pairs)

    def element(terms: Terms) -> Element:
        return Element.from_terms(basis, [(k, Fraction(v)) for k, v in terms.items()])

    product_table = {(basis.index(a), basis.index(b)): element(v) for (a, b), v in products.items()}
    unit_element = element(unit) if unit is not None else None

    delta_op = None
    if delta is not None:
        delta_op = LinearOperator(basis, 1, {basis.index(k): element(v) for k, v in delta.items()})

    pairing_table = None
    if pairing is not None:
        pairing_table = {}
        for (a, b), value in pairing.items():
            pairing_table[(basis.index(a), basis.index(b))] = Fraction(value)
            if symmetric_pairing:
                pairing_table[(basis.index(b), basis.index(a))] = Fraction(value)

    return GradedAlgebra(name, basis, product_table, unit_element, delta_op, pairing_table)


# =============================================================================
# Fixtures
# =============================================================================

def triangular() -> GradedAlgebra:
    """Upper-triangular 2×2 matrices, e12 in degree 1, Δ(e22) = e12."""
    return build_algebra(
        'tri2',
        [('e11', 0), ('e22', 0), ('e12', 1)],
        {
            ('e11', 'e11'): {'e11': 1},
            ('e11', 'e12'): {'e12': 1},
            ('e12', 'e22'): {'e12': 1},
            ('e22', 'e22'): {'e22': 1},
        },
        unit={'e11': 1, 'e22': 1},
        delta={'e22': {'e12': 1}},
    )


def uvw() -> GradedAlgebra:
    """u:0 unit, v:1, w:2, all other products zero; Δu = v, Δv = w so Δ² ≠ 0."""
    return build_algebra(
        'uvw',
        [('u', 0), ('v', 1), ('w', 2)],
        {
            ('u', 'u'): {'u': 1},
            ('u', 'v'): {'v': 1},
            ('v', 'u'): {'v': 1},
            ('u', 'w'): {'w': 1},
            ('w', 'u'): {'w': 1},
        },
        unit={'u': 1},
        delta={'u': {'v': 1}, 'v': {'w': 1}},
    )


def derivation_fixture() -> GradedAlgebra:
    """1:0, u:0, v:1 with only unit products nonzero and Δu = v (a derivation)."""
    return build_algebra(
        'deriv',
        [('1', 0), ('u', 0), ('v', 1)],
        {
            ('1', '1'): {'1': 1},
            ('1', 'u'): {'u': 1},
            ('u', '1'): {'u': 1},
            ('1', 'v'): {'v': 1},
            ('v', '1'): {'v': 1},
        },
        unit={'1': 1},
        delta={'u': {'v': 1}},
    )


def dual_numbers() -> GradedAlgebra:
    """K[x]/(x²) with ⟨1,x⟩ = 1 and ⟨1,1⟩ = ⟨x,x⟩ = 0."""
    return build_algebra(
        'dual',
        [('1', 0), ('x', 0)],
        {
            ('1', '1'): {'1': 1},
            ('1', 'x'): {'x': 1},
            ('x', '1'): {'x': 1},
        },
        unit={'1': 1},
        pairing={('1', 'x'): 1},
    )


def matrix_algebra_m2() -> GradedAlgebra:
    """M₂(K) in degree 0 with the trace pairing ⟨a,b⟩ = tr(ab); unit e11 + e22."""
    names = ['e11', 'e12', 'e21', 'e22']
    products = {}
    for a in names:
        for b in names:
            if a[2] == b[1]:
                products[(a, b)] = {f"e{a[1]}{b[2]}": 1}
    return build_algebra(
        'm2',
        [(n, 0) for n in names],
        products,
        unit={'e11': 1, 'e22': 1},
        pairing={('e11', 'e11'): 1, ('e22', 'e22'): 1, ('e12', 'e21'): 1},
    )


def field_k() -> GradedAlgebra:
    return build_algebra('k', [('1', 0)], {('1', '1'): {'1': 1}}, unit={'1': 1}, delta={})


def k_times_k() -> GradedAlgebra:
    """K × K with idempotents p, q and zero Δ."""
    return direct_product(field_k(), field_k(), 'kxk')


def truncated_exterior() -> GradedAlgebra:
    """
    K[x]/(x³) ⊗ Λ[e], x:0, e:1, with Δ(x²) = e.

    Δ is square-zero but not a derivation; the values of m₃ on class
    representatives are not Δ-cocycles here, so the induced operations
    must be transferred rather than projected.
    """
    monomials = [('1', 0), ('x', 0), ('x2', 0), ('e', 1), ('xe', 1), ('x2e', 1)]
    power = {'1': 0, 'x': 1, 'x2': 2}
    names = {0: '1', 1: 'x', 2: 'x2'}

    def split(name: str) -> Tuple[int, bool]:
        if name == 'e':
            return 0, True
        if name.endswith('e'):
            return power[name[:-1]], True
        return power[name], False

    products = {}
    for a, _ in monomials:
        for b, _ in monomials:
            pa, ea = split(a)
            pb, eb = split(b)
            if pa + pb > 2 or (ea and eb):
                continue
            base = names[pa + pb]
            if ea or eb:
                target = 'e' if base == '1' else f"{base}e"
            else:
                target = base
            products[(a, b)] = {target: 1}

    return build_algebra('kx3e', monomials, products, unit={'1': 1}, delta={'x2': {'e': 1}})


def with_zero_delta(alg: GradedAlgebra) -> GradedAlgebra:
    return alg.with_delta(LinearOperator.zero(alg.basis, 1))


def perturbed(alg: GradedAlgebra, left: str, right: str, terms: Terms, name: Optional[str] = None) -> GradedAlgebra:
    """Copy of ``alg`` with one product entry replaced."""
    basis = alg.basis
    table = dict(alg.product)
    table[(basis.index(left), basis.index(right))] = Element.from_terms(
        basis, [(k, Fraction(v)) for k, v in terms.items()]
    )
    return GradedAlgebra(name or f"{alg.name}*", basis, table, alg.unit, alg.delta, alg.pairing)


def odd_elements(alg: GradedAlgebra) -> Sequence[Element]:
    """Basis vectors of degree +1 squaring to zero (sources of left actions L_ξ)."""
    found = []
    for i in alg.basis.indices_of_degree(1):
        if alg.product_entry(i, i).is_zero():
            found.append(Element.basis_vector(alg.basis, i))
    return found


FIXTURES = {
    'tri2': triangular,
    'uvw': uvw,
    'deriv': derivation_fixture,
    'dual': dual_numbers,
    'm2': matrix_algebra_m2,
    'k': field_k,
    'kxk': k_times_k,
    'kx3e': truncated_exterior,
}
