"""
Seeded random (algebra, operator) instances.

Algebras are drawn from a few families: sparse structure constants in
degrees 0 and 1 (rejection-sampled until associative), K[x]/(x^k) ⊗ Λ[e],
graded upper-triangular matrices, direct products of these, and algebras
spread over three degrees, with dimension at most 4. Degree +1 operators on
algebras living in two adjacent degrees are automatically square-zero, and
every Stasheff composite vanishes there for degree reasons; the 'spread'
family is where the identities have content. On it Δ² = 0 is forced by
clearing the images of one degree.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

import numpy as np

from check_config import DEFAULT_RANDOM_CONFIG, merge_config
from core.algebra import GradedAlgebra, direct_product, validate_algebra
from core.graded import Element, GradedBasis, LinearOperator, compose
from fixture_algebras import build_algebra, field_k, uvw

logger = logging.getLogger(__name__)

SQUARE_ZERO_FAMILIES = ('sparse', 'truncated', 'triangular', 'product', 'spread')
OPERATOR_FAMILIES = ('cubic', 'uvw')


@dataclass
class RandomInstance:
    """
    One random algebra with an operator of degree +1.

    Attributes:
        algebra: The algebra, with ``delta`` set to the operator
        family: Family the algebra was drawn from
        seed: Seed of the generator that produced it
        index: Position in the seeded sequence
    """
    algebra: GradedAlgebra
    family: str
    seed: int
    index: int

    @property
    def delta(self) -> LinearOperator:
        return self.algebra.delta

    @property
    def label(self) -> str:
        return f"{self.family}#{self.index}"


def _coefficient(rng: np.random.Generator, coefficient_range: int) -> Fraction:
    value = 0
    while value == 0:
        value = int(rng.integers(-coefficient_range, coefficient_range + 1))
    return Fraction(value)


def sparse_algebra(rng: np.random.Generator, config: Dict) -> Optional[GradedAlgebra]:
    """
    Random associative algebra of dimension ≤ 3 in degrees 0 and 1.

    Returns None when no associative table is found within max_attempts draws.
    """
    dim = int(rng.integers(2, 4))
    degrees = tuple(sorted(int(d) for d in rng.integers(0, 2, size=dim)))
    basis = GradedBasis(tuple(f"b{i}" for i in range(dim)), degrees)

    for attempt in range(config['max_attempts']):
        table = {}
        for i, j in product(range(dim), repeat=2):
            target = basis.indices_of_degree(degrees[i] + degrees[j])
            coeffs = {k: _coefficient(rng, config['coefficient_range'])
                      for k in target if rng.random() < config['density']}
            if coeffs:
                table[(i, j)] = Element(basis, coeffs)
        if not table:
            continue
        alg = GradedAlgebra(f"sparse{dim}", basis, table)
        if validate_algebra(alg).ok:
            logger.debug("sparse algebra found after %d attempts", attempt + 1)
            return alg
    return None


def truncated_algebra(rng: np.random.Generator) -> GradedAlgebra:
    """K[x]/(x^k) ⊗ Λ[e] with k ∈ {1, 2}, x:0, e:1."""
    if rng.random() < 0.5:
        return build_algebra(
            'lambda',
            [('1', 0), ('e', 1)],
            {('1', '1'): {'1': 1}, ('1', 'e'): {'e': 1}, ('e', '1'): {'e': 1}},
            unit={'1': 1},
        )
    products = {}
    monomials = {'1': (0, 0), 'x': (1, 0), 'e': (0, 1), 'xe': (1, 1)}
    by_exponents = {v: k for k, v in monomials.items()}
    for a, (pa, ea) in monomials.items():
        for b, (pb, eb) in monomials.items():
            key = (pa + pb, ea + eb)
            if key in by_exponents:
                products[(a, b)] = {by_exponents[key]: 1}
    return build_algebra('kx2e', [('1', 0), ('x', 0), ('e', 1), ('xe', 1)], products, unit={'1': 1})


def triangular_algebra(rng: np.random.Generator) -> GradedAlgebra:
    """Upper-triangular 2×2 matrices with deg e_ij = g_j − g_i for random g."""
    g = (0, int(rng.integers(0, 2)))
    return build_algebra(
        f"tri_g{g[1]}",
        [('e11', 0), ('e22', 0), ('e12', g[1] - g[0])],
        {
            ('e11', 'e11'): {'e11': 1},
            ('e11', 'e12'): {'e12': 1},
            ('e12', 'e22'): {'e12': 1},
            ('e22', 'e22'): {'e22': 1},
        },
        unit={'e11': 1, 'e22': 1},
    )


def product_algebra(rng: np.random.Generator) -> GradedAlgebra:
    """K × (a truncated or triangular algebra), dimension ≤ 4."""
    other = truncated_algebra(rng) if rng.random() < 0.5 else triangular_algebra(rng)
    if other.dim > 3:
        other = triangular_algebra(rng)
    return direct_product(field_k().with_delta(None), other)


def cubic_algebra() -> GradedAlgebra:
    """K[x]/(x³) with x in degree 1."""
    return build_algebra(
        'kx3odd',
        [('1', 0), ('x', 1), ('x2', 2)],
        {
            ('1', '1'): {'1': 1},
            ('1', 'x'): {'x': 1},
            ('x', '1'): {'x': 1},
            ('1', 'x2'): {'x2': 1},
            ('x2', '1'): {'x2': 1},
            ('x', 'x'): {'x2': 1},
        },
        unit={'1': 1},
    )


def uvw_algebra() -> GradedAlgebra:
    return uvw().with_delta(None)


def random_operator(alg: GradedAlgebra, rng: np.random.Generator, config: Dict) -> LinearOperator:
    """Degree +1 operator with sparse random integer entries."""
    basis = alg.basis
    images = {}
    for i in range(alg.dim):
        target = basis.indices_of_degree(basis.degree(i) + 1)
        coeffs = {k: _coefficient(rng, config['coefficient_range'])
                  for k in target if rng.random() < config['density']}
        if coeffs:
            images[i] = Element(basis, coeffs)
    return LinearOperator(basis, 1, images)


def square_zero_operator(alg: GradedAlgebra, rng: np.random.Generator, config: Dict) -> LinearOperator:
    """
    Random degree +1 operator with Δ² = 0.

    Over three degrees d, d+1, d+2 only Δ² on degree d can be nonzero, so
    the images of either degree d or degree d+1 are cleared.
    """
    delta = random_operator(alg, rng, config)
    if compose(delta, delta).is_zero():
        return delta
    low = min(alg.basis.degrees)
    cleared = low if rng.random() < 0.5 else low + 1
    images = {i: v for i, v in delta.images.items() if alg.basis.degree(i) != cleared}
    return LinearOperator(alg.basis, 1, images)


def _draw_algebra(rng: np.random.Generator, config: Dict) -> Tuple[str, GradedAlgebra]:
    while True:
        family = SQUARE_ZERO_FAMILIES[int(rng.integers(0, len(SQUARE_ZERO_FAMILIES)))]
        if family == 'sparse':
            alg = sparse_algebra(rng, config)
            if alg is None:
                continue
        elif family == 'truncated':
            alg = truncated_algebra(rng)
        elif family == 'triangular':
            alg = triangular_algebra(rng)
        elif family == 'spread':
            alg = cubic_algebra() if rng.random() < 0.5 else uvw_algebra()
        else:
            alg = product_algebra(rng)
        if alg.dim <= config['max_dim']:
            return family, alg


def square_zero_instances(seed: int, count: Optional[int] = None, config: Optional[Dict] = None) -> List[RandomInstance]:
    """
    Seeded (algebra, square-zero Δ) pairs.

    Raises:
        ValueError: If a drawn operator is not square-zero (the families
            guarantee it, so this signals a generator bug)
    """
    config = merge_config(DEFAULT_RANDOM_CONFIG, config or {})
    count = config['instances'] if count is None else count
    rng = np.random.default_rng(seed)
    instances = []
    for index in range(count):
        family, alg = _draw_algebra(rng, config)
        delta = square_zero_operator(alg, rng, config)
        if not compose(delta, delta).is_zero():
            raise ValueError(f"{family} instance {index} drew a non-square-zero operator")
        instances.append(RandomInstance(alg.with_delta(delta), family, seed, index))
    logger.debug("drew %d square-zero instances with seed %d", count, seed)
    return instances


def operator_instances(seed: int, count: Optional[int] = None, config: Optional[Dict] = None) -> List[RandomInstance]:
    """Seeded (algebra, degree +1 operator) pairs over three degrees; Δ² is usually nonzero."""
    config = merge_config(DEFAULT_RANDOM_CONFIG, config or {})
    count = config['instances'] if count is None else count
    rng = np.random.default_rng(seed)
    instances = []
    for index in range(count):
        family = OPERATOR_FAMILIES[int(rng.integers(0, len(OPERATOR_FAMILIES)))]
        alg = cubic_algebra() if family == 'cubic' else uvw_algebra()
        instances.append(RandomInstance(alg.with_delta(random_operator(alg, rng, config)), family, seed, index))
    return instances
