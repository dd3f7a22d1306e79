"""
Graded associative algebras given by structure constants.

An algebra carries an optional unit, an optional degree +1 operator Δ and an
optional bilinear pairing. ``validate_algebra`` reports every violated axiom
as data; nothing here raises on malformed structure constants.
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from core.errors import BasisMismatchError, DegreeError
from core.graded import (
    Element, GradedBasis, Index, LinearOperator, MultiOp, add_scaled_into,
    compose, element_from_dict, require_same_basis,
)
from core.linalg import invert

logger = logging.getLogger(__name__)


# =============================================================================
# Validation reports
# =============================================================================

@dataclass
class Violation:
    """
    One failed check.

    Attributes:
        kind: Short machine name ('associativity', 'grading', ...)
        witness: Basis names (or word/cochain labels) of the offending tuple
        detail: Human-readable description, usually the nonzero defect
    """
    kind: str
    witness: Tuple[str, ...]
    detail: str

    def format(self) -> str:
        return f"{self.kind} ({','.join(self.witness)}) {self.detail}"


@dataclass
class ValidationReport:
    """
    Ordered list of violations plus a ledger of recorded conventions.

    An empty violation list means every check passed.
    """
    violations: List[Violation] = field(default_factory=list)
    ledger: Dict[str, str] = field(default_factory=dict)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, witness: Sequence[str], detail: str):
        self.violations.append(Violation(kind, tuple(witness), detail))

    def extend(self, other: 'ValidationReport'):
        self.violations.extend(other.violations)
        self.ledger.update(other.ledger)
        self.checked += other.checked

    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def to_lines(self) -> List[str]:
        return [v.format() for v in self.violations]


# =============================================================================
# Algebra
# =============================================================================

@dataclass
class GradedAlgebra:
    """
    Finite-dimensional graded algebra tabulated by structure constants.

    Attributes:
        name: Label used in reports
        basis: Graded basis
        product: (i, j) -> e_i·e_j; absent pairs are zero. May be lazy.
        unit: Optional unit element
        delta: Optional degree +1 operator Δ
        pairing: Optional bilinear form (i, j) -> scalar; absent pairs are zero
    """
    name: str
    basis: GradedBasis
    product: Mapping[Tuple[int, int], Element] = field(default_factory=dict)
    unit: Optional[Element] = None
    delta: Optional[LinearOperator] = None
    pairing: Optional[Dict[Tuple[int, int], Fraction]] = None
    _gamma_cache: Dict[Index, Element] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.product, dict):
            self.product = {k: v for k, v in self.product.items() if not v.is_zero()}
        if self.delta is not None:
            require_same_basis(self.basis, self.delta.basis, 'algebra and delta')
        if self.unit is not None:
            require_same_basis(self.basis, self.unit.basis, 'algebra and unit')

    @property
    def dim(self) -> int:
        return len(self.basis)

    def product_entry(self, i: int, j: int) -> Element:
        value = self.product.get((i, j))
        return value if value is not None else Element.zero(self.basis)

    def multiply(self, a: Element, b: Element) -> Element:
        """Bilinear extension of the structure constants."""
        require_same_basis(self.basis, a.basis, 'algebra and left factor')
        require_same_basis(self.basis, b.basis, 'algebra and right factor')
        acc: Dict[int, Fraction] = {}
        for i, x in a.coeffs.items():
            for j, y in b.coeffs.items():
                add_scaled_into(acc, self.product_entry(i, j), x * y)
        return element_from_dict(self.basis, acc)

    def gamma_indices(self, idx: Sequence[int]) -> Element:
        """Iterated product of basis vectors, memoised per tuple."""
        key = tuple(idx)
        cached = self._gamma_cache.get(key)
        if cached is not None:
            return cached
        if len(key) == 1:
            value = Element.basis_vector(self.basis, key[0])
        else:
            value = self.multiply(self.gamma_indices(key[:-1]), Element.basis_vector(self.basis, key[-1]))
        self._gamma_cache[key] = value
        return value

    def pairing_value(self, i: int, j: int) -> Fraction:
        if not self.pairing:
            return Fraction(0)
        return self.pairing.get((i, j), Fraction(0))

    def pair(self, a: Element, b: Element) -> Fraction:
        total = Fraction(0)
        for i, x in a.coeffs.items():
            for j, y in b.coeffs.items():
                total += x * y * self.pairing_value(i, j)
        return total

    def with_delta(self, delta: Optional[LinearOperator]) -> 'GradedAlgebra':
        return replace(self, delta=delta)

    def element(self, terms) -> Element:
        """Shorthand: ``alg.element([('e11', 1), ('e22', 2)])``."""
        return Element.from_terms(self.basis, terms)

    def vector(self, name: str) -> Element:
        return Element.basis_vector(self.basis, self.basis.index(name))


def gamma_n(alg: GradedAlgebra, args: Sequence[Element]) -> Element:
    """
    Left-to-right iterated product γ_n(a₁, …, aₙ); γ₁ is the identity.

    Raises:
        BasisMismatchError: If an argument lives on another basis
    """
    if not args:
        raise ValueError("gamma_n needs at least one argument")
    for a in args:
        if not a.basis.same_as(alg.basis):
            raise BasisMismatchError(f"Argument {a.format()} is not an element of {alg.name}")

    result = args[0]
    for a in args[1:]:
        result = alg.multiply(result, a)
    return result


def product_op(alg: GradedAlgebra) -> MultiOp:
    """γ₂ as a degree-0 binary operation."""
    size = alg.dim
    return MultiOp.from_rule(2, 0, alg.basis, lambda idx: alg.product_entry(*idx),
                             domain=lambda: product(range(size), repeat=2))


# =============================================================================
# Validation
# =============================================================================

def validate_algebra(alg: GradedAlgebra) -> ValidationReport:
    """
    Check grading, associativity, unit laws and (if present) Δ.

    Returns:
        Report listing every violated invariant; empty means valid
    """
    report = ValidationReport()
    basis = alg.basis
    names = basis.names
    n = alg.dim

    # Grading of products
    for i, j in product(range(n), repeat=2):
        value = alg.product_entry(i, j)
        report.checked += 1
        if value.is_zero():
            continue
        target = basis.degree(i) + basis.degree(j)
        wrong = [k for k in value.coeffs if basis.degree(k) != target]
        if wrong:
            report.add('grading', (names[i], names[j]),
                       f"{value.format()} has a component of degree {basis.degree(wrong[0])}, expected {target}")

    # Associativity
    for i, j, k in product(range(n), repeat=3):
        a, b, c = (Element.basis_vector(basis, t) for t in (i, j, k))
        defect = alg.multiply(alg.multiply(a, b), c) - alg.multiply(a, alg.multiply(b, c))
        report.checked += 1
        if not defect.is_zero():
            report.add('associativity', (names[i], names[j], names[k]), f"(ab)c - a(bc) = {defect.format()}")

    # Unit laws
    if alg.unit is not None:
        for i in range(n):
            e = Element.basis_vector(basis, i)
            report.checked += 1
            if alg.multiply(alg.unit, e) != e:
                report.add('unit', (names[i],), f"1·{names[i]} = {alg.multiply(alg.unit, e).format()}")
            if alg.multiply(e, alg.unit) != e:
                report.add('unit', (names[i],), f"{names[i]}·1 = {alg.multiply(e, alg.unit).format()}")

    # Delta
    if alg.delta is not None:
        if alg.delta.degree != 1:
            report.add('delta_degree', (), f"declared degree {alg.delta.degree}, expected 1")
        for i, value in alg.delta.degree_violations():
            report.add('delta_degree', (names[i],), f"Δ({names[i]}) = {value.format()} is not of degree {basis.degree(i) + alg.delta.degree}")
        square = compose(alg.delta, alg.delta)
        for i in range(n):
            report.checked += 1
            value = square.image(i)
            if not value.is_zero():
                report.add('delta_square', (names[i],), f"Δ²({names[i]}) = {value.format()}")

    logger.debug("validated %s: %d checks, %d violations", alg.name, report.checked, len(report))
    return report


# =============================================================================
# Basis changes and products
# =============================================================================

def change_basis(alg: GradedAlgebra, vectors: Sequence[Element],
                 names: Optional[Sequence[str]] = None) -> GradedAlgebra:
    """
    Re-express the algebra in a new basis given by homogeneous elements.

    Structure constants, unit, Δ and pairing are all transported.

    Raises:
        DegreeError: If a new basis vector is inhomogeneous
        ValueError: If the vectors do not form a basis
    """
    if len(vectors) != alg.dim:
        raise ValueError(f"Need {alg.dim} vectors, got {len(vectors)}")
    names = list(names) if names is not None else [v.format() for v in vectors]

    degrees = []
    for v in vectors:
        if v.is_zero() or not v.is_homogeneous():
            raise DegreeError(f"New basis vector {v.format()} is not homogeneous")
        degrees.append(v.degree())
    new_basis = GradedBasis(tuple(names), tuple(degrees))

    columns = [dict(v.coeffs) for v in vectors]
    inverse = invert(columns, alg.dim)

    def to_new(x: Element) -> Element:
        acc: Dict[int, Fraction] = {}
        for i, c in x.coeffs.items():
            for j, value in inverse[i].items():
                total = acc.get(j, 0) + c * value
                if total:
                    acc[j] = total
                else:
                    acc.pop(j, None)
        return Element(new_basis, acc)

    product_table = {}
    for i, j in product(range(alg.dim), repeat=2):
        value = to_new(alg.multiply(vectors[i], vectors[j]))
        if not value.is_zero():
            product_table[(i, j)] = value

    unit = to_new(alg.unit) if alg.unit is not None else None

    delta = None
    if alg.delta is not None:
        delta = LinearOperator(new_basis, alg.delta.degree,
                               {i: to_new(alg.delta(vectors[i])) for i in range(alg.dim)})

    pairing = None
    if alg.pairing is not None:
        pairing = {}
        for i, j in product(range(alg.dim), repeat=2):
            value = alg.pair(vectors[i], vectors[j])
            if value:
                pairing[(i, j)] = value

    return GradedAlgebra(alg.name, new_basis, product_table, unit, delta, pairing)


def direct_product(a: GradedAlgebra, b: GradedAlgebra, name: Optional[str] = None) -> GradedAlgebra:
    """
    Direct product A × B with componentwise multiplication.

    Basis names are prefixed ``a.``/``b.`` only when they would collide.
    Δ, unit and pairing are combined blockwise when both factors have them.
    """
    clash = set(a.basis.names) & set(b.basis.names)
    left = [f"a.{x}" if clash else x for x in a.basis.names]
    right = [f"b.{x}" if clash else x for x in b.basis.names]
    basis = GradedBasis(tuple(left + right), a.basis.degrees + b.basis.degrees)
    offset = a.dim

    def lift(x: Element, shift: int) -> Element:
        return Element(basis, {i + shift: c for i, c in x.coeffs.items()})

    product_table = {}
    for (i, j), value in a.product.items():
        product_table[(i, j)] = lift(value, 0)
    for (i, j), value in b.product.items():
        product_table[(i + offset, j + offset)] = lift(value, offset)

    unit = None
    if a.unit is not None and b.unit is not None:
        unit = lift(a.unit, 0) + lift(b.unit, offset)

    delta = None
    if a.delta is not None or b.delta is not None:
        images = {}
        if a.delta is not None:
            images.update({i: lift(a.delta.image(i), 0) for i in range(a.dim)})
        if b.delta is not None:
            images.update({i + offset: lift(b.delta.image(i), offset) for i in range(b.dim)})
        delta = LinearOperator(basis, 1, images)

    pairing = None
    if a.pairing is not None and b.pairing is not None:
        pairing = dict(a.pairing)
        pairing.update({(i + offset, j + offset): v for (i, j), v in b.pairing.items()})

    return GradedAlgebra(name or f"{a.name}x{b.name}", basis, product_table, unit, delta, pairing)
