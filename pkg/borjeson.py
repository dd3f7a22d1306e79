"""
A∞-operations measuring how far a degree +1 operator is from a derivation.

Given a graded associative algebra A and an operator Δ of degree +1, the
operations m_n built here form an A∞-structure on A[1] when Δ² = 0; when
Δ² ≠ 0 their Stasheff defect equals the operations built from Δ². This
module builds the operations, verifies the identities, computes associative
order, checks compatibility with the product and computes the operations
induced on Δ-cohomology.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence

from core.algebra import (
    GradedAlgebra, ValidationReport, product_op,
)
from core.cohomology import Contraction, delta_contraction
from core.errors import AlgebraError, DegreeError, OrderError, SquareZeroError, StasheffError
from core.graded import (
    Element, GradedBasis, Index, LinearOperator, MultiOp, compose, require_same_basis,
)
from core.signs import apply_tensor_slot, koszul_sign
from core.tensor import TensorElement, apply_coderivation, tensor_of

logger = logging.getLogger(__name__)

COHOMOLOGICAL = 'cohomological'
HOMOLOGICAL = 'homological'


# =============================================================================
# Structures
# =============================================================================

@dataclass
class AInfStructure:
    """
    Family {m_n : n = 1..n_max} of operations on one graded space.

    Attributes:
        basis: The graded space
        ops: Arity -> operation; arity 1 is always present
        mode: 'cohomological' (every op of degree +1) or 'homological' (−1)
        ledger: Verified properties and recorded conventions
    """
    basis: GradedBasis
    ops: Dict[int, MultiOp]
    mode: str = COHOMOLOGICAL
    ledger: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in (COHOMOLOGICAL, HOMOLOGICAL):
            raise ValueError(f"Unknown mode '{self.mode}'")
        if 1 not in self.ops:
            raise ValueError("An A∞-structure needs its arity-1 operation")
        expected = self.op_degree
        for arity, op in self.ops.items():
            require_same_basis(self.basis, op.basis, f"structure and m{arity}")
            if op.arity != arity:
                raise ValueError(f"Operation stored at arity {arity} has arity {op.arity}")
            if op.degree != expected:
                raise DegreeError(f"m{arity} has degree {op.degree}, {self.mode} mode needs {expected}")

    @property
    def op_degree(self) -> int:
        return 1 if self.mode == COHOMOLOGICAL else -1

    @property
    def n_max(self) -> int:
        return max(self.ops)

    def op(self, n: int) -> MultiOp:
        try:
            return self.ops[n]
        except KeyError:
            raise ValueError(f"Structure has no operation of arity {n} (n_max = {self.n_max})") from None

    def record(self, key: str, value):
        self.ledger[key] = str(value)


@dataclass
class OrderResult:
    """
    Associative order of an operator.

    Attributes:
        order: Least n with m_{n+1} ≡ 0, or None when it exceeds the cap
        cap: Largest order searched
        witness: Human-readable evidence (zero table confirmed, or a
            nonzero entry of m_{cap+1})
        zero_arities: Arities up to cap+1 whose tables were found zero
        monotone: Whether every arity above the first zero one is also zero
    """
    order: Optional[int]
    cap: int
    witness: str
    zero_arities: List[int] = field(default_factory=list)
    monotone: bool = True

    @property
    def exceeds_cap(self) -> bool:
        return self.order is None

    def describe(self) -> str:
        if self.exceeds_cap:
            return f"order>{self.cap}"
        return f"order={self.order}"


# =============================================================================
# Construction
# =============================================================================

def m_delta_entry(alg: GradedAlgebra, delta: LinearOperator, idx: Sequence[int]) -> Element:
    """
    m_{Δ,n} on a tuple of basis vectors.

    n = 1: Δ(a₁); n = 2: Δ(a₁a₂) − Δ(a₁)a₂ − ±a₁Δ(a₂);
    n ≥ 3: Δ(a₁⋯aₙ) − Δ(a₁⋯aₙ₋₁)aₙ − ±a₁Δ(a₂⋯aₙ) + ±a₁Δ(a₂⋯aₙ₋₁)aₙ,
    with ± the Koszul sign of Δ passing a₁.
    """
    idx = tuple(idx)
    n = len(idx)
    first = Element.basis_vector(alg.basis, idx[0])
    if n == 1:
        return delta(first)

    last = Element.basis_vector(alg.basis, idx[-1])
    sign = koszul_sign(delta.degree, [alg.basis.degree(idx[0])])

    result = delta(alg.gamma_indices(idx))
    result = result - alg.multiply(delta(alg.gamma_indices(idx[:-1])), last)
    result = result - alg.multiply(first, delta(alg.gamma_indices(idx[1:]))).scale(sign)
    if n >= 3:
        inner = delta(alg.gamma_indices(idx[1:-1]))
        result = result + alg.multiply(alg.multiply(first, inner), last).scale(sign)
    return result


def construct_m(alg: GradedAlgebra, delta: LinearOperator, n: int,
                expected_degree: int = 1) -> MultiOp:
    """
    The operation m_{Δ,n}, tabulated lazily.

    Args:
        alg: Graded associative algebra
        delta: Operator whose failure to be a derivation is measured
        n: Arity
        expected_degree: Required degree of ``delta`` (2 when passing Δ²)

    Raises:
        DegreeError: If delta does not have the expected degree
    """
    if n < 1:
        raise ValueError(f"Arity must be positive, got {n}")
    require_same_basis(alg.basis, delta.basis, 'algebra and delta')
    delta.require_degree(expected_degree, 'delta')
    return MultiOp.from_rule(n, delta.degree, alg.basis, lambda idx: m_delta_entry(alg, delta, idx))


def construct_structure(alg: GradedAlgebra, delta: LinearOperator, n_max: int,
                        expected_degree: int = 1) -> AInfStructure:
    """All m_{Δ,n} for n ≤ n_max, packaged as a structure."""
    ops = {n: construct_m(alg, delta, n, expected_degree) for n in range(1, n_max + 1)}
    mode = COHOMOLOGICAL if delta.degree == 1 else HOMOLOGICAL
    s = AInfStructure(alg.basis, ops, mode)
    s.record('n_max', n_max)
    s.record('mode', mode)
    return s


def derivation_defect(alg: GradedAlgebra, delta: LinearOperator) -> MultiOp:
    """m_{Δ,2}; zero exactly when Δ is a derivation."""
    return construct_m(alg, delta, 2)


# =============================================================================
# Stasheff identities
# =============================================================================

def stasheff_value(s: AInfStructure, idx: Sequence[int]) -> Element:
    """Σ m_{i+1+j}(id^⊗i ⊗ m_k ⊗ id^⊗j) on one basis tuple."""
    n = len(idx)
    args = [Element.basis_vector(s.basis, i) for i in idx]
    total = Element.zero(s.basis)
    for k in range(1, n + 1):
        inner = s.op(k)
        outer = s.op(n - k + 1)
        for slot in range(n - k + 1):
            total = total + outer.evaluate(apply_tensor_slot(n - k + 1, slot, inner, args))
    return total


def stasheff_defect(s: AInfStructure, n: int) -> MultiOp:
    """
    The arity-n Stasheff sum as an operation; zero iff the identity holds.

    Raises:
        ValueError: If an operation of arity ≤ n is missing
    """
    for k in range(1, n + 1):
        s.op(k)
    return MultiOp.from_rule(n, 2 * s.op_degree, s.basis, lambda idx: stasheff_value(s, idx))


def stasheff_report(s: AInfStructure, n: int, tuples: Optional[Iterable[Index]] = None) -> ValidationReport:
    """Stasheff identity at arity n on every (or the given) basis tuple."""
    report = ValidationReport()
    defect = stasheff_defect(s, n)
    candidates = defect.index_space() if tuples is None else tuples
    for idx in candidates:
        report.checked += 1
        value = defect.entry(idx)
        if not value.is_zero():
            report.add('stasheff', [s.basis.names[i] for i in idx], f"n={n} defect {value.format()}")
            break
    return report


def assoc_vs_delta_squared(alg: GradedAlgebra, delta: LinearOperator, n: int) -> MultiOp:
    """
    assoc_{m_Δ,n} − m_{Δ²,n}; the zero operation certifies the identity at arity n.
    """
    s = construct_structure(alg, delta, n)
    square = construct_m(alg, compose(delta, delta), n, expected_degree=2 * delta.degree)
    defect = stasheff_defect(s, n)
    return MultiOp.from_rule(n, 2 * delta.degree, alg.basis,
                             lambda idx: defect.entry(idx) - square.entry(idx))


def _require_square_zero(delta: LinearOperator, what: str):
    if not compose(delta, delta).is_zero():
        raise SquareZeroError(f"{what} requires Δ² = 0")


# =============================================================================
# Associative order
# =============================================================================

def associative_order(alg: GradedAlgebra, delta: LinearOperator, cap: int) -> OrderResult:
    """
    Least n ≤ cap with m_{n+1} ≡ 0.

    Every arity from the first vanishing one up to cap+1 is also checked, so
    the result records whether vanishing propagated upward.

    Raises:
        SquareZeroError: If Δ² ≠ 0
    """
    _require_square_zero(delta, 'associative_order')

    order = None
    zero_arities = []
    monotone = True
    witness = ''
    for arity in range(1, cap + 2):
        first = construct_m(alg, delta, arity).first_nonzero()
        if first is None:
            zero_arities.append(arity)
            if order is None:
                order = arity - 1
                witness = f"m{arity}=0"
        else:
            if order is not None:
                monotone = False
                idx, value = first
                witness = f"m{arity}{alg.basis.format_index(idx)}={value.format()} after m{order + 1}=0"
            elif arity == cap + 1:
                idx, value = first
                witness = f"m{arity}{alg.basis.format_index(idx)}={value.format()}"

    logger.debug("associative order of %s: %s", alg.name, order)
    return OrderResult(order, cap, witness, zero_arities, monotone)


# =============================================================================
# Compatibility with the product
# =============================================================================

def compat_check(alg: GradedAlgebra, delta: LinearOperator,
                 triples: Optional[Iterable[Index]] = None) -> ValidationReport:
    """
    γ₂(id, m₂) = m₂(γ₂, id) and γ₂(m₂, id) = m₂(id, γ₂) on basis triples.

    Args:
        triples: Restrict to these triples (default: all basis triples)

    Raises:
        OrderError: If m₃ does not vanish on the checked triples
    """
    m2 = construct_m(alg, delta, 2)
    m3 = construct_m(alg, delta, 3)
    gamma2 = product_op(alg)
    triples = list(product(range(alg.dim), repeat=3) if triples is None else triples)

    for idx in triples:
        value = m3.entry(idx)
        if not value.is_zero():
            raise OrderError(
                f"compat_check needs associative order ≤ 2, but m3{alg.basis.format_index(idx)} = {value.format()}"
            )

    report = ValidationReport()
    for idx in triples:
        args = [Element.basis_vector(alg.basis, i) for i in idx]
        witness = [alg.basis.names[i] for i in idx]

        lhs = gamma2.evaluate(apply_tensor_slot(2, 1, m2, args))
        rhs = m2.evaluate(apply_tensor_slot(2, 0, gamma2, args))
        report.checked += 1
        if lhs != rhs:
            report.add('compat_left', witness, f"γ2(id,m2)={lhs.format()} but m2(γ2,id)={rhs.format()}")

        lhs = gamma2.evaluate(apply_tensor_slot(2, 0, m2, args))
        rhs = m2.evaluate(apply_tensor_slot(2, 1, gamma2, args))
        report.checked += 1
        if lhs != rhs:
            report.add('compat_right', witness, f"γ2(m2,id)={lhs.format()} but m2(id,γ2)={rhs.format()}")

    return report


# =============================================================================
# Odd actions
# =============================================================================

def left_multiplication(alg: GradedAlgebra, xi: Element) -> LinearOperator:
    """L_ξ(a) = ξ·a."""
    require_same_basis(alg.basis, xi.basis, 'algebra and ξ')
    images = {i: alg.multiply(xi, Element.basis_vector(alg.basis, i)) for i in range(alg.dim)}
    return LinearOperator(alg.basis, xi.degree(), images)


def strict_associativity_defect(m2: MultiOp) -> MultiOp:
    """m₂(m₂ ⊗ id) + m₂(id ⊗ m₂), Koszul signs included."""
    def rule(idx: Index) -> Element:
        args = [Element.basis_vector(m2.basis, i) for i in idx]
        return (m2.evaluate(apply_tensor_slot(2, 0, m2, args))
                + m2.evaluate(apply_tensor_slot(2, 1, m2, args)))

    return MultiOp.from_rule(3, 2 * m2.degree, m2.basis, rule)


def left_action_structure(alg: GradedAlgebra, action: LinearOperator, n_max: int = 6) -> AInfStructure:
    """
    Structure from a degree +1 operator satisfying 𝓛(ab) = 𝓛(a)b.

    Raises:
        DegreeError: If the action is not of degree +1
        AlgebraError: If the left-linearity law fails on a basis pair
        StasheffError: If m₃ fails to vanish or m₂ is not strictly associative
    """
    action.require_degree(1, 'action')
    for i, j in product(range(alg.dim), repeat=2):
        a = Element.basis_vector(alg.basis, i)
        b = Element.basis_vector(alg.basis, j)
        lhs = action(alg.multiply(a, b))
        rhs = alg.multiply(action(a), b)
        if lhs != rhs:
            raise AlgebraError(
                f"Action is not left-linear on ({alg.basis.names[i]},{alg.basis.names[j]}): "
                f"{lhs.format()} != {rhs.format()}"
            )

    s = construct_structure(alg, action, max(n_max, 3))
    nonzero = s.op(3).first_nonzero()
    if nonzero is not None:
        idx, value = nonzero
        raise StasheffError(f"m3{alg.basis.format_index(idx)} = {value.format()} for a left action")
    nonzero = strict_associativity_defect(s.op(2)).first_nonzero()
    if nonzero is not None:
        idx, value = nonzero
        raise StasheffError(f"m2 is not associative on {alg.basis.format_index(idx)}: {value.format()}")

    s.record('left_action', 'strict')
    return s


# =============================================================================
# Cohomology
# =============================================================================

def _tensor_homotopy(contraction: Contraction, t: TensorElement) -> TensorElement:
    """Σ_j id^⊗j ⊗ h ⊗ (ip)^⊗rest with the Koszul sign of h passing the prefix."""
    space = contraction.space
    result = TensorElement.zero(space)
    retracted: Dict[int, Element] = {}
    lowered: Dict[int, Element] = {}
    for word, c in t.coeffs.items():
        degrees = [space.degree(i) for i in word]
        for j in range(len(word)):
            if word[j] not in lowered:
                lowered[word[j]] = contraction.homotopy(Element.basis_vector(space, word[j]))
            middle = lowered[word[j]]
            if middle.is_zero():
                continue
            factors = [Element.basis_vector(space, i) for i in word[:j]] + [middle]
            for i in word[j + 1:]:
                if i not in retracted:
                    retracted[i] = contraction.retract(Element.basis_vector(space, i))
                factors.append(retracted[i])
            sign = koszul_sign(-contraction.delta.degree, degrees[:j])
            result = result + tensor_of(space, factors).scale(c * sign)
    return result


def transferred_on_cohomology(s: AInfStructure, contraction: Contraction, n_max: int) -> Dict[int, MultiOp]:
    """
    Operations on Δ-cohomology obtained by perturbing the contraction.

    m_n^H = p ∘ (length-one part of Σ_k (D'H)^k D') on representatives, where
    D' is the coderivation of the operations of arity ≥ 2 and H the tensor
    extension of the homotopy.
    """
    classes = contraction.cohomology.classes
    space = contraction.space
    higher = {k: op for k, op in s.ops.items() if k >= 2}
    degree = s.op_degree

    def rule(idx: Index) -> Element:
        reps = [contraction.cohomology.representatives[c] for c in idx]
        current = tensor_of(space, reps)
        total = Element.zero(space)
        while not current.is_zero():
            current = apply_coderivation(higher, current)
            total = total + current.letters()
            current = current.drop_length(1)
            if current.is_zero():
                break
            current = _tensor_homotopy(contraction, current)
        return contraction.project(total)

    return {n: MultiOp.from_rule(n, degree, classes, rule) for n in range(1, n_max + 1)}


def naive_projection(s: AInfStructure, contraction: Contraction, n: int) -> MultiOp:
    """Projection of m_n applied to representatives (diagnostic only)."""
    reps = contraction.cohomology.representatives
    return MultiOp.from_rule(
        n, s.op_degree, contraction.cohomology.classes,
        lambda idx: contraction.project(s.op(n).evaluate([reps[c] for c in idx])),
    )


def induced_on_cohomology(alg: GradedAlgebra, delta: LinearOperator, n_max: int) -> Dict[int, MultiOp]:
    """
    Operations induced on Δ-cohomology for arities ≤ n_max.

    Raises:
        SquareZeroError: If Δ² ≠ 0
    """
    _require_square_zero(delta, 'induced_on_cohomology')
    contraction = delta_contraction(alg.with_delta(delta))
    s = construct_structure(alg, delta, n_max)
    return transferred_on_cohomology(s, contraction, n_max)


def triviality_report(induced: Dict[int, MultiOp]) -> ValidationReport:
    """Every nonzero induced entry is a violation."""
    report = ValidationReport()
    for n, op in sorted(induced.items()):
        report.checked += 1
        first = op.first_nonzero()
        if first is not None:
            idx, value = first
            report.add('induced_nonzero', [op.basis.names[i] for i in idx], f"m{n} induces {value.format()}")
    return report
