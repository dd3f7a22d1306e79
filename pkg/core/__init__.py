"""
Graded linear algebra kernel.

Exact rational scalars, graded bases and elements, operators, structure
constant algebras, the Koszul sign engine, sparse exact elimination,
Δ-cohomology and tensor words.
"""

from core.errors import (
    AlgebraError, AlgebraFileError, BasisMismatchError, ConventionError,
    DegreeError, FrobeniusError, InhomogeneousError, OrderError,
    SquareZeroError, StasheffError, TruncationError,
)
from core.scalars import Scalar, format_scalar, parse_scalar, to_scalar
from core.graded import (
    Element, GradedBasis, LinearOperator, MultiOp, RuleTable,
    apply_operator, compose, identity_op,
)
from core.signs import apply_tensor_slot, compose_in_slot, koszul_sign
from core.algebra import (
    GradedAlgebra, ValidationReport, Violation, change_basis, direct_product,
    gamma_n, product_op, validate_algebra,
)
from core.cohomology import (
    CohomologyBasis, Contraction, delta_cohomology, delta_contraction,
)
from core.tensor import TensorElement, Word, apply_coderivation, tensor_of

__all__ = [
    'AlgebraError', 'AlgebraFileError', 'BasisMismatchError', 'ConventionError',
    'DegreeError', 'FrobeniusError', 'InhomogeneousError', 'OrderError',
    'SquareZeroError', 'StasheffError', 'TruncationError',
    'Scalar', 'format_scalar', 'parse_scalar', 'to_scalar',
    'Element', 'GradedBasis', 'LinearOperator', 'MultiOp', 'RuleTable',
    'apply_operator', 'compose', 'identity_op',
    'apply_tensor_slot', 'compose_in_slot', 'koszul_sign',
    'GradedAlgebra', 'ValidationReport', 'Violation', 'change_basis',
    'direct_product', 'gamma_n', 'product_op', 'validate_algebra',
    'CohomologyBasis', 'Contraction', 'delta_cohomology', 'delta_contraction',
    'TensorElement', 'Word', 'apply_coderivation', 'tensor_of',
]
