"""
Koszul sign engine.

``koszul_sign`` is the only place a Koszul sign is computed; everything that
moves an operation past graded arguments goes through it.
"""

from fractions import Fraction
from itertools import product
from typing import List, Sequence

from core.errors import InhomogeneousError
from core.graded import Element, MultiOp

PLUS = Fraction(1)
MINUS = Fraction(-1)


def koszul_sign(op_degree: int, passed_degrees: Sequence[int]) -> Fraction:
    """(−1)^(op_degree · Σ passed_degrees)."""
    return MINUS if (op_degree * sum(passed_degrees)) % 2 else PLUS


def apply_tensor_slot(outer_arity: int, slot: int, inner: MultiOp,
                      args: Sequence[Element]) -> List[Element]:
    """
    Evaluate id^⊗slot ⊗ inner ⊗ id^⊗rest on homogeneous arguments.

    Returns the ``outer_arity`` arguments for the outer operation; the inner
    result carries the Koszul sign of ``inner`` passing ``args[:slot]``.

    Raises:
        InhomogeneousError: If a nonzero argument is not homogeneous
    """
    expected = outer_arity - 1 + inner.arity
    if len(args) != expected:
        raise ValueError(f"Expected {expected} arguments, got {len(args)}")
    if not 0 <= slot <= outer_arity - 1:
        raise ValueError(f"Slot {slot} outside arity {outer_arity}")

    block = args[slot:slot + inner.arity]
    prefix = args[:slot]
    suffix = args[slot + inner.arity:]

    if any(a.is_zero() for a in args):
        return list(prefix) + [Element.zero(inner.basis)] + list(suffix)

    for a in args:
        if not a.is_homogeneous():
            raise InhomogeneousError(f"Argument {a.format()} is not homogeneous")

    sign = koszul_sign(inner.degree, [a.degree() for a in prefix])
    return list(prefix) + [inner.evaluate(block).scale(sign)] + list(suffix)


def compose_in_slot(outer: MultiOp, slot: int, inner: MultiOp,
                    args: Sequence[Element]) -> Element:
    """
    outer ∘ (id^⊗slot ⊗ inner ⊗ id^⊗rest) on arbitrary arguments.

    Inhomogeneous arguments are split into homogeneous parts and the results
    summed, by multilinearity.
    """
    parts = [list(a.homogeneous_parts().values()) for a in args]
    total = Element.zero(outer.basis)
    for choice in product(*parts):
        total = total + outer.evaluate(apply_tensor_slot(outer.arity, slot, inner, choice))
    return total

