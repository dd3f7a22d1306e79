"""
Tensor words over a graded basis.

A ``Word`` is a nonempty tuple of basis indices; a ``TensorElement`` is a
sparse rational combination of words with an optional length bound. The
coderivation sum lives here because both the bar complex and homotopy
transfer apply it.
"""

from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from core.errors import TruncationError
from core.graded import Element, GradedBasis, MultiOp, require_same_basis
from core.scalars import format_scalar
from core.signs import koszul_sign


class Word(tuple):
    """Nonempty tuple of basis indices."""

    def __new__(cls, letters: Iterable[int] = ()):
        word = super().__new__(cls, letters)
        if not word:
            raise ValueError("Words must have at least one letter")
        return word

    def degree(self, basis: GradedBasis) -> int:
        return sum(basis.degree(i) for i in self)

    def format(self, basis: GradedBasis) -> str:
        return '|'.join(basis.names[i] for i in self)


class TensorElement:
    """
    Finite combination of words of length ≤ ``max_length``.

    Attributes:
        basis: Letter basis
        coeffs: Word -> nonzero coefficient
        max_length: Truncation bound, or None for unbounded
    """

    __slots__ = ('basis', 'coeffs', 'max_length')

    def __init__(self, basis: GradedBasis, coeffs: Optional[Mapping[Word, Fraction]] = None,
                 max_length: Optional[int] = None):
        self.basis = basis
        self.max_length = max_length
        self.coeffs: Dict[Word, Fraction] = {}
        for word, c in (coeffs or {}).items():
            word = Word(word)
            if max_length is not None and len(word) > max_length:
                raise TruncationError(f"Word of length {len(word)} exceeds bound {max_length}")
            if c:
                self.coeffs[word] = Fraction(c)

    @classmethod
    def zero(cls, basis: GradedBasis, max_length: Optional[int] = None) -> 'TensorElement':
        return cls(basis, {}, max_length)

    @classmethod
    def from_word(cls, basis: GradedBasis, word: Sequence[int], max_length: Optional[int] = None) -> 'TensorElement':
        return cls(basis, {Word(word): Fraction(1)}, max_length)

    def _accumulate(self, word: Word, c: Fraction):
        value = self.coeffs.get(word, 0) + c
        if value:
            self.coeffs[word] = value
        else:
            self.coeffs.pop(word, None)

    def __add__(self, other: 'TensorElement') -> 'TensorElement':
        require_same_basis(self.basis, other.basis, 'tensor elements')
        result = TensorElement(self.basis, self.coeffs, self.max_length)
        for word, c in other.coeffs.items():
            result._accumulate(word, c)
        return result

    def __sub__(self, other: 'TensorElement') -> 'TensorElement':
        return self + other.scale(-1)

    def scale(self, factor) -> 'TensorElement':
        factor = Fraction(factor)
        return TensorElement(self.basis, {w: factor * c for w, c in self.coeffs.items()}, self.max_length)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.basis.same_as(other.basis) and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self) -> List[Tuple[Word, Fraction]]:
        return sorted(self.coeffs.items(), key=lambda item: (len(item[0]), item[0]))

    def length_part(self, length: int) -> 'TensorElement':
        return TensorElement(self.basis, {w: c for w, c in self.coeffs.items() if len(w) == length}, self.max_length)

    def drop_length(self, length: int) -> 'TensorElement':
        return TensorElement(self.basis, {w: c for w, c in self.coeffs.items() if len(w) != length}, self.max_length)

    def letters(self) -> Element:
        """Length-one part as an Element of the letter space."""
        return Element(self.basis, {w[0]: c for w, c in self.coeffs.items() if len(w) == 1})

    def format(self) -> str:
        if not self.coeffs:
            return '0'
        pieces = []
        for position, (word, c) in enumerate(self.items()):
            label = word.format(self.basis)
            magnitude = abs(c)
            term = label if magnitude == 1 else f"{format_scalar(magnitude)}*{label}"
            if position == 0:
                pieces.append(f"-{term}" if c < 0 else term)
            else:
                pieces.append(f"- {term}" if c < 0 else f"+ {term}")
        return ' '.join(pieces)

    def __repr__(self) -> str:
        return f"TensorElement({self.format()})"


def tensor_of(basis: GradedBasis, elements: Sequence[Element], max_length: Optional[int] = None) -> TensorElement:
    """Multilinear expansion of e₁ ⊗ … ⊗ eₙ into words."""
    result = TensorElement.zero(basis, max_length)
    for combo in product(*(e.items() for e in elements)):
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        result._accumulate(Word(i for i, _ in combo), coeff)
    return result


def apply_coderivation(ops: Mapping[int, MultiOp], t: TensorElement,
                       arities: Optional[Iterable[int]] = None) -> TensorElement:
    """
    Σ id^⊗j ⊗ m_i ⊗ id^⊗rest applied to every word of ``t``.

    Only arities in ``arities`` (default: all keys of ``ops``) contribute;
    each term carries koszul_sign(m_i.degree, degrees of the skipped prefix).
    """
    arities = sorted(ops if arities is None else arities)
    basis = t.basis
    result = TensorElement.zero(basis, t.max_length)
    for word, c in t.coeffs.items():
        degrees = [basis.degree(i) for i in word]
        n = len(word)
        for arity in arities:
            op = ops.get(arity)
            if op is None or arity > n:
                continue
            for j in range(n - arity + 1):
                value = op.entry(word[j:j + arity])
                if value.is_zero():
                    continue
                sign = koszul_sign(op.degree, degrees[:j])
                for letter, coeff in value.coeffs.items():
                    result._accumulate(Word(word[:j] + (letter,) + word[j + arity:]), c * sign * coeff)
    return result
