"""
Truncated bar construction.

Words of length ≤ L over a shifted space form the reduced tensor algebra;
an A∞-structure on the space extends to a square-zero coderivation, and the
t_k operations on words are the construction of ``borjeson`` applied to
(words, concatenation, coderivation). Nothing here increases total word
length, so checks restricted to total length ≤ L are exact.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple

from borjeson import (
    AInfStructure, compat_check, construct_m,
    stasheff_defect, stasheff_value,
)
from core.algebra import GradedAlgebra, ValidationReport
from core.errors import StasheffError, TruncationError
from core.graded import Element, GradedBasis, LinearOperator, MultiOp, RuleTable
from core.signs import koszul_sign
from core.tensor import TensorElement, Word, apply_coderivation

logger = logging.getLogger(__name__)

DEFAULT_MAX_LENGTH = 4


# =============================================================================
# Inputs
# =============================================================================

@dataclass
class BarInput:
    """
    A∞-structure on a space already in the shifted convention.

    Attributes:
        space: Letter basis (degrees already shifted)
        ops: Structure with every operation of degree +1
        n_max: Arity up to which the Stasheff identities are verified
        max_length: Word-length truncation L
        validate: Verify Stasheff identities up to n_max on construction
    """
    space: GradedBasis
    ops: AInfStructure
    n_max: int = DEFAULT_MAX_LENGTH
    max_length: int = DEFAULT_MAX_LENGTH
    validate: bool = True

    def __post_init__(self):
        if self.ops.op_degree != 1:
            raise ValueError("Bar input needs degree +1 operations")
        if self.validate:
            for n in range(1, min(self.n_max, self.ops.n_max) + 1):
                first = stasheff_defect(self.ops, n).first_nonzero()
                if first is not None:
                    idx, value = first
                    raise StasheffError(
                        f"Stasheff identity fails at arity {n} on {self.space.format_index(idx)}: {value.format()}"
                    )

    def op(self, arity: int) -> MultiOp:
        """Operation of the given arity; arities above the structure are zero."""
        if arity in self.ops.ops:
            return self.ops.ops[arity]
        return MultiOp.zero(arity, 1, self.space)

    def is_strict(self) -> bool:
        return all(op.is_zero() for k, op in self.ops.ops.items() if k >= 3)


def _ops_up_to(space: GradedBasis, ops: Dict[int, MultiOp], n_max: int) -> Dict[int, MultiOp]:
    return {k: ops.get(k, MultiOp.zero(k, 1, space)) for k in range(1, n_max + 1)}


def shift_strict(alg: GradedAlgebra, use_delta: bool = True,
                 n_max: int = DEFAULT_MAX_LENGTH, max_length: int = DEFAULT_MAX_LENGTH) -> BarInput:
    """
    Associative algebra as a strict A∞-structure on A[1].

    m₂(x, y) = (−1)^{|x|} γ₂(x, y) in shifted degrees; m₁ is the shifted Δ
    when requested and present.

    Raises:
        StasheffError: If the arity-2 or arity-3 identity fails (for example
            when Δ is not a square-zero derivation)
    """
    space = alg.basis.shifted(-1)

    products = {}
    for i, j in product(range(alg.dim), repeat=2):
        value = alg.product_entry(i, j)
        if not value.is_zero():
            sign = koszul_sign(1, [space.degree(i)])
            products[(i, j)] = Element(space, value.coeffs).scale(sign)

    images = {}
    if use_delta and alg.delta is not None:
        images = {i: Element(space, alg.delta.image(i).coeffs) for i in range(alg.dim)}

    ops = {1: MultiOp(1, 1, space, {(i,): v for i, v in images.items()}),
           2: MultiOp(2, 1, space, products)}
    s = AInfStructure(space, _ops_up_to(space, ops, max(n_max, 3)))
    s.record('shift', 'm2(x,y)=(-1)^|x|xy')

    for n in (2, 3):
        first = stasheff_defect(s, n).first_nonzero()
        if first is not None:
            idx, value = first
            raise StasheffError(
                f"Shifted structure of {alg.name} fails the arity-{n} identity on "
                f"{space.format_index(idx)}: {value.format()}"
            )

    return BarInput(space, s, n_max=n_max, max_length=max_length)


def m3_fixture(max_length: int = DEFAULT_MAX_LENGTH) -> BarInput:
    """x:0, y:1 with m₃(x,x,x) = y and every other operation zero."""
    space = GradedBasis(('x', 'y'), (0, 1))
    m3 = MultiOp(3, 1, space, {(0, 0, 0): Element.basis_vector(space, 1)})
    s = AInfStructure(space, _ops_up_to(space, {3: m3}, 5))
    return BarInput(space, s, n_max=5, max_length=max_length)


def broken_bar_input(max_length: int = DEFAULT_MAX_LENGTH) -> BarInput:
    """
    x:0, y:1, z:2 with m₁(y) = z and m₂(x,x) = y added on top.

    m₁ alone is a valid structure; the added m₂ entry makes the arity-2
    identity fail on (x,x) with defect z. Spaces in two adjacent degrees
    cannot be broken this way, since every composite lands two degrees up.
    """
    space = GradedBasis(('x', 'y', 'z'), (0, 1, 2))
    m1 = MultiOp(1, 1, space, {(1,): Element.basis_vector(space, 2)})
    m2 = MultiOp(2, 1, space, {(0, 0): Element.basis_vector(space, 1)})
    broken = AInfStructure(space, _ops_up_to(space, {1: m1, 2: m2}, max_length))
    broken.record('perturbed', 'm2(x,x)+=y')
    return BarInput(space, broken, n_max=max_length, max_length=max_length, validate=False)


# =============================================================================
# Words
# =============================================================================

def words_up_to(space: GradedBasis, max_length: int) -> List[Word]:
    """All words of length 1..max_length, shorter first, lexicographic within a length."""
    words = []
    for length in range(1, max_length + 1):
        words.extend(Word(w) for w in product(range(len(space)), repeat=length))
    return words


def word_tuples(words: Sequence[Word], k: int, max_length: int) -> Iterator[Tuple[Word, ...]]:
    """k-tuples of words whose total length is at most max_length."""
    if k == 0:
        yield ()
        return
    for word in words:
        if len(word) + (k - 1) > max_length:
            continue
        for rest in word_tuples(words, k - 1, max_length - len(word)):
            yield (word,) + rest


def word_coproduct(word: Sequence[int]) -> List[Tuple[Word, Word]]:
    """Reduced coproduct: every split into two nonempty words."""
    return [(Word(word[:i]), Word(word[i:])) for i in range(1, len(word))]


@dataclass
class WordSpace:
    """
    Words of length ≤ L as a graded basis with a concatenation algebra.

    Attributes:
        space: Letter basis
        max_length: Truncation L
        words: All words, in basis order
        basis: Graded basis whose vectors are the words
        algebra: Concatenation algebra (products longer than L are zero)
    """
    space: GradedBasis
    max_length: int
    words: List[Word] = field(init=False)
    basis: GradedBasis = field(init=False)
    algebra: GradedAlgebra = field(init=False)
    _index: Dict[Word, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.words = words_up_to(self.space, self.max_length)
        self._index = {w: k for k, w in enumerate(self.words)}
        self.basis = GradedBasis(tuple(w.format(self.space) for w in self.words),
                                 tuple(w.degree(self.space) for w in self.words))
        size = len(self.words)
        self.algebra = GradedAlgebra(
            f"T<={self.max_length}",
            self.basis,
            RuleTable(self._concatenate, lambda: product(range(size), repeat=2)),
        )

    def index(self, word: Sequence[int]) -> int:
        return self._index[Word(word)]

    def _concatenate(self, idx) -> Element:
        joined = self.words[idx[0]] + self.words[idx[1]]
        if len(joined) > self.max_length:
            return Element.zero(self.basis)
        return Element.basis_vector(self.basis, self._index[Word(joined)])

    def to_element(self, t: TensorElement) -> Element:
        return Element(self.basis, {self._index[w]: c for w, c in t.coeffs.items()})

    def to_tensor(self, x: Element) -> TensorElement:
        return TensorElement(self.space, {self.words[i]: c for i, c in x.coeffs.items()}, self.max_length)


def word_algebra(space: GradedBasis, max_length: int) -> GradedAlgebra:
    """Concatenation algebra of words of length ≤ max_length."""
    return WordSpace(space, max_length).algebra


# =============================================================================
# Coderivation
# =============================================================================

def bar_coderivation(inp: BarInput, t: TensorElement) -> TensorElement:
    """
    Σ id^⊗j ⊗ m_i ⊗ id^⊗rest on every word of t.

    Raises:
        TruncationError: If t holds a word longer than the input's bound
    """
    for word in t.coeffs:
        if len(word) > inp.max_length:
            raise TruncationError(f"Word of length {len(word)} exceeds bound {inp.max_length}")
    arities = range(1, inp.max_length + 1)
    ops = {k: inp.op(k) for k in arities}
    return apply_coderivation(ops, t, arities)


def bar_delta_operator(inp: BarInput, words: WordSpace) -> LinearOperator:
    """The coderivation as a degree +1 operator on the word basis."""
    images = {}
    for k, word in enumerate(words.words):
        image = bar_coderivation(inp, TensorElement.from_word(inp.space, word, words.max_length))
        images[k] = words.to_element(image)
    return LinearOperator(words.basis, 1, images)


def bar_square_report(inp: BarInput, max_length: int) -> ValidationReport:
    """D∘D on every word of length ≤ max_length."""
    report = ValidationReport()
    for word in words_up_to(inp.space, max_length):
        once = bar_coderivation(inp, TensorElement.from_word(inp.space, word, max_length))
        twice = bar_coderivation(inp, once)
        report.checked += 1
        if not twice.is_zero():
            report.add('bar_square', [word.format(inp.space)], f"D²={twice.format()}")
    return report


# =============================================================================
# t_k operations
# =============================================================================

def t_op(inp: BarInput, k: int, factors: Sequence[Sequence[int]]) -> TensorElement:
    """
    t_k on k words.

    t₁ is the coderivation. For k ≥ 2 a single contiguous block is contracted
    by m_{|block|}; the block starts inside the first word, ends inside the
    last word and swallows every middle word, with the sign of the operation
    passing the untouched prefix of the first word.

    Raises:
        TruncationError: If the total letter count exceeds the bound
    """
    if len(factors) != k:
        raise ValueError(f"t_{k} needs {k} words, got {len(factors)}")
    factors = [Word(f) for f in factors]
    total = sum(len(f) for f in factors)
    if total > inp.max_length:
        raise TruncationError(f"Total length {total} exceeds bound {inp.max_length}")

    if k == 1:
        return bar_coderivation(inp, TensorElement.from_word(inp.space, factors[0], inp.max_length))

    first, last = factors[0], factors[-1]
    middle = tuple(letter for f in factors[1:-1] for letter in f)
    result = TensorElement.zero(inp.space, inp.max_length)
    for i in range(len(first)):
        prefix = first[:i]
        sign_degrees = [inp.space.degree(x) for x in prefix]
        for j in range(len(last)):
            block = first[i:] + middle + last[:len(last) - j]
            suffix = last[len(last) - j:]
            op = inp.op(len(block))
            value = op.entry(block)
            if value.is_zero():
                continue
            sign = koszul_sign(op.degree, sign_degrees)
            for letter, coeff in value.coeffs.items():
                result._accumulate(Word(prefix + (letter,) + suffix), sign * coeff)
    return result


def _t_ops(inp: BarInput, words: WordSpace, k_max: int) -> AInfStructure:
    """{t_k} as lazily tabulated operations on the word basis."""
    def make(k):
        def rule(idx):
            if sum(len(words.words[i]) for i in idx) > inp.max_length:
                return Element.zero(words.basis)
            return words.to_element(t_op(inp, k, [words.words[i] for i in idx]))
        return MultiOp.from_rule(k, 1, words.basis, rule)

    return AInfStructure(words.basis, {k: make(k) for k in range(1, k_max + 1)})


def tk_equals_construction(inp: BarInput, max_length: int, k_max: int) -> ValidationReport:
    """
    t_k against m_{D,k} of (words, concatenation, D) on every k-tuple of
    words with total length ≤ max_length, for k ≤ k_max.
    """
    words = WordSpace(inp.space, min(max_length, inp.max_length))
    delta = bar_delta_operator(inp, words)
    report = ValidationReport()
    for k in range(1, k_max + 1):
        m_k = construct_m(words.algebra, delta, k)
        for factors in word_tuples(words.words, k, words.max_length):
            idx = tuple(words.index(f) for f in factors)
            expected = m_k.entry(idx)
            actual = words.to_element(t_op(inp, k, factors))
            report.checked += 1
            if expected != actual:
                report.add('tk_mismatch', [f.format(inp.space) for f in factors],
                           f"t{k}={actual.format()} but m{k}={expected.format()}")
    logger.debug("tk_equals_construction: %d tuples", report.checked)
    return report


def t_stasheff_report(inp: BarInput, max_length: int, k_max: int = 3) -> ValidationReport:
    """Stasheff identities of {t_k} at arities ≤ k_max on word tuples of total length ≤ max_length."""
    words = WordSpace(inp.space, min(max_length, inp.max_length))
    s = _t_ops(inp, words, k_max)
    report = ValidationReport()
    for n in range(1, k_max + 1):
        for factors in word_tuples(words.words, n, words.max_length):
            idx = tuple(words.index(f) for f in factors)
            value = stasheff_value(s, idx)
            report.checked += 1
            if not value.is_zero():
                report.add('t_stasheff', [f.format(inp.space) for f in factors], f"n={n} defect {value.format()}")
    return report


def strict_collapse_report(inp: BarInput, max_length: int) -> ValidationReport:
    """
    For strict inputs: t_k = 0 for k ≥ 3, t₂ contracts only the two letters
    at the seam, and t₂ is compatible with concatenation.

    Raises:
        ValueError: If the input has a nonzero operation of arity ≥ 3
    """
    if not inp.is_strict():
        raise ValueError("strict_collapse_report needs m_k = 0 for k ≥ 3")
    words = WordSpace(inp.space, min(max_length, inp.max_length))
    report = ValidationReport()
    m2 = inp.op(2)

    for factors in word_tuples(words.words, 2, words.max_length):
        v, w = factors
        expected = TensorElement.zero(inp.space, words.max_length)
        value = m2.entry((v[-1], w[0]))
        sign = koszul_sign(1, [inp.space.degree(x) for x in v[:-1]])
        for letter, coeff in value.coeffs.items():
            expected._accumulate(Word(v[:-1] + (letter,) + w[1:]), sign * coeff)
        actual = t_op(inp, 2, factors)
        report.checked += 1
        if actual != expected:
            report.add('t2_formula', [f.format(inp.space) for f in factors],
                       f"t2={actual.format()} expected {expected.format()}")

    for k in range(3, words.max_length + 1):
        for factors in word_tuples(words.words, k, words.max_length):
            actual = t_op(inp, k, factors)
            report.checked += 1
            if not actual.is_zero():
                report.add('tk_nonzero', [f.format(inp.space) for f in factors], f"t{k}={actual.format()}")

    delta = bar_delta_operator(inp, words)
    triples = [tuple(words.index(f) for f in factors)
               for factors in word_tuples(words.words, 3, words.max_length)]
    report.extend(compat_check(words.algebra, delta, triples))
    return report


def coproduct_report(space: GradedBasis, max_length: int) -> ValidationReport:
    """Coassociativity of the splitting coproduct and degree additivity of concatenation."""
    report = ValidationReport()
    words = words_up_to(space, max_length)
    for word in words:
        left = sorted((a, b, c) for a, bc in word_coproduct(word) for b, c in word_coproduct(bc))
        right = sorted((a, b, c) for ab, c in word_coproduct(word) for a, b in word_coproduct(ab))
        report.checked += 1
        if left != right:
            report.add('coassociativity', [word.format(space)], f"{len(left)} vs {len(right)} triple splits")
        for a, b in word_coproduct(word):
            report.checked += 1
            if a.degree(space) + b.degree(space) != word.degree(space):
                report.add('degree_additivity', [a.format(space), b.format(space)], 'concatenation changes degree')
    return report
