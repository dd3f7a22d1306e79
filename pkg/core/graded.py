"""
Graded vector spaces over exact rationals.

Provides the basis, element, linear operator and multilinear operation types
that every other module computes with. Elements are sparse: an absent basis
index means coefficient zero, and zero coefficients are never stored.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import (
    Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence,
    Tuple, Union,
)

from core.errors import BasisMismatchError, DegreeError, InhomogeneousError
from core.scalars import format_scalar, to_scalar

Index = Tuple[int, ...]


# =============================================================================
# Basis
# =============================================================================

@dataclass(frozen=True)
class GradedBasis:
    """
    Ordered basis of a finite-dimensional ℤ-graded vector space.

    Attributes:
        names: Basis vector names, unique
        degrees: Integer degree of each basis vector
    """
    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'names', tuple(self.names))
        object.__setattr__(self, 'degrees', tuple(int(d) for d in self.degrees))

        if len(self.names) != len(self.degrees):
            raise ValueError(
                f"Basis has {len(self.names)} names but {len(self.degrees)} degrees"
            )

        index = {}
        for position, name in enumerate(self.names):
            if name in index:
                raise ValueError(f"Duplicate basis name '{name}'")
            index[name] = position
        object.__setattr__(self, '_index', index)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, int]]) -> 'GradedBasis':
        """Build a basis from (name, degree) pairs."""
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        """Position of a basis vector by name."""
        try:
            return self._index[name]
        except KeyError:
            raise BasisMismatchError(f"Unknown basis vector '{name}'") from None

    def has(self, name: str) -> bool:
        return name in self._index

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def indices_of_degree(self, degree: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def distinct_degrees(self) -> List[int]:
        return sorted(set(self.degrees))

    def shifted(self, by: int = -1) -> 'GradedBasis':
        """Same names with every degree moved by ``by``."""
        return GradedBasis(self.names, tuple(d + by for d in self.degrees))

    def format_index(self, idx: Sequence[int]) -> str:
        """Render a basis tuple as ``(e11,e22)``."""
        return '(' + ','.join(self.names[i] for i in idx) + ')'

    def same_as(self, other: 'GradedBasis') -> bool:
        return self is other or self == other


def require_same_basis(a: GradedBasis, b: GradedBasis, what: str = 'operands'):
    """Raise BasisMismatchError unless both bases agree."""
    if not a.same_as(b):
        raise BasisMismatchError(f"Basis mismatch between {what}")


# =============================================================================
# Elements
# =============================================================================

class Element:
    """
    Finite rational combination of basis vectors of one graded basis.

    Coefficients are stored sparsely; the mapping never contains zeros, so
    equality is a structural comparison.
    """

    __slots__ = ('basis', 'coeffs')

    def __init__(self, basis: GradedBasis, coeffs: Optional[Mapping[int, Union[int, Fraction]]] = None):
        self.basis = basis
        cleaned = {}
        for i, c in (coeffs or {}).items():
            c = to_scalar(c)
            if c:
                if not 0 <= i < len(basis):
                    raise BasisMismatchError(f"Basis index {i} out of range")
                cleaned[i] = c
        self.coeffs: Dict[int, Fraction] = cleaned

    @classmethod
    def _trusted(cls, basis: GradedBasis, coeffs: Dict[int, Fraction]) -> 'Element':
        element = cls.__new__(cls)
        element.basis = basis
        element.coeffs = coeffs
        return element

    @classmethod
    def zero(cls, basis: GradedBasis) -> 'Element':
        return cls._trusted(basis, {})

    @classmethod
    def basis_vector(cls, basis: GradedBasis, i: int, coeff=1) -> 'Element':
        return cls(basis, {i: coeff})

    @classmethod
    def from_terms(cls, basis: GradedBasis, terms: Iterable[Tuple[Union[int, str], Union[int, Fraction]]]) -> 'Element':
        """Sum of ``coeff * basis[name_or_index]`` over the given terms."""
        acc: Dict[int, Fraction] = {}
        for key, coeff in terms:
            i = basis.index(key) if isinstance(key, str) else key
            acc[i] = acc.get(i, Fraction(0)) + to_scalar(coeff)
        return cls(basis, acc)

    # Arithmetic ------------------------------------------------------------

    def _combine(self, other: 'Element', factor: Fraction) -> 'Element':
        require_same_basis(self.basis, other.basis, 'elements')
        result = dict(self.coeffs)
        for i, c in other.coeffs.items():
            value = result.get(i, 0) + factor * c
            if value:
                result[i] = value
            else:
                result.pop(i, None)
        return Element._trusted(self.basis, result)

    def __add__(self, other: 'Element') -> 'Element':
        return self._combine(other, Fraction(1))

    def __sub__(self, other: 'Element') -> 'Element':
        return self._combine(other, Fraction(-1))

    def __neg__(self) -> 'Element':
        return Element._trusted(self.basis, {i: -c for i, c in self.coeffs.items()})

    def scale(self, factor) -> 'Element':
        factor = to_scalar(factor)
        if not factor:
            return Element.zero(self.basis)
        return Element._trusted(self.basis, {i: factor * c for i, c in self.coeffs.items()})

    def __mul__(self, factor) -> 'Element':
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.basis.same_as(other.basis) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # Queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def items(self) -> List[Tuple[int, Fraction]]:
        """Nonzero (index, coefficient) pairs in index order."""
        return sorted(self.coeffs.items())

    def support(self) -> List[int]:
        return sorted(self.coeffs)

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs.get(i, Fraction(0))

    def is_homogeneous(self) -> bool:
        return len({self.basis.degree(i) for i in self.coeffs}) <= 1

    def degree(self) -> int:
        """
        Degree of a nonzero homogeneous element.

        Raises:
            InhomogeneousError: If the element is zero or mixes degrees
        """
        degrees = {self.basis.degree(i) for i in self.coeffs}
        if len(degrees) != 1:
            raise InhomogeneousError(
                f"Element {self.format()} has no single degree"
            )
        return degrees.pop()

    def homogeneous_parts(self) -> Dict[int, 'Element']:
        """Split into homogeneous components keyed by degree."""
        parts: Dict[int, Dict[int, Fraction]] = {}
        for i, c in self.coeffs.items():
            parts.setdefault(self.basis.degree(i), {})[i] = c
        return {d: Element._trusted(self.basis, coeffs) for d, coeffs in sorted(parts.items())}

    def format(self) -> str:
        """Render as ``2*e12 - 1/3*e11``; the zero element renders as ``0``."""
        if not self.coeffs:
            return '0'

        pieces = []
        for position, (i, c) in enumerate(self.items()):
            name = self.basis.names[i]
            magnitude = abs(c)
            term = name if magnitude == 1 else f"{format_scalar(magnitude)}*{name}"
            if position == 0:
                pieces.append(f"-{term}" if c < 0 else term)
            else:
                pieces.append(f"- {term}" if c < 0 else f"+ {term}")
        return ' '.join(pieces)

    def __repr__(self) -> str:
        return f"Element({self.format()})"


def add_scaled_into(acc: Dict[int, Fraction], element: Element, factor: Fraction):
    """In-place ``acc += factor * element`` on a raw coefficient dict."""
    for i, c in element.coeffs.items():
        value = acc.get(i, 0) + factor * c
        if value:
            acc[i] = value
        else:
            acc.pop(i, None)


def element_from_dict(basis: GradedBasis, acc: Dict[int, Fraction]) -> Element:
    """Wrap an accumulator built by add_scaled_into (already zero-free)."""
    return Element._trusted(basis, acc)


# =============================================================================
# Lazy tables
# =============================================================================

class RuleTable(Mapping):
    """
    Memoising mapping whose values are computed on first access.

    Used where full tabulation is infeasible (word algebras, cochain
    algebras, high arities). ``domain`` enumerates every key; iteration and
    ``len`` force the whole table and only report nonzero values.
    """

    def __init__(self, rule: Callable[[tuple], Element], domain: Callable[[], Iterable[tuple]]):
        self._rule = rule
        self._domain = domain
        self._cache: Dict[tuple, Element] = {}

    def __getitem__(self, key) -> Element:
        key = tuple(key)
        value = self._cache.get(key)
        if value is None:
            value = self._rule(key)
            self._cache[key] = value
        return value

    def __contains__(self, key) -> bool:
        return not self[key].is_zero()

    def __iter__(self) -> Iterator[tuple]:
        for key in self._domain():
            if not self[key].is_zero():
                yield key

    def __len__(self) -> int:
        return sum(1 for _ in self)

    def cached_count(self) -> int:
        return len(self._cache)


# =============================================================================
# Linear operators
# =============================================================================

@dataclass
class LinearOperator:
    """
    Homogeneous linear endomorphism given on basis vectors.

    Degree consistency is not enforced at construction so that malformed
    input can be reported by validation; see ``degree_violations``.

    Attributes:
        basis: Domain and codomain basis
        degree: Declared degree of the operator
        images: Basis index -> image Element (absent means zero)
    """
    basis: GradedBasis
    degree: int
    images: Mapping[int, Element] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.images, RuleTable):
            self.images = {i: e for i, e in self.images.items() if not e.is_zero()}

    @classmethod
    def zero(cls, basis: GradedBasis, degree: int) -> 'LinearOperator':
        return cls(basis, degree, {})

    @classmethod
    def identity(cls, basis: GradedBasis) -> 'LinearOperator':
        return cls(basis, 0, {i: Element.basis_vector(basis, i) for i in range(len(basis))})

    def image(self, i: int) -> Element:
        value = self.images.get(i)
        return value if value is not None else Element.zero(self.basis)

    def __call__(self, x: Element) -> Element:
        return apply_operator(self, x)

    def is_zero(self) -> bool:
        return all(self.image(i).is_zero() for i in range(len(self.basis)))

    def degree_violations(self) -> List[Tuple[int, Element]]:
        """Basis indices whose image is not homogeneous of the declared degree."""
        violations = []
        for i in range(len(self.basis)):
            value = self.image(i)
            if value.is_zero():
                continue
            target = self.basis.degree(i) + self.degree
            if any(self.basis.degree(j) != target for j in value.coeffs):
                violations.append((i, value))
        return violations

    def require_degree(self, expected: int, what: str = 'operator'):
        """Raise DegreeError unless the declared and actual degree are ``expected``."""
        if self.degree != expected:
            raise DegreeError(f"{what} has degree {self.degree}, expected {expected}")
        violations = self.degree_violations()
        if violations:
            i, value = violations[0]
            raise DegreeError(
                f"{what} maps {self.basis.names[i]} to {value.format()}, "
                f"not homogeneous of degree {self.basis.degree(i) + expected}"
            )


def apply_operator(op: LinearOperator, x: Element) -> Element:
    """Linear extension of the operator's image table."""
    require_same_basis(op.basis, x.basis, 'operator and element')
    acc: Dict[int, Fraction] = {}
    for i, c in x.coeffs.items():
        add_scaled_into(acc, op.image(i), c)
    return element_from_dict(op.basis, acc)


def identity_op(basis: GradedBasis) -> LinearOperator:
    return LinearOperator.identity(basis)


def compose(f: LinearOperator, g: LinearOperator) -> LinearOperator:
    """f ∘ g (g applied first), of degree f.degree + g.degree."""
    require_same_basis(f.basis, g.basis, 'composed operators')
    images = {i: apply_operator(f, g.image(i)) for i in range(len(g.basis))}
    return LinearOperator(f.basis, f.degree + g.degree, images)


def operator_difference(f: LinearOperator, g: LinearOperator) -> LinearOperator:
    require_same_basis(f.basis, g.basis, 'operators')
    images = {i: f.image(i) - g.image(i) for i in range(len(f.basis))}
    return LinearOperator(f.basis, f.degree, images)


# =============================================================================
# Multilinear operations
# =============================================================================

@dataclass
class MultiOp:
    """
    Multilinear operation of fixed arity and degree on one graded space.

    Attributes:
        arity: Number of inputs
        degree: Degree of the operation
        basis: Domain (in every slot) and codomain basis
        table: Basis tuple -> value; absent tuples are zero. May be a RuleTable.
    """
    arity: int
    degree: int
    basis: GradedBasis
    table: Mapping[Index, Element] = field(default_factory=dict)

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError(f"Arity must be positive, got {self.arity}")
        if not isinstance(self.table, RuleTable):
            self.table = {tuple(k): v for k, v in self.table.items() if not v.is_zero()}

    @classmethod
    def zero(cls, arity: int, degree: int, basis: GradedBasis) -> 'MultiOp':
        return cls(arity, degree, basis, {})

    @classmethod
    def from_rule(cls, arity: int, degree: int, basis: GradedBasis,
                  rule: Callable[[Index], Element],
                  domain: Optional[Callable[[], Iterable[Index]]] = None) -> 'MultiOp':
        """Lazily tabulated operation; ``rule`` maps a basis tuple to its value."""
        if domain is None:
            size = len(basis)
            domain = lambda: product(range(size), repeat=arity)
        return cls(arity, degree, basis, RuleTable(rule, domain))

    def is_lazy(self) -> bool:
        return isinstance(self.table, RuleTable)

    def entry(self, idx: Sequence[int]) -> Element:
        value = self.table.get(tuple(idx))
        return value if value is not None else Element.zero(self.basis)

    def evaluate(self, args: Sequence[Element]) -> Element:
        """Multilinear extension of the table to arbitrary arguments."""
        if len(args) != self.arity:
            raise ValueError(f"Arity {self.arity} operation given {len(args)} arguments")
        for a in args:
            require_same_basis(self.basis, a.basis, 'operation and argument')

        acc: Dict[int, Fraction] = {}
        for combo in product(*(a.items() for a in args)):
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            add_scaled_into(acc, self.entry(tuple(i for i, _ in combo)), coeff)
        return element_from_dict(self.basis, acc)

    def __call__(self, *args: Element) -> Element:
        return self.evaluate(args)

    def index_space(self) -> Iterator[Index]:
        return product(range(len(self.basis)), repeat=self.arity)

    def nonzero_entries(self) -> Iterator[Tuple[Index, Element]]:
        """Nonzero entries in lexicographic tuple order."""
        if self.is_lazy():
            for idx in self.index_space():
                value = self.table[idx]
                if not value.is_zero():
                    yield idx, value
        else:
            for idx in sorted(self.table):
                yield idx, self.table[idx]

    def first_nonzero(self) -> Optional[Tuple[Index, Element]]:
        return next(self.nonzero_entries(), None)

    def is_zero(self) -> bool:
        return self.first_nonzero() is None

    def tabulate(self) -> Dict[Index, Element]:
        """Plain dict of nonzero entries (forces a lazy table)."""
        return dict(self.nonzero_entries())

    def with_entry(self, idx: Sequence[int], value: Element) -> 'MultiOp':
        """Copy with ``value`` added to one table entry."""
        table = self.tabulate()
        key = tuple(idx)
        table[key] = table.get(key, Element.zero(self.basis)) + value
        return MultiOp(self.arity, self.degree, self.basis, table)

    def format_entry(self, idx: Sequence[int], value: Element) -> str:
        return f"{self.basis.format_index(idx)} -> {value.format()}"
