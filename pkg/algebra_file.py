"""
Line-oriented algebra definition files.

Format (``#`` starts a comment, blank lines are ignored)::

    algebra tri2
    basis e11:0 e22:0 e12:1
    unit e11 + e22
    product e11*e11 = e11
    product e11*e12 = e12
    delta e22 -> e12
    pairing e11.e12 = 1
    end

Unlisted products, images and pairs are zero; pairing entries are
symmetrised. A bare ``delta`` line declares Δ = 0 explicitly.
"""

import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from core.algebra import GradedAlgebra
from core.errors import AlgebraFileError
from core.graded import Element, GradedBasis, LinearOperator
from core.scalars import format_scalar, parse_scalar

_NAME = r'[A-Za-z0-9_]+'
_NAME_PATTERN = re.compile(rf'^{_NAME}$')
_BASIS_ENTRY = re.compile(rf'^({_NAME}):([+-]?\d+)$')
_PRODUCT = re.compile(rf'^({_NAME})\s*\*\s*({_NAME})\s*=\s*(.+)$')
_DELTA = re.compile(rf'^({_NAME})\s*->\s*(.+)$')
_PAIRING = re.compile(rf'^({_NAME})\s*\.\s*({_NAME})\s*=\s*(.+)$')
_TERM = re.compile(rf'\s*([+-])?\s*(?:([+-]?\d+(?:\s*/\s*\d+)?)\s*\*\s*)?({_NAME})\s*')


def parse_element(text: str, basis: GradedBasis, line: int) -> Element:
    """
    Parse ``k*name`` terms joined by ``+``/``-``; ``0`` is the zero element.

    Raises:
        AlgebraFileError: On malformed terms, unknown names or bad scalars
    """
    text = text.strip()
    if text == '0':
        return Element.zero(basis)

    acc: Dict[int, Fraction] = {}
    position = 0
    first = True
    while position < len(text):
        match = _TERM.match(text, position)
        if not match or match.end() == position:
            raise AlgebraFileError(f"Cannot parse element '{text}' near '{text[position:]}'", line)
        sign, coefficient, name = match.groups()
        if sign is None and not first:
            raise AlgebraFileError(f"Missing '+' or '-' before '{name}' in '{text}'", line)
        if not basis.has(name):
            raise AlgebraFileError(f"Unknown basis name '{name}'", line)
        try:
            value = parse_scalar(coefficient) if coefficient else Fraction(1)
        except ValueError as e:
            raise AlgebraFileError(str(e), line) from None
        if sign == '-':
            value = -value
        i = basis.index(name)
        acc[i] = acc.get(i, Fraction(0)) + value
        position = match.end()
        first = False

    return Element(basis, acc)


def _parse_basis(rest: str, line: int) -> GradedBasis:
    entries = rest.split()
    if not entries:
        raise AlgebraFileError("Empty basis", line)
    names, degrees = [], []
    for entry in entries:
        match = _BASIS_ENTRY.match(entry)
        if not match:
            raise AlgebraFileError(f"Basis entry '{entry}' is not name:degree", line)
        name, degree = match.group(1), int(match.group(2))
        if name in names:
            raise AlgebraFileError(f"Duplicate basis name '{name}'", line)
        names.append(name)
        degrees.append(degree)
    return GradedBasis(tuple(names), tuple(degrees))


def parse_algebra_file(text: str) -> GradedAlgebra:
    """
    Parse an algebra definition.

    Raises:
        AlgebraFileError: With the 1-based line number of the first problem
    """
    name: Optional[str] = None
    basis: Optional[GradedBasis] = None
    unit: Optional[Element] = None
    products: Dict[Tuple[int, int], Element] = {}
    images: Optional[Dict[int, Element]] = None
    pairing: Optional[Dict[Tuple[int, int], Fraction]] = None
    ended = False
    last_line = 0

    for number, raw in enumerate(text.splitlines(), start=1):
        last_line = number
        content = raw.split('#', 1)[0].strip()
        if not content:
            continue
        if ended:
            raise AlgebraFileError("Content after 'end'", number)

        keyword, _, rest = content.partition(' ')
        rest = rest.strip()

        if keyword == 'algebra':
            if name is not None:
                raise AlgebraFileError("Duplicate 'algebra' line", number)
            if not rest:
                raise AlgebraFileError("Missing algebra name", number)
            name = rest
            continue
        if keyword == 'end':
            if rest:
                raise AlgebraFileError("Unexpected text after 'end'", number)
            ended = True
            continue
        if name is None:
            raise AlgebraFileError("File must start with 'algebra <name>'", number)

        if keyword == 'basis':
            if basis is not None:
                raise AlgebraFileError("Duplicate 'basis' line", number)
            basis = _parse_basis(rest, number)
            continue
        if basis is None:
            raise AlgebraFileError(f"'{keyword}' before 'basis'", number)

        if keyword == 'unit':
            if unit is not None:
                raise AlgebraFileError("Duplicate 'unit' line", number)
            unit = parse_element(rest, basis, number)
        elif keyword == 'product':
            match = _PRODUCT.match(rest)
            if not match:
                raise AlgebraFileError(f"Product line must read 'a*b = element', got '{rest}'", number)
            left, right = (_index(basis, match.group(k), number) for k in (1, 2))
            if (left, right) in products:
                raise AlgebraFileError(f"Duplicate product {match.group(1)}*{match.group(2)}", number)
            products[(left, right)] = parse_element(match.group(3), basis, number)
        elif keyword == 'delta':
            images = {} if images is None else images
            if not rest:
                continue
            match = _DELTA.match(rest)
            if not match:
                raise AlgebraFileError(f"Delta line must read 'a -> element', got '{rest}'", number)
            source = _index(basis, match.group(1), number)
            if source in images:
                raise AlgebraFileError(f"Duplicate delta image of {match.group(1)}", number)
            images[source] = parse_element(match.group(2), basis, number)
        elif keyword == 'pairing':
            pairing = {} if pairing is None else pairing
            match = _PAIRING.match(rest)
            if not match:
                raise AlgebraFileError(f"Pairing line must read 'a.b = scalar', got '{rest}'", number)
            left, right = (_index(basis, match.group(k), number) for k in (1, 2))
            try:
                value = parse_scalar(match.group(3))
            except ValueError as e:
                raise AlgebraFileError(str(e), number) from None
            for key in ((left, right), (right, left)):
                if key in pairing and pairing[key] != value:
                    raise AlgebraFileError(
                        f"Pairing {match.group(1)}.{match.group(2)} conflicts with an earlier entry", number
                    )
                pairing[key] = value
        else:
            raise AlgebraFileError(f"Unknown keyword '{keyword}'", number)

    if name is None:
        raise AlgebraFileError("Missing 'algebra <name>' line", max(last_line, 1))
    if basis is None:
        raise AlgebraFileError("Missing 'basis' line", max(last_line, 1))
    if not ended:
        raise AlgebraFileError("Missing 'end'", last_line + 1)

    delta = LinearOperator(basis, 1, images) if images is not None else None
    if pairing is not None:
        pairing = {k: v for k, v in pairing.items() if v}
    return GradedAlgebra(name, basis, products, unit, delta, pairing)


def _index(basis: GradedBasis, name: str, line: int) -> int:
    if not basis.has(name):
        raise AlgebraFileError(f"Unknown basis name '{name}'", line)
    return basis.index(name)


def load_algebra_file(path: str) -> GradedAlgebra:
    """
    Read and parse a file.

    Raises:
        AlgebraFileError: On parse errors
        OSError: If the file cannot be read
    """
    return parse_algebra_file(Path(path).read_text(encoding='utf-8'))


def serialize_algebra(alg: GradedAlgebra) -> str:
    """
    Render an algebra in the file format; parsing the result gives an equal algebra.

    Raises:
        ValueError: If a basis name cannot be written, Δ is not of degree +1,
            or the pairing is not symmetric
    """
    basis = alg.basis
    bad = [n for n in basis.names if not _NAME_PATTERN.match(n)]
    if bad:
        raise ValueError(f"Basis names not expressible in the file format: {', '.join(bad)}")

    lines: List[str] = [f"algebra {alg.name}"]
    lines.append('basis ' + ' '.join(f"{n}:{d}" for n, d in zip(basis.names, basis.degrees)))
    if alg.unit is not None:
        lines.append(f"unit {alg.unit.format()}")

    for i in range(alg.dim):
        for j in range(alg.dim):
            value = alg.product_entry(i, j)
            if not value.is_zero():
                lines.append(f"product {basis.names[i]}*{basis.names[j]} = {value.format()}")

    if alg.delta is not None:
        if alg.delta.degree != 1:
            raise ValueError(f"Files hold degree +1 operators only, got degree {alg.delta.degree}")
        if alg.delta.is_zero():
            lines.append('delta')
        for i in range(alg.dim):
            value = alg.delta.image(i)
            if not value.is_zero():
                lines.append(f"delta {basis.names[i]} -> {value.format()}")

    if alg.pairing is not None:
        table = {k: v for k, v in alg.pairing.items() if v}
        for (i, j), value in sorted(table.items()):
            if table.get((j, i)) != value:
                raise ValueError(f"Pairing is not symmetric on ({basis.names[i]},{basis.names[j]})")
            if i <= j:
                lines.append(f"pairing {basis.names[i]}.{basis.names[j]} = {format_scalar(value)}")

    lines.append('end')
    return '\n'.join(lines) + '\n'
