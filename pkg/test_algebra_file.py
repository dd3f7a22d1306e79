"""
Tests for the algebra definition file format.
"""

from pathlib import Path

import pytest

from algebra_file import load_algebra_file, parse_algebra_file, parse_element, serialize_algebra
from core import AlgebraFileError, GradedBasis, validate_algebra
from fixture_algebras import (
    FIXTURES, dual_numbers, k_times_k, matrix_algebra_m2, triangular, truncated_exterior,
)

FIXTURE_DIR = Path(__file__).parent / 'fixtures'


def same_algebra(a, b):
    assert a.name == b.name
    assert a.basis.same_as(b.basis)
    for i in range(a.dim):
        for j in range(a.dim):
            assert a.product_entry(i, j) == b.product_entry(i, j)
    assert a.unit == b.unit
    assert (a.delta is None) == (b.delta is None)
    if a.delta is not None:
        for i in range(a.dim):
            assert a.delta.image(i) == b.delta.image(i)
    assert {k: v for k, v in (a.pairing or {}).items() if v} == {k: v for k, v in (b.pairing or {}).items() if v}


# =============================================================================
# Parsing
# =============================================================================

def test_parse_tri2_file():
    alg = load_algebra_file(str(FIXTURE_DIR / 'tri2.alg'))
    assert alg.name == 'tri2'
    assert alg.basis.names == ('e11', 'e22', 'e12')
    assert alg.basis.degrees == (0, 0, 1)
    nonzero = [(i, j) for i in range(alg.dim) for j in range(alg.dim) if not alg.product_entry(i, j).is_zero()]
    assert len(nonzero) == 4
    assert [i for i in range(alg.dim) if not alg.delta.image(i).is_zero()] == [1]
    assert alg.pairing is None
    same_algebra(alg, triangular())


@pytest.mark.parametrize('name', ['tri2', 'dual', 'm2', 'uvw', 'deriv'])
def test_fixture_files_match_builders(name):
    alg = load_algebra_file(str(FIXTURE_DIR / f'{name}.alg'))
    same_algebra(alg, FIXTURES[name]())


def test_broken_file_parses_but_fails_validation():
    alg = load_algebra_file(str(FIXTURE_DIR / 'broken_tri2.alg'))
    assert not validate_algebra(alg).ok


def test_parse_element_terms():
    basis = GradedBasis(('a', 'b'), (0, 0))
    x = parse_element('2*a - 1/2*b + a', basis, 1)
    assert x.format() == '3*a - 1/2*b'
    assert parse_element('0', basis, 1).is_zero()
    assert parse_element('-b', basis, 1).coefficient(1) == -1


def test_bare_delta_line_declares_zero():
    alg = parse_algebra_file("algebra k\nbasis 1:0\nunit 1\nproduct 1*1 = 1\ndelta\nend\n")
    assert alg.delta is not None
    assert alg.delta.is_zero()


def test_comments_and_blank_lines_are_ignored():
    text = "# header\n\nalgebra k   # name\nbasis 1:0\n\nproduct 1*1 = 1\nend\n# trailer\n"
    assert parse_algebra_file(text).dim == 1


@pytest.mark.parametrize('text,line', [
    ("algebra x\nbasis e:zero\nend\n", 2),
    ("algebra x\nbasis a:0 a:1\nend\n", 2),
    ("basis a:0\nend\n", 1),
    ("algebra x\nunit a\nend\n", 2),
    ("algebra x\nbasis a:0\nproduct a*b = a\nend\n", 3),
    ("algebra x\nbasis a:0\nproduct a*a = a\nproduct a*a = a\nend\n", 4),
    ("algebra x\nbasis a:0\nproduct a*a = 2a\nend\n", 3),
    ("algebra x\nbasis a:0\nproduct a*a = a a\nend\n", 3),
    ("algebra x\nbasis a:0\ndelta a => a\nend\n", 3),
    ("algebra x\nbasis a:0\nfrobnicate a\nend\n", 3),
    ("algebra x\nbasis a:0\nend\nbasis b:0\n", 4),
    ("algebra x\nbasis a:0\n", 3),
    ("algebra x\nbasis a:0\npairing a.a = 1/0\nend\n", 3),
])
def test_malformed_files_report_the_line(text, line):
    with pytest.raises(AlgebraFileError) as excinfo:
        parse_algebra_file(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}: ")


def test_conflicting_pairing_entries():
    text = "algebra x\nbasis a:0 b:0\npairing a.b = 1\npairing b.a = 2\nend\n"
    with pytest.raises(AlgebraFileError) as excinfo:
        parse_algebra_file(text)
    assert excinfo.value.line == 4


def test_missing_file_is_an_os_error(tmp_path):
    with pytest.raises(OSError):
        load_algebra_file(str(tmp_path / 'absent.alg'))


# =============================================================================
# Serialization
# =============================================================================

@pytest.mark.parametrize('make', [triangular, dual_numbers, matrix_algebra_m2, truncated_exterior])
def test_serialized_algebra_parses_back(make):
    alg = make()
    same_algebra(parse_algebra_file(serialize_algebra(alg)), alg)


def test_serialize_rejects_unwritable_names():
    with pytest.raises(ValueError):
        serialize_algebra(k_times_k())
