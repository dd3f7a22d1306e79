"""
Tests for seeded random instances.
"""

import hypothesis
import hypothesis.strategies as strat
import numpy as np

from borjeson import assoc_vs_delta_squared, construct_structure, stasheff_defect
from check_config import DEFAULT_RANDOM_CONFIG
from core import compose, validate_algebra
from random_algebras import (
    SQUARE_ZERO_FAMILIES, cubic_algebra, operator_instances, square_zero_instances, square_zero_operator,
)


def fingerprint(instances):
    return [(i.label, i.algebra.name, tuple(sorted((k, v.format()) for k, v in i.delta.images.items())))
            for i in instances]


def test_instances_are_seeded():
    assert fingerprint(square_zero_instances(3, 10)) == fingerprint(square_zero_instances(3, 10))
    assert fingerprint(operator_instances(3, 10)) == fingerprint(operator_instances(3, 10))


def test_instances_are_valid_and_square_zero():
    for inst in square_zero_instances(0):
        assert inst.family in SQUARE_ZERO_FAMILIES
        assert inst.algebra.dim <= DEFAULT_RANDOM_CONFIG['max_dim']
        assert validate_algebra(inst.algebra).ok, inst.label
        assert compose(inst.delta, inst.delta).is_zero()


def test_stasheff_on_random_instances():
    for inst in square_zero_instances(0, 20):
        s = construct_structure(inst.algebra, inst.delta, 6)
        for n in range(1, 7):
            assert stasheff_defect(s, n).is_zero(), f"{inst.label} n={n}"


def test_assoc_defect_on_random_operators():
    for inst in operator_instances(1, 10):
        for n in range(1, 6):
            assert assoc_vs_delta_squared(inst.algebra, inst.delta, n).is_zero(), f"{inst.label} n={n}"


@hypothesis.settings(max_examples=30, deadline=None)
@hypothesis.given(strat.integers(0, 2**32 - 1))
def test_square_zero_operator_on_three_degrees(seed):
    alg = cubic_algebra()
    delta = square_zero_operator(alg, np.random.default_rng(seed), DEFAULT_RANDOM_CONFIG)
    assert delta.degree == 1
    assert compose(delta, delta).is_zero()
    s = construct_structure(alg.with_delta(delta), delta, 4)
    for n in range(1, 5):
        assert stasheff_defect(s, n).is_zero()


def test_every_family_is_drawn():
    drawn = {i.family for seed in range(5) for i in square_zero_instances(seed, 20)}
    assert drawn == set(SQUARE_ZERO_FAMILIES)
