"""Tests for partitions, permutations, and character values."""

from __future__ import annotations

import math
import random

import pytest

from hurwitzlab.symgroup import (
    Partition,
    Permutation,
    class_size,
    cycle_type,
    irreducible_dimension,
    is_transitive,
    mn_character,
    partitions_of,
    transposition_class,
    z_lambda,
)


def _hook_dimension(parts: tuple[int, ...]) -> int:
    """Hook length formula, kept independent of the recursive character code."""
    d = sum(parts)
    if d == 0:
        return 1
    conjugate = [sum(1 for p in parts if p > c) for c in range(parts[0])]
    hooks = 1
    for i, row in enumerate(parts):
        for j in range(row):
            arm = row - j - 1
            leg = conjugate[j] - i - 1
            hooks *= arm + leg + 1
    return math.factorial(d) // hooks


# -- permutations and cycle types ---------------------------------------------


def test_cycle_type_identity():
    assert cycle_type(Permutation.identity(4)) == Partition((1, 1, 1, 1))


def test_cycle_type_mixed():
    sigma = Permutation.from_cycles(5, [(1, 2), (3, 4, 5)])
    assert cycle_type(sigma) == Partition((3, 2))


def test_cycle_type_full_cycle():
    for d in (2, 3, 6):
        sigma = Permutation.from_cycles(d, [tuple(range(1, d + 1))])
        assert cycle_type(sigma) == Partition((d,))


def test_composition_convention_left_to_right():
    # (sigma * tau)(i) = tau(sigma(i))
    sigma = Permutation.from_cycles(3, [(1, 2)])
    tau = Permutation.from_cycles(3, [(2, 3)])
    assert (sigma * tau)(1) == 3
    assert cycle_type(sigma * tau) == Partition((3,))


def test_cycle_type_is_conjugation_invariant():
    rng = random.Random(23)
    for _ in range(50):
        d = rng.randint(2, 7)
        images = list(range(1, d + 1))
        rng.shuffle(images)
        sigma = Permutation(tuple(images))
        rng.shuffle(images)
        tau = Permutation(tuple(images))
        assert cycle_type(sigma * tau * sigma.inverse()) == cycle_type(tau)


def test_invalid_permutation_rejected():
    with pytest.raises(ValueError):
        Permutation((1, 1, 3))


# -- class combinatorics -------------------------------------------------------


def test_z_lambda_identity_class():
    for d in (1, 3, 5):
        assert z_lambda(Partition((1,) * d)) == math.factorial(d)


def test_z_lambda_full_cycle():
    for d in (2, 4, 7):
        assert z_lambda(Partition((d,))) == d


def test_z_lambda_two_one():
    assert z_lambda(Partition((2, 1))) == 2


def test_empty_partition_base_case():
    empty = Partition(())
    assert z_lambda(empty) == 1
    assert mn_character(empty, empty) == 1


def test_class_sizes_partition_the_group():
    for d in range(1, 11):
        assert sum(class_size(lam) for lam in partitions_of(d)) == math.factorial(d)


# -- characters -----------------------------------------------------------------


def test_trivial_representation():
    for d in (3, 5):
        for mu in partitions_of(d):
            assert mn_character(Partition((d,)), mu) == 1


def test_sign_representation():
    for d in (3, 5, 6):
        for mu in partitions_of(d):
            assert mn_character(Partition((1,) * d), mu) == (-1) ** (d - len(mu))


def test_standard_character_on_three_cycle():
    assert mn_character(Partition((2, 1)), Partition((3,))) == -1
    # cross-check via column orthogonality at d = 3
    mu = Partition((3,))
    assert sum(
        mn_character(lam, mu) ** 2 for lam in partitions_of(3)
    ) == z_lambda(mu)


def test_size_mismatch_rejected():
    with pytest.raises(ValueError):
        mn_character(Partition((2, 1)), Partition((2,)))


@pytest.mark.parametrize("d", range(1, 9))
def test_column_orthogonality(d):
    lams = list(partitions_of(d))
    for mu in lams:
        assert sum(mn_character(lam, mu) ** 2 for lam in lams) == z_lambda(mu)


@pytest.mark.parametrize("d", range(1, 9))
def test_dimensions_match_hook_formula(d):
    total = 0
    for lam in partitions_of(d):
        dim = mn_character(lam, Partition((1,) * d))
        assert dim == _hook_dimension(lam.parts)
        assert dim == irreducible_dimension(lam)
        total += dim * dim
    assert total == math.factorial(d)


def test_transposition_class_shape():
    assert transposition_class(2) == Partition((2,))
    assert transposition_class(5) == Partition((2, 1, 1, 1))
    with pytest.raises(ValueError):
        transposition_class(1)


# -- transitivity ----------------------------------------------------------------


def test_transitive_single_point():
    assert is_transitive(1, [])


def test_not_transitive_two_orbits():
    gens = [
        Permutation.from_cycles(4, [(1, 2)]),
        Permutation.from_cycles(4, [(3, 4)]),
    ]
    assert not is_transitive(4, gens)


def test_transitive_adjacent_transpositions():
    gens = [
        Permutation.from_cycles(3, [(1, 2)]),
        Permutation.from_cycles(3, [(2, 3)]),
    ]
    assert is_transitive(3, gens)
