"""Tests for walls, signatures, chamber sampling, and adjacency search."""

from __future__ import annotations

import random

import pytest

from hurwitzlab.chambers import (
    ChamberSignature,
    ChamberWitness,
    Wall,
    adjacent_chamber,
    sample_chamber,
    signature,
    walls,
)
from hurwitzlab.errors import (
    AdjacencyNotFoundError,
    OnWallError,
    SamplingBudgetExceededError,
)
from hurwitzlab.hurwitz import RamificationProfile

EXAMPLE_C1 = RamificationProfile((7, 1, -2, -3, -3))
EXAMPLE_C2 = RamificationProfile((9, 4, -5, -5, -3))


# -- walls ---------------------------------------------------------------------


def test_wall_counts():
    assert [w.indices for w in walls(2)] == [(2,)]
    assert [w.indices for w in walls(3)] == [(2,), (3,), (2, 3)]
    assert len(walls(5)) == 15


def test_wall_canonicalization_takes_complement():
    assert Wall.canonical((1, 3, 4), 5).indices == (2, 5)
    assert Wall.canonical((2, 5), 5).indices == (2, 5)


def test_wall_rejects_improper_subsets():
    with pytest.raises(ValueError):
        Wall.canonical((), 4)
    with pytest.raises(ValueError):
        Wall.canonical((1, 2, 3, 4), 4)
    with pytest.raises(ValueError):
        Wall((2, 7), 5)


def test_wall_form_is_the_subset_sum():
    wall = Wall.canonical((2, 5), 5)
    for point in ((9, 4, -5, -5, -3), (7, 1, -2, -3, -3)):
        assert wall.form().evaluate(point) == point[1] + point[4]
    assert str(wall) == "[2,5]"


def test_walls_distinct_as_forms():
    forms = {walls(4)[i].form() for i in range(len(walls(4)))}
    assert len(forms) == len(walls(4))


# -- signatures -----------------------------------------------------------------


def test_signature_small_examples():
    assert signature(RamificationProfile((2, 1, -3))).signs == (1, -1, -1)
    assert signature(RamificationProfile((1, 1, -2))).signs == (1, -1, -1)
    assert str(signature(RamificationProfile((2, 1, -3)))) == "+--"


def test_signature_on_wall_identifies_first_vanishing():
    with pytest.raises(OnWallError) as err:
        signature(RamificationProfile((4, 1, -1, -1, -3)))
    assert err.value.wall.indices == (2, 3)


def test_signature_scaling_invariance():
    rng = random.Random(41)
    profiles = [(2, 1, -3), (7, 1, -2, -3, -3), (3, -1, -2)]
    for entries in profiles:
        base = signature(RamificationProfile(entries))
        for _ in range(5):
            k = rng.randint(2, 20)
            scaled = RamificationProfile(tuple(k * v for v in entries))
            assert signature(scaled) == base


def test_example_pair_differs_exactly_at_one_wall():
    sig1, sig2 = signature(EXAMPLE_C1), signature(EXAMPLE_C2)
    assert [w.indices for w in sig1.differing_walls(sig2)] == [(2, 5)]


def test_witness_validation():
    witness = ChamberWitness.at(EXAMPLE_C1)
    assert witness.signature == signature(EXAMPLE_C1)
    wrong = signature(EXAMPLE_C2)
    with pytest.raises(ValueError):
        ChamberWitness(EXAMPLE_C1, wrong)


# -- sampling -------------------------------------------------------------------


def test_sample_includes_scalings_for_two_parts():
    witness = ChamberWitness.at(RamificationProfile((1, -1)))
    points = {p.x for p in sample_chamber(witness, 3)}
    assert {(1, -1), (2, -2), (3, -3)} <= points


def test_sample_points_share_the_signature():
    witness = ChamberWitness.at(EXAMPLE_C1)
    points = sample_chamber(witness, 20)
    assert len(points) == 20
    assert len({p.x for p in points}) == 20
    for p in points:
        assert signature(p) == witness.signature


def test_sample_is_deterministic_and_prefix_stable():
    witness = ChamberWitness.at(EXAMPLE_C2)
    first = [p.x for p in sample_chamber(witness, 8)]
    second = [p.x for p in sample_chamber(witness, 12)]
    assert second[:8] == first


def test_sample_budget_error():
    witness = ChamberWitness.at(RamificationProfile((1, -1)))
    with pytest.raises(SamplingBudgetExceededError):
        sample_chamber(witness, 1000, budget=50)


# -- adjacency -------------------------------------------------------------------


def test_adjacent_chamber_documented_wall():
    witness = ChamberWitness.at(EXAMPLE_C1)
    wall = Wall.canonical((2, 5), 5)
    other = adjacent_chamber(witness, wall)
    differing = witness.signature.differing_walls(other.signature)
    assert [w.indices for w in differing] == [(2, 5)]
    # lands on the same side as the documented second chamber point
    assert other.signature == signature(EXAMPLE_C2)


def test_adjacent_chamber_two_parts():
    witness = ChamberWitness.at(RamificationProfile((1, -1)))
    other = adjacent_chamber(witness, Wall.canonical((2,), 2))
    assert other.point.x == (-1, 1)
    assert other.signature.signs == (1,)


def test_adjacent_chamber_infeasible_flip():
    # x2 is the only positive entry: x2 < 0 with x2 + x3 > 0 cannot happen
    witness = ChamberWitness.at(RamificationProfile((-1, 3, -2)))
    with pytest.raises(AdjacencyNotFoundError):
        adjacent_chamber(witness, Wall.canonical((2,), 3), budget=3000)


def test_signature_flip_helper():
    sig = signature(EXAMPLE_C1)
    wall = Wall.canonical((2, 5), 5)
    flipped = sig.flipped(wall)
    assert flipped.sign_at(wall) == -sig.sign_at(wall)
    assert [w.indices for w in sig.differing_walls(flipped)] == [(2, 5)]
