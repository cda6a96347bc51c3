"""Chamber polynomials, wall-crossing polynomials, and the genus-0 product rule.

The count is a polynomial of total degree at most 4g - 3 + n on each chamber;
``fit_chamber`` recovers that polynomial by exact interpolation at in-chamber
lattice points and proves it on held-out points.  ``wall_crossing`` is the
difference of two adjacent chamber polynomials.  For genus 0 the crossing
also factors through a two-block product formula whose binomial and sign
bookkeeping is resolved empirically against the fitted crossing polynomial;
the winning convention is recorded here and asserted by the test suite.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .chambers import ChamberWitness, Wall, sample_chamber
from .errors import (
    BlockUnbalancedError,
    NotAdjacentError,
    NotPolynomialError,
    UnderdeterminedError,
    UnstableCaseError,
)
from .exact import MultiPoly, interpolate
from .hurwitz import (
    RamificationProfile,
    frobenius_connected,
    oracle_count,
    simple_branch_count,
)

Evaluator = Callable[[RamificationProfile, int], Fraction]


@dataclass(frozen=True)
class ChamberPolynomial:
    witness: ChamberWitness
    genus: int
    polynomial: MultiPoly
    degree_bound: int
    validation: tuple[tuple[RamificationProfile, Fraction], ...]

    def to_json_dict(self) -> dict:
        return {
            "witness": list(self.witness.point.x),
            "signature": str(self.witness.signature),
            "g": self.genus,
            "degree_bound": self.degree_bound,
            "polynomial": self.polynomial.to_json_dict(),
            "display": str(self.polynomial),
            "validation": [
                {"point": list(p.x), "value": str(v)} for p, v in self.validation
            ],
        }


@dataclass(frozen=True)
class WallCrossing:
    wall: Wall
    polynomial: MultiPoly
    chamber_from: ChamberWitness
    chamber_to: ChamberWitness

    def to_json_dict(self) -> dict:
        return {
            "wall": list(self.wall.indices),
            "polynomial": self.polynomial.to_json_dict(),
            "display": str(self.polynomial),
            "witness_from": list(self.chamber_from.point.x),
            "witness_to": list(self.chamber_to.point.x),
        }


def _default_evaluator(profile: RamificationProfile, g: int) -> Fraction:
    return frobenius_connected(profile, g).value


def fit_chamber(
    witness: ChamberWitness,
    g: int,
    oversample: int = 5,
    *,
    sampling_budget: int = 100_000,
    evaluator: Evaluator | None = None,
    spot_checks: int = 2,
    oracle_budget: int = 10**8,
) -> ChamberPolynomial:
    """Fit the chamber polynomial at the witness's chamber.

    Samples (number of monomials of degree <= 4g-3+n) + oversample lattice
    points in the chamber, evaluates the count via the character route (with
    oracle spot checks on the lowest-degree nodes as a cross-check),
    interpolates exactly, and proves the fit on the held-out points.

    For n = 2, g = 0 the count is 1/d, which is not polynomial, and the fit
    refuses with UnstableCaseError.
    """
    n = witness.point.n
    if n == 2 and g == 0:
        raise UnstableCaseError(
            "the two-part genus-0 count is 1/d and admits no polynomial fit"
        )
    if oversample < 1:
        raise ValueError("oversample must be positive")
    degree_bound = 4 * g - 3 + n
    simple_branch_count(g, n)  # raises for impossible (g, n)
    num_monomials = math.comb(degree_bound + n - 1, n - 1)
    evaluate = evaluator or _default_evaluator

    # The deterministic sampler returns the same prefix when asked for more
    # points, so evaluations are cached across rank-deficiency retries.
    known: dict[tuple[int, ...], Fraction] = {}

    def values_for(batch: list[RamificationProfile]) -> list[Fraction]:
        out = []
        for p in batch:
            if p.x not in known:
                known[p.x] = evaluate(p, g)
            out.append(known[p.x])
        return out

    fit_size = num_monomials
    while True:
        points = sample_chamber(witness, fit_size + oversample, sampling_budget)
        values = values_for(points)
        try:
            poly = interpolate(
                [p.x for p in points[:fit_size]], values[:fit_size], degree_bound
            )
            break
        except UnderdeterminedError:
            if fit_size >= 4 * num_monomials:
                raise
            fit_size += max(num_monomials // 2, 4)

    if spot_checks > 0:
        # Cross-check the evaluator against the enumeration oracle on the
        # cheapest nodes (lowest degree), chosen with a fixed seed.
        by_degree = sorted(range(len(points)), key=lambda i: (points[i].degree, i))
        pool = by_degree[: max(spot_checks, 4)]
        picked = random.Random(0).sample(pool, min(spot_checks, len(pool)))
        for i in picked:
            checked = oracle_count(points[i], g, budget=oracle_budget).value
            if checked != values[i]:
                raise AssertionError(
                    f"evaluator disagrees with the oracle at {points[i]}: "
                    f"{values[i]} vs {checked}"
                )

    held_out = list(zip(points[fit_size:], values[fit_size:]))
    for point, value in held_out:
        got = poly.evaluate(point.x)
        if got != value:
            raise NotPolynomialError(
                f"fit fails at held-out point {point}: polynomial gives {got}, "
                f"count is {value}"
            )
    return ChamberPolynomial(
        witness=witness,
        genus=g,
        polynomial=poly,
        degree_bound=degree_bound,
        validation=tuple(held_out),
    )


def wall_crossing(
    c1: ChamberPolynomial, c2: ChamberPolynomial, wall: Wall
) -> WallCrossing:
    """Difference of two adjacent chamber polynomials across `wall`."""
    if c1.witness.point.n != c2.witness.point.n:
        raise NotAdjacentError("chamber fits live in different dimensions")
    if c1.genus != c2.genus:
        raise NotAdjacentError("chamber fits have different genera")
    differing = c1.witness.signature.differing_walls(c2.witness.signature)
    if differing != [wall]:
        raise NotAdjacentError(
            f"signatures differ at {[str(w) for w in differing]}, expected exactly [{wall}]"
        )
    return WallCrossing(
        wall=wall,
        polynomial=c2.polynomial - c1.polynomial,
        chamber_from=c1.witness,
        chamber_to=c2.witness,
    )


@dataclass(frozen=True)
class CrossingConvention:
    """One candidate bookkeeping for the genus-0 product formula.

    value = sign * delta * C(top, pick) * H(I block) * H(complement block),
    where top is r-1 or r and pick is r_1 or r_2.
    """

    name: str
    sign: int
    drop_one: bool  # top of the binomial is r-1 when True, r when False
    pick_r1: bool  # choose r_1 when True, r_2 when False

    def binomial(self, r: int, r1: int) -> int:
        top = r - 1 if self.drop_one else r
        pick = r1 if self.pick_r1 else r - r1
        return math.comb(top, pick)


CONVENTIONS: tuple[CrossingConvention, ...] = (
    CrossingConvention("C(r-1,r1)", 1, True, True),
    CrossingConvention("C(r,r1)", 1, False, True),
    CrossingConvention("C(r-1,r2)", 1, True, False),
    CrossingConvention("-C(r-1,r1)", -1, True, True),
    CrossingConvention("-C(r,r1)", -1, False, True),
    CrossingConvention("-C(r-1,r2)", -1, True, False),
)

# Resolved empirically against the fitted wall-crossing polynomial and then
# pinned by the acceptance tests: only C(r,r1) with positive sign reproduces
# the crossing value at every probed point.
RECORDED_CONVENTION = CONVENTIONS[1]


def crossing_blocks(
    wall: Wall, x: RamificationProfile
) -> tuple[RamificationProfile, RamificationProfile, int]:
    """Split x across the wall into two balanced blocks, appending the node
    multiplicity delta = |subset sum| with the sign that zeroes each block.

    Requires x strictly on the positive side of the wall (the chamber the
    crossing lands in).
    """
    total = wall.subset_sum(x.x)
    if total == 0:
        raise BlockUnbalancedError(f"{x} lies on wall {wall}")
    if total < 0:
        raise ValueError(
            f"point {x} has negative sum {total} on wall {wall}; "
            "the product formula is evaluated on the positive side"
        )
    delta = total
    block_i = tuple(x.x[i - 1] for i in wall.indices) + (-delta,)
    block_c = tuple(x.x[l - 1] for l in wall.complement()) + (delta,)
    if sum(block_i) != 0 or sum(block_c) != 0:
        raise BlockUnbalancedError(
            f"blocks {block_i} and {block_c} do not balance for {x} at {wall}"
        )
    return RamificationProfile(block_i), RamificationProfile(block_c), delta


def product_formula_wc(
    wall: Wall, x: RamificationProfile, convention: CrossingConvention
) -> Fraction:
    """Evaluate one candidate genus-0 product formula for the crossing at x."""
    block_i, block_c, delta = crossing_blocks(wall, x)
    r = simple_branch_count(0, x.n)
    r1 = simple_branch_count(0, block_i.n)
    h1 = frobenius_connected(block_i, 0).value
    h2 = frobenius_connected(block_c, 0).value
    return convention.sign * delta * convention.binomial(r, r1) * h1 * h2


def product_formula_report(wall: Wall, x: RamificationProfile) -> dict[str, Fraction]:
    """Every candidate convention's value at x, keyed by convention name."""
    return {conv.name: product_formula_wc(wall, x, conv) for conv in CONVENTIONS}
