"""The resonance wall arrangement on the zero-sum lattice.

A wall is the hyperplane where a subset sum of the coordinates vanishes; on
the zero-sum space a subset and its complement cut out the same wall, so the
canonical representative is the one not containing index 1.  A chamber is
identified by the vector of signs of every canonical subset sum.  Sampling
and adjacency search use deterministic candidate sequences only, so results
are reproducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    AdjacencyNotFoundError,
    OnWallError,
    SamplingBudgetExceededError,
)
from .exact import MultiPoly
from .hurwitz import RamificationProfile


@dataclass(frozen=True)
class Wall:
    """A canonical wall: a nonempty proper subset of {1..n} avoiding index 1."""

    indices: tuple[int, ...]
    n: int

    def __post_init__(self):
        if not self.indices:
            raise ValueError("wall index set must be nonempty")
        if self.indices != tuple(sorted(set(self.indices))):
            raise ValueError(f"wall indices must be sorted and distinct: {self.indices}")
        if 1 in self.indices:
            raise ValueError("canonical wall representative must not contain index 1")
        if any(i < 1 or i > self.n for i in self.indices):
            raise ValueError(f"wall indices out of range 1..{self.n}: {self.indices}")
        if len(self.indices) >= self.n:
            raise ValueError("wall index set must be a proper subset")

    @classmethod
    def canonical(cls, indices, n: int) -> Wall:
        """Normalize {I, complement} to the representative avoiding index 1."""
        chosen = tuple(sorted(set(indices)))
        if not chosen or len(chosen) >= n:
            raise ValueError(f"not a proper nonempty subset of 1..{n}: {indices}")
        if 1 in chosen:
            chosen = tuple(i for i in range(1, n + 1) if i not in chosen)
        return cls(chosen, n)

    def complement(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if i not in self.indices)

    def form(self) -> MultiPoly:
        """The wall as a linear polynomial: the subset sum, in canonical form."""
        total = MultiPoly.zero(self.n)
        for i in self.indices:
            total = total + MultiPoly.variable(self.n, i)
        return total

    def subset_sum(self, x) -> int:
        return sum(x[i - 1] for i in self.indices)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.indices)) + "]"


@lru_cache(maxsize=None)
def walls(n: int) -> tuple[Wall, ...]:
    """All 2^{n-1} - 1 canonical walls, ordered by size then lexicographically."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    rest = range(2, n + 1)
    out = []
    for size in range(1, n):
        for combo in itertools.combinations(rest, size):
            out.append(Wall(combo, n))
    return tuple(out)


@dataclass(frozen=True)
class ChamberSignature:
    """Signs of every canonical subset sum, in the order of walls(n)."""

    n: int
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != len(walls(self.n)):
            raise ValueError(
                f"expected {len(walls(self.n))} signs for n={self.n}, got {len(self.signs)}"
            )
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signature signs must be +1 or -1")

    def sign_at(self, wall: Wall) -> int:
        return self.signs[walls(self.n).index(wall)]

    def flipped(self, wall: Wall) -> ChamberSignature:
        idx = walls(self.n).index(wall)
        signs = list(self.signs)
        signs[idx] = -signs[idx]
        return ChamberSignature(self.n, tuple(signs))

    def differing_walls(self, other: ChamberSignature) -> list[Wall]:
        if self.n != other.n:
            raise ValueError("signatures live in different dimensions")
        return [
            wall
            for wall, a, b in zip(walls(self.n), self.signs, other.signs)
            if a != b
        ]

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


def _signs_of(x: tuple[int, ...], n: int) -> tuple[int, ...]:
    signs = []
    for wall in walls(n):
        s = wall.subset_sum(x)
        if s == 0:
            raise OnWallError(wall)
        signs.append(1 if s > 0 else -1)
    return tuple(signs)


def signature(profile: RamificationProfile) -> ChamberSignature:
    """Sign vector of the profile over all canonical walls.

    Raises OnWallError naming the first wall (in canonical order) whose
    subset sum vanishes.
    """
    return ChamberSignature(profile.n, _signs_of(profile.x, profile.n))


@dataclass(frozen=True)
class ChamberWitness:
    """A lattice point together with its (recomputable) chamber signature."""

    point: RamificationProfile
    signature: ChamberSignature

    def __post_init__(self):
        if signature(self.point) != self.signature:
            raise ValueError(f"signature does not match point {self.point}")

    @classmethod
    def at(cls, profile: RamificationProfile) -> ChamberWitness:
        return cls(profile, signature(profile))


def _perturbation_directions(n: int) -> list[tuple[int, ...]]:
    """Small zero-sum lattice vectors spanning the perturbation search.

    The order is a fixed pseudo-random shuffle: consecutive candidates then
    differ in many coordinates, which keeps early samples in general position
    for interpolation.  The sequence is identical on every run.
    """
    dirs = []
    for free in itertools.product((-1, 0, 1), repeat=n - 1):
        if all(c == 0 for c in free):
            continue
        dirs.append(free + (-sum(free),))
    random.Random(170).shuffle(dirs)
    return dirs


def _is_valid_sample(candidate: tuple[int, ...], n: int, target: tuple[int, ...]) -> bool:
    if any(v == 0 for v in candidate):
        return False
    if not any(v > 0 for v in candidate):
        return False
    for wall, want in zip(walls(n), target):
        s = wall.subset_sum(candidate)
        if s == 0 or (1 if s > 0 else -1) != want:
            return False
    return True


def sample_chamber(
    witness: ChamberWitness, count: int, budget: int = 100_000
) -> list[RamificationProfile]:
    """Deterministically generate `count` distinct lattice points sharing the
    witness's signature.

    Candidates are integer scalings k*x (which provably stay in the chamber)
    interleaved with perturbations k*x + c*delta over a fixed set of small
    zero-sum directions; every candidate is re-validated against the target
    signature before being accepted, and each evaluation counts toward the
    budget.
    """
    if count < 1:
        raise ValueError("count must be positive")
    n = witness.point.n
    base = witness.point.x
    target = witness.signature.signs
    dirs = _perturbation_directions(n)
    found: list[RamificationProfile] = []
    seen: set[tuple[int, ...]] = set()
    spent = 0

    def consider(candidate: tuple[int, ...]) -> bool:
        nonlocal spent
        spent += 1
        if candidate not in seen and _is_valid_sample(candidate, n, target):
            seen.add(candidate)
            found.append(RamificationProfile(candidate))
        return len(found) >= count

    k = 0
    while spent < budget:
        k += 1
        scaled = tuple(k * v for v in base)
        if consider(scaled):
            return found
        for c in range(1, k + 1):
            for delta in dirs:
                if spent >= budget:
                    break
                candidate = tuple(s + c * d for s, d in zip(scaled, delta))
                if consider(candidate):
                    return found
    raise SamplingBudgetExceededError(
        f"found {len(found)} < {count} points within {budget} candidate evaluations"
    )


def adjacent_chamber(
    witness: ChamberWitness, wall: Wall, budget: int = 100_000
) -> ChamberWitness:
    """Search for a witness whose signature flips exactly at `wall`.

    Scales the base point to create room, then moves along e_i - e_l with i
    in the wall set and l outside it, scanning step sizes just past the sign
    change of the target subset sum; each candidate is checked for a full
    one-flip signature match.  Not every flip is realizable (the flipped sign
    vector can be empty), in which case the budget runs out and a structured
    error is raised.
    """
    n = witness.point.n
    if wall not in walls(n):
        raise ValueError(f"{wall} is not a canonical wall for n={n}")
    base_sum = wall.subset_sum(witness.point.x)
    direction = -1 if base_sum > 0 else 1
    target = witness.signature.flipped(wall).signs
    inside = list(wall.indices)
    outside = list(wall.complement())
    spent = 0
    k = 0
    while spent < budget:
        k += 1
        scaled = tuple(k * v for v in witness.point.x)
        start = abs(k * base_sum) + 1
        for i in inside:
            for l in outside:
                for extra in range(k + 2):
                    if spent >= budget:
                        break
                    spent += 1
                    t = (start + extra) * direction
                    candidate = list(scaled)
                    candidate[i - 1] += t
                    candidate[l - 1] -= t
                    candidate_t = tuple(candidate)
                    if _is_valid_sample(candidate_t, n, target):
                        return ChamberWitness.at(RamificationProfile(candidate_t))
    raise AdjacencyNotFoundError(
        f"no point with the signature flipped at {wall} found within {budget} candidates"
    )
