"""Partitions, permutations of {1..d}, class data, and irreducible characters.

Characters are computed on demand by recursive border-strip removal (largest
remaining class part first) and memoized, so no tables are shipped and any
degree works.  Permutations compose left-to-right: (sigma * tau)(i) =
tau(sigma(i)); the convention is fixed here and used consistently everywhere
a product of monodromy factors is formed.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers (possibly empty)."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError(f"partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {self.parts}")

    @classmethod
    def from_iterable(cls, parts: Iterable[int]) -> Partition:
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..d} stored as its image word."""

    images: tuple[int, ...]

    def __post_init__(self):
        if tuple(sorted(self.images)) != tuple(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, d: int) -> Permutation:
        return cls(tuple(range(1, d + 1)))

    @classmethod
    def from_cycles(cls, d: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(1, d + 1))
        for cycle in cycles:
            for i, entry in enumerate(cycle):
                images[entry - 1] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        # left-to-right: apply self first, then other
        if self.degree != other.degree:
            raise ValueError("permutations act on different sets")
        return Permutation(tuple(other.images[v - 1] for v in self.images))

    def inverse(self) -> Permutation:
        images = [0] * self.degree
        for i, v in enumerate(self.images):
            images[v - 1] = i + 1
        return Permutation(tuple(images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out: list[tuple[int, ...]] = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cycle = [start]
            seen[start - 1] = True
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen[nxt - 1] = True
                nxt = self(nxt)
            out.append(tuple(cycle))
        return out


def cycle_type(sigma: Permutation) -> Partition:
    """The multiset of cycle lengths of sigma, sorted decreasing."""
    return Partition.from_iterable(len(c) for c in sigma.cycles())


def transpositions(d: int) -> list[Permutation]:
    """All transpositions of S_d."""
    return [
        Permutation.from_cycles(d, [(a, b)])
        for a in range(1, d + 1)
        for b in range(a + 1, d + 1)
    ]


def z_lambda(lam: Partition) -> int:
    """Centralizer order of a permutation of cycle type lam: prod k^{m_k} m_k!."""
    z = 1
    for k, m in lam.multiplicities().items():
        z *= k**m * math.factorial(m)
    return z


def class_size(lam: Partition) -> int:
    """Size of the conjugacy class of cycle type lam in S_{|lam|}."""
    return math.factorial(lam.size) // z_lambda(lam)


def transposition_class(d: int) -> Partition:
    if d < 2:
        raise ValueError(f"no transpositions in S_{d}")
    return Partition((2,) + (1,) * (d - 2))


def partitions_of(d: int) -> Iterator[Partition]:
    """All partitions of d in lexicographically decreasing part order."""

    def gen(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    for parts in gen(d, d):
        yield Partition(parts)


def _beta_set(parts: tuple[int, ...]) -> tuple[int, ...]:
    m = len(parts)
    return tuple(parts[i] + (m - 1 - i) for i in range(m))


def _partition_from_beta(beta: Sequence[int]) -> tuple[int, ...]:
    ordered = sorted(beta, reverse=True)
    m = len(ordered)
    parts = tuple(ordered[i] - (m - 1 - i) for i in range(m))
    return tuple(p for p in parts if p > 0)


@lru_cache(maxsize=None)
def _mn_recursive(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    strip, rest = mu[0], mu[1:]
    beta = _beta_set(lam)
    members = set(beta)
    total = 0
    for b in beta:
        target = b - strip
        if target < 0 or target in members:
            continue
        height = sum(1 for c in beta if target < c < b)
        new_beta = [target if c == b else c for c in beta]
        total += (-1) ** height * _mn_recursive(_partition_from_beta(new_beta), rest)
    return total


def mn_character(lam: Partition, mu: Partition) -> int:
    """Irreducible character chi_lam evaluated on the class mu."""
    if lam.size != mu.size:
        raise ValueError(f"partition sizes differ: |{lam}|={lam.size}, |{mu}|={mu.size}")
    return _mn_recursive(lam.parts, mu.parts)


def irreducible_dimension(lam: Partition) -> int:
    """Dimension of the irreducible representation indexed by lam."""
    return _mn_recursive(lam.parts, (1,) * lam.size)


def is_transitive(d: int, gens: Iterable[Permutation]) -> bool:
    """True iff the group generated by gens acts transitively on {1..d}.

    Union-find over the points, uniting i with sigma(i) for each generator.
    """
    if d <= 0:
        raise ValueError("the ground set must be nonempty")
    parent = list(range(d))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    components = d
    for sigma in gens:
        if sigma.degree != d:
            raise ValueError(f"generator acts on {sigma.degree} points, expected {d}")
        for i in range(1, d + 1):
            a, b = find(i - 1), find(sigma(i) - 1)
            if a != b:
                parent[a] = b
                components -= 1
    return components == 1
