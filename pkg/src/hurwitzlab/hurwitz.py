"""Double Hurwitz numbers, exactly, by two independent routes.

``oracle_count`` enumerates tuples of transpositions closing up a fixed
monodromy representative and filters for connectedness; it is slow but its
correctness is elementary, so it serves as the ground truth.
``frobenius_connected`` evaluates the classical character-sum count of
factorizations and extracts the connected part by inclusion-exclusion over
partitions of the labeled marked points into balanced blocks.  The two are
required to agree exactly; the test suite checks this on an exhaustive grid.

Both routes use the labeled normalization: the preimages of 0 and of infinity
carry the labels of the input vector, which multiplies the unlabeled count by
prod_k m_k(alpha)! * prod_k m_k(beta)!.  This is the convention under which
the count is a function on the labeled zero-sum lattice and matches the
chamber polynomials reproduced in the acceptance tests.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .errors import (
    BudgetExceededError,
    InvalidProfileError,
    NegativeBranchCountError,
)
from .symgroup import (
    Partition,
    class_size,
    mn_character,
    irreducible_dimension,
    partitions_of,
    transposition_class,
)

DEFAULT_ORACLE_BUDGET = 10**9


@dataclass(frozen=True)
class RamificationProfile:
    """A labeled zero-sum integer vector with nonzero entries.

    Positive entries are ramification orders over 0, absolute values of
    negative entries over infinity; the degree of the cover is the sum of the
    positive entries.
    """

    x: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        if len(self.x) < 2:
            raise InvalidProfileError(f"profile needs at least 2 entries: {self.x}")
        if any(v == 0 for v in self.x):
            raise InvalidProfileError(f"profile entries must be nonzero: {self.x}")
        if sum(self.x) != 0:
            raise InvalidProfileError(
                f"profile entries must sum to zero: {self.x} sums to {sum(self.x)}"
            )
        if not any(v > 0 for v in self.x):
            raise InvalidProfileError(f"profile needs a positive entry: {self.x}")

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def degree(self) -> int:
        return sum(v for v in self.x if v > 0)

    def positives(self) -> tuple[int, ...]:
        return tuple(v for v in self.x if v > 0)

    def negatives(self) -> tuple[int, ...]:
        return tuple(v for v in self.x if v < 0)

    def alpha(self) -> Partition:
        """Cycle type over 0."""
        return Partition.from_iterable(self.positives())

    def beta(self) -> Partition:
        """Cycle type over infinity."""
        return Partition.from_iterable(-v for v in self.negatives())

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.x)) + ")"


@dataclass(frozen=True)
class EnumerationStats:
    tuples_examined: int | None
    tuples_accepted: int | None
    elapsed_seconds: float

    def to_json_dict(self) -> dict:
        return {
            "tuples_examined": self.tuples_examined,
            "tuples_accepted": self.tuples_accepted,
            "elapsed_seconds": self.elapsed_seconds,
        }


@dataclass(frozen=True)
class HurwitzResult:
    value: Fraction
    genus: int
    r: int
    method: str
    stats: EnumerationStats

    def to_json_dict(self) -> dict:
        return {
            "value": str(self.value),
            "g": self.genus,
            "r": self.r,
            "method": self.method,
            "stats": self.stats.to_json_dict(),
        }


def simple_branch_count(g: int, n: int) -> int:
    """Number of simple branch points r = 2g - 2 + n."""
    r = 2 * g - 2 + n
    if r < 0:
        raise NegativeBranchCountError(f"2g-2+n = {r} < 0 for g={g}, n={n}")
    return r


def _alpha_weight(alpha: Partition) -> int:
    """prod_k k^{m_k(alpha)}, the denominator of the labeled oracle count."""
    w = 1
    for k, m in alpha.multiplicities().items():
        w *= k**m
    return w


def _mult_factorial(lam: Partition) -> int:
    f = 1
    for m in lam.multiplicities().values():
        f *= math.factorial(m)
    return f


def _finalize(
    profile: RamificationProfile,
    g: int,
    r: int,
    value: Fraction,
    method: str,
    stats: EnumerationStats,
) -> HurwitzResult:
    # Cheap sanity invariants, asserted on every computed value.
    weight = _alpha_weight(profile.alpha())
    if (value * weight).denominator != 1:
        raise AssertionError(
            f"integrality violated: {value} * {weight} is not an integer"
        )
    if value < 0:
        raise AssertionError(f"negative count {value} for {profile}")
    if profile.degree == 1 and r > 0 and value != 0:
        raise AssertionError(f"degree-1 cover with r={r} must count 0, got {value}")
    return HurwitzResult(value=value, genus=g, r=r, method=method, stats=stats)


# ---------------------------------------------------------------------------
# Brute-force monodromy oracle
# ---------------------------------------------------------------------------


def _representative(alpha: Partition, d: int) -> list[int]:
    """A 0-based image word of cycle type alpha, cycles laid out consecutively."""
    images = list(range(d))
    start = 0
    for part in alpha.parts:
        for offset in range(part):
            images[start + offset] = start + (offset + 1) % part
        start += part
    return images


def _count_tuples(
    sigma0: list[int],
    r: int,
    beta_parts: tuple[int, ...],
    d: int,
    first_choices: Sequence[tuple[int, int]] | None = None,
) -> tuple[int, int]:
    """Depth-first count of accepted transposition r-tuples.

    Returns (leaves examined, tuples accepted).  The search keeps the running
    product sigma0 * tau_1 * ... * tau_j and its cycle count incrementally and
    prunes a branch as soon as the remaining transpositions cannot reach the
    target cycle count (each factor changes the count by exactly +-1, so both
    the distance and its parity must fit).  Restricting the first factor to
    ``first_choices`` enumerates a subrange; disjoint subranges sum to the
    full count, which is how parallel splits stay deterministic.
    """
    all_taus = [(a, b) for a in range(d) for b in range(a + 1, d)]
    target = len(beta_parts)
    prod = list(sigma0)
    inv = [0] * d
    for i, v in enumerate(prod):
        inv[v] = i

    # Connected components of the subgroup generated so far are tracked via
    # the sigma0-cycle label of each point plus the chosen transpositions.
    label = [0] * d
    ncycles0 = 0
    seen = [False] * d
    for start in range(d):
        if seen[start]:
            continue
        j = start
        while not seen[j]:
            seen[j] = True
            label[j] = ncycles0
            j = sigma0[j]
        ncycles0 += 1

    chosen: list[tuple[int, int]] = []
    examined = 0
    accepted = 0

    def same_cycle(a: int, b: int) -> bool:
        j = prod[a]
        while j != a:
            if j == b:
                return True
            j = prod[j]
        return False

    def apply_tau(a: int, b: int) -> None:
        ia, ib = inv[a], inv[b]
        prod[ia], prod[ib] = b, a
        inv[a], inv[b] = ib, ia

    def leaf_type_matches() -> bool:
        lengths = []
        done = [False] * d
        for start in range(d):
            if done[start]:
                continue
            length = 0
            j = start
            while not done[j]:
                done[j] = True
                length += 1
                j = prod[j]
            lengths.append(length)
        lengths.sort(reverse=True)
        return tuple(lengths) == beta_parts

    def leaf_transitive() -> bool:
        if ncycles0 == 1:
            return True
        parent = list(range(ncycles0))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        components = ncycles0
        for a, b in chosen:
            ra, rb = find(label[a]), find(label[b])
            if ra != rb:
                parent[ra] = rb
                components -= 1
        return components == 1

    def recurse(depth: int, cycles: int) -> None:
        nonlocal examined, accepted
        remaining = r - depth
        if remaining == 0:
            examined += 1
            if cycles == target and leaf_type_matches() and leaf_transitive():
                accepted += 1
            return
        choices = (
            first_choices
            if depth == 0 and first_choices is not None
            else all_taus
        )
        for a, b in choices:
            delta = 1 if same_cycle(a, b) else -1
            new_cycles = cycles + delta
            gap = abs(new_cycles - target)
            if gap <= remaining - 1 and (gap + remaining - 1) % 2 == 0:
                apply_tau(a, b)
                chosen.append((a, b))
                recurse(depth + 1, new_cycles)
                chosen.pop()
                apply_tau(a, b)

    recurse(0, ncycles0)
    return examined, accepted


def oracle_count(
    profile: RamificationProfile,
    g: int,
    budget: int = DEFAULT_ORACLE_BUDGET,
    split_tau1: int = 1,
) -> HurwitzResult:
    """Count genus-g covers by exhaustive monodromy enumeration.

    One representative of the cycle type over 0 is fixed and all r-tuples of
    transpositions are enumerated; a tuple is accepted when the product has
    the cycle type over infinity and the generated group is transitive.  The
    class-size factor cancels into the labeled normalization, giving

        H = prod_k m_k(beta)! * accepted / prod_k k^{m_k(alpha)}.

    Genus is not checked separately: fixing r = 2g-2+n forces it.
    ``split_tau1`` partitions the choices of the first factor into that many
    round-robin chunks counted independently and summed; the result and the
    stats are identical for every split.
    """
    r = simple_branch_count(g, profile.n)
    d = profile.degree
    num_taus = d * (d - 1) // 2
    if num_taus**r > budget:
        raise BudgetExceededError(
            f"enumeration size C({d},2)^{r} = {num_taus**r} exceeds budget {budget}"
        )
    alpha, beta = profile.alpha(), profile.beta()
    sigma0 = _representative(alpha, d)
    started = time.perf_counter()
    if r == 0 or split_tau1 <= 1:
        examined, accepted = _count_tuples(sigma0, r, beta.parts, d)
    else:
        all_taus = [(a, b) for a in range(d) for b in range(a + 1, d)]
        examined = accepted = 0
        for chunk in range(split_tau1):
            part = all_taus[chunk::split_tau1]
            ex, ac = _count_tuples(sigma0, r, beta.parts, d, first_choices=part)
            examined += ex
            accepted += ac
    value = Fraction(_mult_factorial(beta) * accepted, _alpha_weight(alpha))
    stats = EnumerationStats(
        tuples_examined=examined,
        tuples_accepted=accepted,
        elapsed_seconds=time.perf_counter() - started,
    )
    return _finalize(profile, g, r, value, "oracle", stats)


# ---------------------------------------------------------------------------
# Character-sum route
# ---------------------------------------------------------------------------


def frobenius_disconnected(alpha: Partition, beta: Partition, r: int) -> Fraction:
    """Number of tuples (sigma_0, tau_1..tau_r, sigma_inf) multiplying to the
    identity, with sigma_0 of type alpha, sigma_inf of type beta and each
    tau a transposition, with no connectedness requirement.

    Classical character sum over the irreducibles of S_d; for d = 1 there are
    no transpositions, so the count is 1 exactly when r = 0.
    """
    if alpha.size != beta.size:
        raise ValueError(f"|alpha|={alpha.size} differs from |beta|={beta.size}")
    d = alpha.size
    if d < 1:
        raise ValueError("degree must be at least 1")
    if r < 0:
        raise ValueError("r must be nonnegative")
    if d == 1:
        return Fraction(1 if r == 0 else 0)
    tau = transposition_class(d)
    prefactor = Fraction(
        class_size(alpha) * class_size(beta) * class_size(tau) ** r,
        math.factorial(d),
    )
    total = Fraction(0)
    for lam in partitions_of(d):
        chi_tau = mn_character(lam, tau)
        if r > 0 and chi_tau == 0:
            continue
        chi_a = mn_character(lam, alpha)
        if chi_a == 0:
            continue
        chi_b = mn_character(lam, beta)
        if chi_b == 0:
            continue
        total += Fraction(chi_a * chi_b * chi_tau**r, irreducible_dimension(lam) ** r)
    return prefactor * total


def _set_partitions(items: tuple[int, ...]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in _set_partitions(rest):
        for i in range(len(partial)):
            yield partial[:i] + [[first] + partial[i]] + partial[i + 1 :]
        yield [[first]] + partial


def _block_key(values: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    pos = tuple(sorted((v for v in values if v > 0), reverse=True))
    neg = tuple(sorted((-v for v in values if v < 0), reverse=True))
    return pos, neg


def _labeled_disconnected(pos: tuple[int, ...], neg: tuple[int, ...], r: int) -> Fraction:
    alpha = Partition.from_iterable(pos)
    beta = Partition.from_iterable(neg)
    d = alpha.size
    labeled = Fraction(_mult_factorial(alpha) * _mult_factorial(beta), math.factorial(d))
    return labeled * frobenius_disconnected(alpha, beta, r)


def _valid_block_rs(n_block: int, r_total: int) -> list[int]:
    # r_B must leave a nonnegative genus: r_B >= n_B - 2 and r_B == n_B mod 2
    return [rb for rb in range(max(n_block - 2, 0), r_total + 1) if (rb - n_block) % 2 == 0]


@lru_cache(maxsize=None)
def _connected_value(pos: tuple[int, ...], neg: tuple[int, ...], r: int) -> Fraction:
    """Connected labeled count for the profile with given part multisets.

    Solves the inclusion-exclusion recursion: the disconnected count is the
    sum over set partitions of the labeled marked points into balanced blocks
    of multinomially weighted products of connected counts, so the connected
    count is the disconnected one minus every multi-block term.
    """
    values = list(pos) + [-v for v in neg]
    n = len(values)
    total = _labeled_disconnected(pos, neg, r)
    correction = Fraction(0)
    for blocks in _set_partitions(tuple(range(n))):
        if len(blocks) < 2:
            continue
        if any(sum(values[i] for i in block) != 0 for block in blocks):
            continue
        block_keys = [_block_key([values[i] for i in block]) for block in blocks]
        sizes = [len(block) for block in blocks]

        def assign(idx: int, remaining: int) -> Fraction:
            if idx == len(blocks):
                return Fraction(1) if remaining == 0 else Fraction(0)
            subtotal = Fraction(0)
            for rb in _valid_block_rs(sizes[idx], remaining):
                inner = assign(idx + 1, remaining - rb)
                if inner == 0:
                    continue
                bp, bn = block_keys[idx]
                subtotal += (
                    Fraction(1, math.factorial(rb))
                    * _connected_value(bp, bn, rb)
                    * inner
                )
            return subtotal

        correction += math.factorial(r) * assign(0, r)
    return total - correction


def frobenius_connected(profile: RamificationProfile, g: int) -> HurwitzResult:
    """Connected count via the character sum plus inclusion-exclusion.

    Independent of the oracle except for sharing the profile bookkeeping;
    sub-profile counts are memoized on (positive parts, negative parts, r).
    """
    r = simple_branch_count(g, profile.n)
    started = time.perf_counter()
    pos, neg = _block_key(profile.x)
    value = _connected_value(pos, neg, r)
    stats = EnumerationStats(
        tuples_examined=None,
        tuples_accepted=None,
        elapsed_seconds=time.perf_counter() - started,
    )
    return _finalize(profile, g, r, value, "frobenius", stats)


def enumerate_profiles(n: int, max_degree: int) -> list[RamificationProfile]:
    """All valid profiles of length n with degree at most max_degree."""
    entries = [v for v in range(-max_degree, max_degree + 1) if v != 0]
    out = []
    for combo in itertools.product(entries, repeat=n):
        if sum(combo) != 0:
            continue
        degree = sum(v for v in combo if v > 0)
        if degree == 0 or degree > max_degree:
            continue
        out.append(RamificationProfile(combo))
    return out
