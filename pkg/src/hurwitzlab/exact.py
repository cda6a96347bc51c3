"""Exact rationals and multivariate polynomials on the zero-sum lattice.

All values are ``fractions.Fraction``; nothing in this package ever rounds.
Polynomials live in canonical coordinates: on the hyperplane
x_1 + ... + x_n = 0 the last variable is redundant, so x_n is eliminated via
x_n = -(x_1 + ... + x_{n-1}) and a polynomial is a sparse map from exponent
vectors over the free variables x_1 .. x_{n-1} to rational coefficients.
Two polynomials take equal values on the whole lattice iff their canonical
term maps are equal, which makes polynomial identity testing exact.

Monomials are ordered graded-lexicographically with x_1 > x_2 > ... both for
printing and for the interpolation columns, so output is deterministic.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DimensionMismatchError,
    InconsistentSystemError,
    NonZeroSumError,
    UnderdeterminedError,
)

# Exact rational scalar used everywhere.  The stdlib type already guarantees
# lowest-terms storage with a positive denominator and exact arithmetic.
ExactRational = Fraction

Exponents = tuple[int, ...]


def _grlex_key(exps: Exponents) -> tuple[int, Exponents]:
    return (sum(exps), exps)


def _compositions(total: int, parts: int) -> Iterator[Exponents]:
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def monomials_up_to_degree(num_vars: int, degree: int) -> list[Exponents]:
    """Exponent vectors of total degree <= degree, graded-lex ascending."""
    out: list[Exponents] = []
    for total in range(degree + 1):
        out.extend(_compositions(total, num_vars))
    out.sort(key=_grlex_key)
    return out


class MultiPoly:
    """Sparse polynomial in the canonical coordinates of a zero-sum space.

    ``n`` is the ambient number of variables; terms are keyed by exponent
    vectors of length ``n - 1`` (the free variables x_1..x_{n-1}).  Zero
    coefficients are never stored and terms are kept sorted graded-lex
    descending, so equality and hashing are structural.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Exponents, Fraction | int] | None = None):
        if n < 2:
            raise ValueError(f"ambient dimension must be >= 2, got {n}")
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            key = tuple(exps)
            if len(key) != n - 1:
                raise ValueError(
                    f"exponent vector {key} has length {len(key)}, expected {n - 1}"
                )
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            value = Fraction(coeff)
            if value != 0:
                clean[key] = clean.get(key, Fraction(0)) + value
        self.n = n
        self.terms = tuple(
            sorted(
                ((e, c) for e, c in clean.items() if c != 0),
                key=lambda item: _grlex_key(item[0]),
                reverse=True,
            )
        )

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> MultiPoly:
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, value: Fraction | int) -> MultiPoly:
        return cls(n, {(0,) * (n - 1): Fraction(value)})

    @classmethod
    def variable(cls, n: int, index: int) -> MultiPoly:
        """The canonical form of x_index (1-based); x_n expands to -(x_1+...+x_{n-1})."""
        if not 1 <= index <= n:
            raise ValueError(f"variable index {index} out of range 1..{n}")
        if index < n:
            exps = [0] * (n - 1)
            exps[index - 1] = 1
            return cls(n, {tuple(exps): Fraction(1)})
        terms: dict[Exponents, Fraction] = {}
        for i in range(n - 1):
            exps = [0] * (n - 1)
            exps[i] = 1
            terms[tuple(exps)] = Fraction(-1)
        return cls(n, terms)

    @classmethod
    def from_raw_terms(
        cls, n: int, raw: Mapping[Exponents, Fraction | int]
    ) -> MultiPoly:
        """Canonicalize a polynomial given with exponents over all n variables.

        Each power of x_n is expanded multinomially as (-(x_1+...+x_{n-1}))^e,
        so raw representations differing by a multiple of x_1+...+x_n collapse
        to the same canonical form.
        """
        acc: dict[Exponents, Fraction] = {}
        for exps, coeff in raw.items():
            key = tuple(exps)
            if len(key) != n:
                raise ValueError(
                    f"raw exponent vector {key} has length {len(key)}, expected {n}"
                )
            head, last = key[:-1], key[-1]
            sign = Fraction(-1) ** last
            for comp in _compositions(last, n - 1):
                weight = math.factorial(last)
                for c in comp:
                    weight //= math.factorial(c)
                merged = tuple(h + c for h, c in zip(head, comp))
                acc[merged] = acc.get(merged, Fraction(0)) + sign * weight * Fraction(coeff)
        return cls(n, acc)

    # -- structural protocol ----------------------------------------------

    def term_map(self) -> dict[Exponents, Fraction]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.terms))

    def __repr__(self) -> str:
        return f"MultiPoly(n={self.n}, {self!s})"

    # -- arithmetic --------------------------------------------------------

    def _check_same_space(self, other: MultiPoly) -> None:
        if self.n != other.n:
            raise DimensionMismatchError(
                f"polynomials live in different spaces: n={self.n} vs n={other.n}"
            )

    def __add__(self, other: MultiPoly) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_space(other)
        acc = dict(self.terms)
        for exps, coeff in other.terms:
            acc[exps] = acc.get(exps, Fraction(0)) + coeff
        return MultiPoly(self.n, acc)

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_space(other)
        acc = dict(self.terms)
        for exps, coeff in other.terms:
            acc[exps] = acc.get(exps, Fraction(0)) - coeff
        return MultiPoly(self.n, acc)

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.n, {e: -c for e, c in self.terms})

    def __mul__(self, other: MultiPoly | Fraction | int) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.n, {e: c * other for e, c in self.terms})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_space(other)
        acc: dict[Exponents, Fraction] = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                key = tuple(a + b for a, b in zip(ea, eb))
                acc[key] = acc.get(key, Fraction(0)) + ca * cb
        return MultiPoly(self.n, acc)

    def __rmul__(self, other: Fraction | int) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    # -- evaluation and structure -------------------------------------------

    def evaluate(self, x: Sequence[int | Fraction]) -> Fraction:
        """Evaluate at a zero-sum point given with all n coordinates."""
        if len(x) != self.n:
            raise DimensionMismatchError(
                f"point has {len(x)} coordinates, polynomial expects {self.n}"
            )
        if sum(Fraction(v) for v in x) != 0:
            raise NonZeroSumError(f"coordinates of {tuple(x)} do not sum to zero")
        free = [Fraction(v) for v in x[: self.n - 1]]
        total = Fraction(0)
        for exps, coeff in self.terms:
            term = coeff
            for value, e in zip(free, exps):
                if e:
                    term *= value**e
            total += term
        return total

    def total_degree(self) -> int:
        """Maximum total degree of the stored terms; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def homogeneous_components(self) -> dict[int, MultiPoly]:
        """Split by total degree; the components sum back to the polynomial."""
        buckets: dict[int, dict[Exponents, Fraction]] = {}
        for exps, coeff in self.terms:
            buckets.setdefault(sum(exps), {})[exps] = coeff
        return {deg: MultiPoly(self.n, terms) for deg, terms in sorted(buckets.items())}

    # -- text forms ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for position, (exps, coeff) in enumerate(self.terms):
            mono = "*".join(
                f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                for i, e in enumerate(exps)
                if e
            )
            magnitude = abs(coeff)
            if mono and magnitude == 1:
                body = mono
            elif mono:
                body = f"{magnitude}*{mono}"
            else:
                body = str(magnitude)
            if position == 0:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "terms": {",".join(map(str, e)): str(c) for e, c in self.terms},
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> MultiPoly:
        n = int(data["n"])
        terms = {
            tuple(int(p) for p in key.split(",")) if key else (): Fraction(value)
            for key, value in data["terms"].items()
        }
        return cls(n, terms)


def poly_divmod(p: MultiPoly, divisor: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Exact division of p by a single divisor in graded-lex order.

    Returns (quotient, remainder) with p == quotient * divisor + remainder and
    no remainder term divisible by the divisor's leading monomial.
    """
    if p.n != divisor.n:
        raise DimensionMismatchError(
            f"polynomials live in different spaces: n={p.n} vs n={divisor.n}"
        )
    if divisor.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    lead_exps, lead_coeff = divisor.terms[0]
    work = {e: c for e, c in p.terms}
    quotient: dict[Exponents, Fraction] = {}
    remainder: dict[Exponents, Fraction] = {}
    while work:
        exps = max(work, key=_grlex_key)
        coeff = work[exps]
        if all(a >= b for a, b in zip(exps, lead_exps)):
            q_exps = tuple(a - b for a, b in zip(exps, lead_exps))
            q_coeff = coeff / lead_coeff
            quotient[q_exps] = quotient.get(q_exps, Fraction(0)) + q_coeff
            # the leading term of work cancels exactly in this subtraction
            for d_exps, d_coeff in divisor.terms:
                key = tuple(a + b for a, b in zip(q_exps, d_exps))
                updated = work.get(key, Fraction(0)) - q_coeff * d_coeff
                if updated == 0:
                    work.pop(key, None)
                else:
                    work[key] = updated
        else:
            remainder[exps] = coeff
            del work[exps]
    return MultiPoly(p.n, quotient), MultiPoly(p.n, remainder)


def interpolate(
    points: Sequence[Sequence[int]],
    values: Sequence[Fraction | int],
    degree_bound: int,
) -> MultiPoly:
    """Recover the unique polynomial of total degree <= degree_bound matching
    every (point, value) pair, by exact Gaussian elimination.

    Points are zero-sum integer vectors; the system is set up over the free
    coordinates x_1..x_{n-1}.  Supplying more points than monomials turns the
    extra rows into a consistency check: an overdetermined system with no
    solution raises InconsistentSystemError (the values are not polynomial of
    this degree on these points, e.g. they straddle a wall), while deficient
    column rank raises UnderdeterminedError (more points needed).
    """
    if not points:
        raise ValueError("at least one interpolation point is required")
    if len(points) != len(values):
        raise ValueError(
            f"{len(points)} points but {len(values)} values supplied"
        )
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    n = len(points[0])
    projections = set()
    for point in points:
        if len(point) != n:
            raise DimensionMismatchError("interpolation points have mixed lengths")
        if sum(point) != 0:
            raise NonZeroSumError(f"point {tuple(point)} does not sum to zero")
        proj = tuple(point[: n - 1])
        if proj in projections:
            raise ValueError(f"duplicate free-coordinate projection {proj}")
        projections.add(proj)

    monos = monomials_up_to_degree(n - 1, degree_bound)
    rows: list[list[Fraction]] = []
    for point, value in zip(points, values):
        free = point[: n - 1]
        row = []
        for exps in monos:
            entry = Fraction(1)
            for v, e in zip(free, exps):
                if e:
                    entry *= Fraction(v) ** e
            row.append(entry)
        row.append(Fraction(value))
        rows.append(row)

    num_cols = len(monos)
    pivot_of_col: dict[int, int] = {}
    pivot_row = 0
    for col in range(num_cols):
        pivot = next(
            (r for r in range(pivot_row, len(rows)) if rows[r][col] != 0), None
        )
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        lead = rows[pivot_row][col]
        rows[pivot_row] = [v / lead for v in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_of_col[col] = pivot_row
        pivot_row += 1

    for r in range(pivot_row, len(rows)):
        if rows[r][-1] != 0:
            raise InconsistentSystemError(
                "no polynomial of degree <= "
                f"{degree_bound} matches the supplied values"
            )
    if len(pivot_of_col) < num_cols:
        raise UnderdeterminedError(
            f"evaluation matrix has column rank {len(pivot_of_col)} < {num_cols}; "
            "supply more points"
        )

    coeffs = {
        monos[col]: rows[row][-1]
        for col, row in pivot_of_col.items()
        if rows[row][-1] != 0
    }
    return MultiPoly(n, coeffs)
