"""Two exact combinatorial identities behind the genus-0 crossing sign.

Both the alternating binomial sum and the exactly-integrated beta integral
collapse to (-1)^(r1 - 1); everything here is integer/rational arithmetic,
no quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable


def alternating_sum(r: int, r2: int) -> int:
    """sum_{k=r2}^{r-1} C(r-1,k) C(k-1,r2-1) (-1)^(r-1-k)."""
    if r < 2 or not 1 <= r2 <= r - 1:
        raise ValueError(f"need r >= 2 and 1 <= r2 <= r-1, got r={r}, r2={r2}")
    return sum(
        comb(r - 1, k) * comb(k - 1, r2 - 1) * (-1) ** (r - 1 - k)
        for k in range(r2, r)
    )


def beta_integral_exact(r1: int, r2: int) -> Fraction:
    """r2 * C(r-1,r2) * integral_0^1 t^(r2-1) (t-1)^(r1-1) dt, exactly.

    The integrand is expanded binomially and integrated term by term.
    """
    if r1 < 1 or r2 < 1 or r1 + r2 < 2:
        raise ValueError(f"need positive r1, r2 with r1+r2 >= 2, got {r1}, {r2}")
    r = r1 + r2
    integral = sum(
        Fraction(comb(r1 - 1, j) * (-1) ** (r1 - 1 - j), r2 + j)
        for j in range(r1)
    )
    return r2 * comb(r - 1, r2) * integral


@dataclass(frozen=True)
class IdentityReport:
    name: str
    r_max: int
    cases: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "r_max": self.r_max,
            "cases": self.cases,
            "failures": list(self.failures),
        }


def verify_identities(
    r_max: int,
    *,
    alternating: Callable[[int, int], int] = alternating_sum,
    beta: Callable[[int, int], Fraction] = beta_integral_exact,
) -> IdentityReport:
    """Check both identities against (-1)^(r1-1) for all 2 <= r <= r_max.

    Failures are reported, not raised; the callables are injectable so the
    harness itself can be sanity-checked with a perturbed implementation.
    """
    if r_max < 2:
        raise ValueError(f"r_max must be at least 2, got {r_max}")
    failures: list[str] = []
    cases = 0
    for r in range(2, r_max + 1):
        for r2 in range(1, r):
            r1 = r - r2
            expected = (-1) ** (r1 - 1)
            cases += 1
            got_sum = alternating(r, r2)
            if got_sum != expected:
                failures.append(
                    f"alternating_sum({r},{r2}) = {got_sum}, expected {expected}"
                )
            got_beta = beta(r1, r2)
            if got_beta != expected:
                failures.append(
                    f"beta_integral_exact({r1},{r2}) = {got_beta}, expected {expected}"
                )
    return IdentityReport(
        name="crossing sign identities",
        r_max=r_max,
        cases=cases,
        failures=tuple(failures),
    )
