"""The Pell equation a^2 - 5 b^2 = 4 and the 5x5 SICUP correspondence.

Solutions of a^2 - 5b^2 = 4 are exactly the pairs with (a + b sqrt5)/2 a unit of
norm +1 in Z[(1 + sqrt5)/2], i.e. ±phi^(2k). Multiplication by phi^2 = (3 + sqrt5)/2
acts on pairs as (a, b) -> ((3a + 5b)/2, (a + 3b)/2).

A 5x5 symmetric circulant has first row (x, l, m, m, l). It is SICUP exactly
when x = 1 - 2l - 2m and (2x - l - m, l - m) solves the Pell equation with
2x - l - m > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .matrices import IntMatrix, circulant_from_first_row, verify_sicup


class NotSicupError(ValueError):
    pass


class NotAdmissibleError(ValueError):
    """Pell solution with a not congruent to 2 mod 5, or not a solution at all."""


class NegativeBranchError(ValueError):
    """a <= 0: the preimage matrix has eigenvalues of sum a and product 1, so it is not PD."""


@dataclass(frozen=True, order=True)
class PellSolution:
    a: int
    b: int

    def __post_init__(self):
        if self.a * self.a - 5 * self.b * self.b != 4:
            raise ValueError(f"({self.a}, {self.b}) does not satisfy a^2 - 5b^2 = 4")

    def as_tuple(self) -> tuple[int, int]:
        return (self.a, self.b)


@dataclass(frozen=True)
class SicupParams5:
    x: int
    l: int
    m: int

    @property
    def first_row(self) -> tuple[int, int, int, int, int]:
        return (self.x, self.l, self.m, self.m, self.l)

    def matrix(self) -> IntMatrix:
        return circulant_from_first_row(self.first_row)

    @classmethod
    def from_matrix(cls, M: IntMatrix) -> "SicupParams5":
        x, l, m, m2, l2 = M.rows[0]
        if M.dim != 5 or m != m2 or l != l2:
            raise NotSicupError("not a 5x5 symmetric circulant")
        return cls(x, l, m)


def _orbit(limit_terms: int):
    """Positive-a solutions (a, b), b >= 0, in increasing a: (2,0), (3,1), (7,3), ..."""
    a, b = 2, 0
    for _ in range(limit_terms):
        yield a, b
        a, b = (3 * a + 5 * b) // 2, (a + 3 * b) // 2


def solve_pell_5_4(
    count: int,
    require_a_mod5: Optional[int] = None,
    require_a_positive: bool = True,
) -> list[PellSolution]:
    """First ``count`` solutions of a^2 - 5b^2 = 4, ordered by |a|, then b, then a.

    ``require_a_mod5`` keeps only a with ``a % 5 == require_a_mod5``.
    """
    if count < 1:
        raise ValueError("count must be positive")
    out: list[PellSolution] = []
    # |a| grows geometrically along the orbit, so filtering never starves for
    # more than a couple of steps
    gen = _orbit(10**9)
    while len(out) < count:
        a, b = next(gen)
        batch = {(a, b), (a, -b)}
        if not require_a_positive:
            batch |= {(-a, b), (-a, -b)}
        for sa, sb in sorted(batch, key=lambda s: (abs(s[0]), s[1], s[0])):
            if require_a_mod5 is not None and sa % 5 != require_a_mod5 % 5:
                continue
            out.append(PellSolution(sa, sb))
    return out[:count]


def brute_force_pell(a_max: int, b_max: int) -> set[tuple[int, int]]:
    """Exhaustive solutions with |a| <= a_max, |b| <= b_max (test oracle)."""
    sols = set()
    for b in range(-b_max, b_max + 1):
        sq = 5 * b * b + 4
        a = math.isqrt(sq)
        if a * a == sq and a <= a_max:
            sols.add((a, b))
            sols.add((-a, b))
    return sols


def phi(params: SicupParams5) -> PellSolution:
    """A(x, l, m) -> (2x - l - m, l - m)."""
    report = verify_sicup(params.matrix())
    if not report.verdict:
        raise NotSicupError(f"A{(params.x, params.l, params.m)} is not SICUP: {report.as_dict()}")
    sol = PellSolution(2 * params.x - params.l - params.m, params.l - params.m)
    assert sol.a % 5 == 2
    return sol


def phi_inverse(s: PellSolution) -> SicupParams5:
    """(a, b) -> A((2a + 1)/5, (2 - a + 5b)/10, (2 - a - 5b)/10)."""
    a, b = s.a, s.b
    if a % 5 != 2:
        raise NotAdmissibleError(f"a = {a} is not 2 mod 5")
    if a <= 0:
        raise NegativeBranchError(f"a = {a} <= 0 gives a matrix that is not positive definite")
    for num, den in ((2 * a + 1, 5), (2 - a + 5 * b, 10), (2 - a - 5 * b, 10)):
        if num % den:
            raise AssertionError(f"{num} not divisible by {den} for ({a}, {b})")
    params = SicupParams5((2 * a + 1) // 5, (2 - a + 5 * b) // 10, (2 - a - 5 * b) // 10)
    assert params.x == 1 - 2 * params.l - 2 * params.m
    return params


def admissible_solutions(count: int) -> list[PellSolution]:
    """Admissible solutions (a > 0, a = 2 mod 5) ordered by a ascending, b descending."""
    sols = solve_pell_5_4(count + 1, require_a_mod5=2, require_a_positive=True)
    sols.sort(key=lambda s: (s.a, -s.b))
    return sols[:count]


def enumerate_m5(count: int) -> list[IntMatrix]:
    """The first ``count`` 5x5 SICUP matrices, via the inverse map."""
    return [phi_inverse(s).matrix() for s in admissible_solutions(count)]
