"""Two-bridge knots p/q: even continued fractions, Seifert matrices,
Alexander polynomials, branched-cover homology orders and Tristram-Levine
signatures.

Continued fractions use the plus convention
    p/q = a_1 + 1/(a_2 + 1/(... + 1/a_n))
read left to right. Before expanding, an odd q is replaced by q - p (q > 0)
or q + p (q < 0); both describe the same knot. The even expansion of p/q
with p odd and q even always exists, is unique, and has even length 2g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .matrices import IntMatrix, bareiss_det
from .poly import IntPoly

CF_CONVENTION = "plus"
SIGNATURE_DPS = 60
GUARD_RELATIVE = 1e-12


class DegenerateFormError(ArithmeticError):
    """The Hermitian form is (numerically) singular at this root of unity."""


@dataclass(frozen=True)
class TwoBridgeFraction:
    p: int
    q: int

    def __post_init__(self):
        if self.p <= 0 or self.p % 2 == 0:
            raise ValueError(f"p must be odd and positive (two-bridge knot), got {self.p}")
        if not 0 < abs(self.q) < self.p:
            raise ValueError(f"need 0 < |q| < p, got q = {self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"gcd({self.p}, {self.q}) != 1")

    @classmethod
    def parse(cls, text: str) -> "TwoBridgeFraction":
        num, sep, den = text.strip().partition("/")
        if not sep:
            raise ValueError(f"expected p/q, got {text!r}")
        return cls(int(num), int(den))

    def even_q(self) -> int:
        """Representative of q with the same knot type and even numerator parity."""
        q = self.q
        if q % 2:
            q = q - self.p if q > 0 else q + self.p
        return q

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class EvenCF:
    terms: tuple[int, ...]
    convention: str = CF_CONVENTION
    q_used: int = 0

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(a) for a in self.terms))
        for a in self.terms:
            if a == 0 or a % 2:
                raise ValueError(f"even continued fraction terms must be even and nonzero, got {a}")

    @property
    def genus(self) -> int:
        return len(self.terms) // 2

    def value(self) -> Fraction:
        if not self.terms:
            raise ValueError("empty expansion")
        x = Fraction(self.terms[-1])
        for a in reversed(self.terms[:-1]):
            x = a + 1 / x
        return x

    def mirror(self) -> "EvenCF":
        return EvenCF(tuple(-a for a in self.terms), self.convention, -self.q_used)


def even_cf(f: TwoBridgeFraction) -> EvenCF:
    q = f.even_q()
    x = Fraction(f.p, q)
    terms = []
    while True:
        if x.denominator == 1:
            assert x.numerator % 2 == 0, x
            terms.append(int(x))
            break
        # the unique even a with |x - a| < 1 (x is never an odd integer here)
        a = 2 * math.floor(x / 2)
        if x - a >= 1:
            a += 2
        terms.append(a)
        x = 1 / (x - a)
    cf = EvenCF(tuple(terms), CF_CONVENTION, q)
    assert cf.value() == Fraction(f.p, q)
    assert len(terms) % 2 == 0
    return cf


def seifert_from_even_cf(cf: EvenCF | tuple | list) -> IntMatrix:
    """Banded Seifert matrix of the plumbing: V_ii = (-1)^i a_i / 2 (0-based i), V_i,i+1 = 1."""
    terms = cf.terms if isinstance(cf, EvenCF) else tuple(cf)
    n = len(terms)
    if n % 2:
        raise ValueError("an even continued fraction of a knot has even length")
    V = [[0] * n for _ in range(n)]
    for i, a in enumerate(terms):
        if a % 2:
            raise ValueError(f"odd term {a}")
        V[i][i] = (a // 2) * (1 if i % 2 == 0 else -1)
        if i + 1 < n:
            V[i][i + 1] = 1
    return IntMatrix(V)


def alexander_poly(V: IntMatrix) -> IntPoly:
    """det(V - t V^T), normalized to lowest degree 0 and positive leading coefficient."""
    n = V.dim
    if n == 0:
        return IntPoly.const(1)
    t = IntPoly.t()
    rows = [[IntPoly.const(V[i, j]) - t * V[j, i] for j in range(n)] for i in range(n)]
    if _is_tridiagonal(V):
        # continuant recurrence, linear in n
        prev, cur = IntPoly.const(1), rows[0][0]
        for k in range(1, n):
            prev, cur = cur, rows[k][k] * cur - rows[k][k - 1] * rows[k - 1][k] * prev
        return cur.normalized()
    return bareiss_det(rows, IntPoly.const(1)).normalized()


def _is_tridiagonal(V: IntMatrix) -> bool:
    return all(V[i, j] == 0 for i in range(V.dim) for j in range(V.dim) if abs(i - j) > 1)


def sylvester_resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) from the exact Sylvester determinant (both as ordinary polynomials)."""
    a = f.to_list()
    b = g.to_list()
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    fa = a[::-1]  # highest degree first
    gb = b[::-1]
    size = m + n
    S = []
    for r in range(n):
        S.append([0] * r + fa + [0] * (size - m - 1 - r))
    for r in range(m):
        S.append([0] * r + gb + [0] * (size - n - 1 - r))
    return bareiss_det(S)


def cyclotomic_quotient(d: int) -> IntPoly:
    """(t^d - 1)/(t - 1) = 1 + t + ... + t^(d-1)."""
    return IntPoly([1] * d)


def homology_order(delta: IntPoly, d: int) -> int:
    """|H_1| of the d-fold branched cover, 0 meaning infinite."""
    if d < 2:
        raise ValueError("d must be at least 2")
    return abs(sylvester_resultant(delta.normalized(), cyclotomic_quotient(d)))


def hermitian_form(V: IntMatrix, omega) -> mpmath.matrix:
    n = V.dim
    H = mpmath.matrix(n, n)
    w = mpmath.mpc(omega)
    a, b = 1 - w, 1 - mpmath.conj(w)
    for i in range(n):
        for j in range(n):
            H[i, j] = a * V[i, j] + b * V[j, i]
    return H


def tl_signature(V: IntMatrix, d: int, j: int) -> int:
    """Signature of (1 - w)V + (1 - conj w)V^T at w = exp(2 pi i j / d)."""
    if V.dim == 0:
        return 0
    with mpmath.workdps(SIGNATURE_DPS):
        omega = mpmath.expjpi(mpmath.mpf(2 * j) / d)
        H = hermitian_form(V, omega)
        evals = mpmath.eighe(H, eigvals_only=True)
        vals = [mpmath.re(e) for e in evals]
        scale = max(mpmath.mpf(1), max(abs(v) for v in vals))
        for v in vals:
            if abs(v) < GUARD_RELATIVE * scale:
                raise DegenerateFormError(f"eigenvalue {mpmath.nstr(v, 5)} below guard at d={d}, j={j}")
        return sum(1 if v > 0 else -1 for v in vals)


def signature(V: IntMatrix) -> int:
    """Classical signature of V + V^T (the value at w = -1)."""
    return tl_signature(V, 2, 1)


@dataclass(frozen=True)
class CoverEntry:
    d: int
    order: int
    signatures: tuple[int, ...] | None = None
    verdict: str | None = None  # "signature criterion applies" | "thin"

    def as_dict(self) -> dict:
        out = {"d": self.d, "homology_order": self.order, "homology_sphere": self.order == 1}
        if self.signatures is not None:
            out["signatures"] = list(self.signatures)
            out["verdict"] = self.verdict
        return out


@dataclass(frozen=True)
class BranchedCoverReport:
    fraction: TwoBridgeFraction
    cf: EvenCF
    alexander: IntPoly
    entries: tuple[CoverEntry, ...]

    def homology_sphere_degrees(self) -> list[int]:
        return [e.d for e in self.entries if e.order == 1]

    def as_dict(self) -> dict:
        return {
            "fraction": str(self.fraction),
            "even_cf": list(self.cf.terms),
            "cf_convention": self.cf.convention,
            "q_used": self.cf.q_used,
            "mirror_normalized": False,
            "alexander": self.alexander.to_list(),
            "covers": [e.as_dict() for e in self.entries],
        }


def branched_cover_report(f: TwoBridgeFraction, d_max: int) -> BranchedCoverReport:
    if d_max < 2:
        raise ValueError("d_max must be at least 2")
    cf = even_cf(f)
    V = seifert_from_even_cf(cf)
    delta = alexander_poly(V)
    entries = []
    for d in range(2, d_max + 1):
        order = homology_order(delta, d)
        if order == 1:
            sigs = tuple(tl_signature(V, d, j) for j in range(1, d))
            verdict = "signature criterion applies" if any(sigs) else "thin"
            entries.append(CoverEntry(d, order, sigs, verdict))
        else:
            entries.append(CoverEntry(d, order))
    return BranchedCoverReport(f, cf, delta, tuple(entries))


# -- independent oracles ------------------------------------------------------


def hartley_alexander(p: int, q: int) -> IntPoly:
    """Alexander polynomial of the two-bridge knot p/q from the exponent sums
    e_i = (-1)^floor(i q / p), q taken odd."""
    if q % 2 == 0:
        q = p - q
    exps = [0]
    for i in range(1, p):
        exps.append(exps[-1] + (-1) ** ((i * q) // p))
    lo = min(exps)
    terms: dict[int, int] = {}
    for k, e in enumerate(exps):
        terms[e - lo] = terms.get(e - lo, 0) + (-1) ** k
    return IntPoly.from_dict(terms).normalized()


def murasugi_signature(p: int, q: int) -> int:
    """Signature of p/q up to sign: sum of (-1)^floor(i q / p), q taken odd."""
    if q % 2 == 0:
        q = p - q
    return sum((-1) ** ((i * q) // p) for i in range(1, p))
