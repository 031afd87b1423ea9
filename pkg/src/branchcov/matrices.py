"""Exact integer matrices: circulants, SICUP verification and enumeration.

Everything here is exact. Determinants and leading principal minors come from
fraction-free (Bareiss) elimination over Python ints, so unimodularity and
positive definiteness are decided without tolerances. The only floating-point
code is the spectral cross-check in :func:`circulant_spectrum`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence


class NotSymmetricError(ValueError):
    pass


class BlowDownError(ValueError):
    pass


class IntMatrix:
    """Immutable dense square matrix of Python ints.

    Element access ``M[i, j]`` is 0-based. ``M.rows`` is a tuple of tuples.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rs = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rs)
        for r in rs:
            if len(r) != n:
                raise ValueError(f"matrix is not square: {n} rows but a row of length {len(r)}")
        object.__setattr__(self, "rows", rs)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, d: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(d)] for i in range(d)])

    @classmethod
    def scalar(cls, d: int, c: int) -> "IntMatrix":
        return cls([[c if i == j else 0 for j in range(d)] for i in range(d)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.rows]!r})"

    def __neg__(self) -> "IntMatrix":
        return negate(self)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows)) if self.rows else self

    def is_symmetric(self) -> bool:
        n = self.dim
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def submatrix(self, keep: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[self.rows[i][j] for j in keep] for i in keep])


def as_matrix(M: Any) -> IntMatrix:
    return M if isinstance(M, IntMatrix) else IntMatrix(M)


# -- circulants ---------------------------------------------------------------


def circulant_from_first_row(row: Sequence[int]) -> IntMatrix:
    """Row ``k`` is the first row rotated ``k`` places to the right."""
    d = len(row)
    if d < 1:
        raise ValueError("a circulant needs at least one entry")
    return IntMatrix([[row[(j - i) % d] for j in range(d)] for i in range(d)])


def first_row(M: IntMatrix) -> tuple[int, ...]:
    return M.rows[0] if M.dim else ()


def is_circulant(M: IntMatrix) -> bool:
    n = M.dim
    return all(M[i, j] == M[(i + 1) % n, (j + 1) % n] for i in range(n) for j in range(n))


def is_symmetric_first_row(row: Sequence[int]) -> bool:
    d = len(row)
    return all(row[j] == row[(d - j) % d] for j in range(d))


# -- exact elimination --------------------------------------------------------


def bareiss_det(rows: Sequence[Sequence[Any]], one: Any = 1) -> Any:
    """Determinant over an integral domain by fraction-free elimination.

    Works for ints and for any ring type supporting ``+ - *``, truthiness as a
    zero test and exact ``//`` (e.g. :class:`~branchcov.poly.IntPoly`).
    """
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = pivot * 0
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def det_exact(M: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (0x0 has determinant 1)."""
    M = as_matrix(M)
    return int(bareiss_det(M.rows))


def leading_minors(M: IntMatrix) -> list[int]:
    """All leading principal minors ``D_1 .. D_n``.

    Bareiss without pivoting leaves ``D_k`` as the k-th pivot. Once a pivot
    vanishes the remaining minors are computed directly.
    """
    a = [list(r) for r in M.rows]
    n = len(a)
    minors: list[int] = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            minors.extend(det_exact(M.submatrix(range(j + 1))) for j in range(k + 1, n))
            return minors
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - aik * a[k][j]) // prev
        prev = pivot
    return minors


def is_positive_definite(M: IntMatrix) -> bool:
    """Sylvester's criterion with exact minors."""
    M = as_matrix(M)
    if not M.is_symmetric():
        raise NotSymmetricError("positive definiteness is only defined here for symmetric matrices")
    a = [list(r) for r in M.rows]
    prev = 1
    n = len(a)
    for k in range(n):
        pivot = a[k][k]
        if pivot <= 0:
            return False
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - aik * a[k][j]) // prev
        prev = pivot
    return True


def is_negative_definite(M: IntMatrix) -> bool:
    return is_positive_definite(negate(M))


def negate(M: IntMatrix) -> IntMatrix:
    return IntMatrix([[-x for x in r] for r in M.rows])


# -- spectra ------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: list[tuple[float, int]]  # (value, multiplicity); lambda_1 first
    lambda1_exact: int

    def flat(self) -> list[float]:
        return sorted(v for v, mult in self.eigenvalues for _ in range(mult))


def circulant_spectrum(row: Sequence[int]) -> SpectralDecomposition:
    """Eigenvalues of the symmetric circulant with first row ``row`` (odd size).

    For ``d = 2r + 1`` the all-ones vector gives the simple eigenvalue
    ``c1 + 2(c2 + ... + c_{r+1})`` and the remaining ones pair up as
    ``c1 + 2 sum_k c_{k+1} cos(2 pi k j / d)``, ``j = 1..r``.
    """
    d = len(row)
    if d % 2 == 0:
        raise ValueError(f"size must be odd, got {d}")
    if not is_symmetric_first_row(row):
        raise NotSymmetricError(f"first row {tuple(row)} does not define a symmetric circulant")
    r = d // 2
    lam1 = row[0] + 2 * sum(row[1 : r + 1])
    pairs = []
    for j in range(1, r + 1):
        val = row[0] + 2 * sum(row[k] * math.cos(2 * math.pi * k * j / d) for k in range(1, r + 1))
        pairs.append((val, 2))
    if d == 5:
        x, l, m = row[0], row[1], row[2]
        s5 = math.sqrt(5)
        closed = sorted([((2 * x - l - m) + s5 * (l - m)) / 2, ((2 * x - l - m) + s5 * (m - l)) / 2])
        scale = max(1.0, abs(x) + abs(l) + abs(m))
        assert all(abs(a - b) <= 1e-9 * scale for a, b in zip(closed, sorted(v for v, _ in pairs)))
    return SpectralDecomposition([(float(lam1), 1)] + pairs, lam1)


# -- SICUP --------------------------------------------------------------------


@dataclass(frozen=True)
class SicupReport:
    symmetric: bool
    integral: bool
    circulant: bool
    unimodular: bool
    positive_definite: bool
    lambda1: int
    det: int

    @property
    def verdict(self) -> bool:
        return (
            self.symmetric
            and self.integral
            and self.circulant
            and self.unimodular
            and self.positive_definite
        )

    def as_dict(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "integral": self.integral,
            "circulant": self.circulant,
            "unimodular": self.unimodular,
            "positive_definite": self.positive_definite,
            "lambda1": self.lambda1,
            "det": self.det,
            "verdict": self.verdict,
        }


def verify_sicup(M: IntMatrix | Sequence[Sequence[int]]) -> SicupReport:
    """Check the five SICUP properties. ``lambda1`` is the first row sum."""
    M = as_matrix(M)
    sym = M.is_symmetric()
    circ = is_circulant(M)
    det = det_exact(M)
    pd = sym and is_positive_definite(M)
    lam1 = sum(M.rows[0]) if M.dim else 0
    report = SicupReport(sym, True, circ, det == 1, pd, lam1, det)
    if report.verdict:
        # positive + unimodular forces the all-ones eigenvalue to be 1
        assert lam1 == 1, f"SICUP matrix with row sum {lam1}"
    return report


@dataclass(frozen=True)
class SicupEnumeration:
    d: int
    c1_max: int
    matrices: list[IntMatrix] = field(default_factory=list)
    candidates_checked: int = 0

    @property
    def bound_note(self) -> str:
        return f"complete for diagonal entry c1 <= {self.c1_max} (|c_j| <= c1 for j > 1)"


def _symmetric_rows(d: int, c1: int):
    """Symmetric first rows with diagonal ``c1``, ``|c_j| <= c1`` and row sum 1.

    Row sum 1 is forced for any PD unimodular circulant: the row sum is a
    positive integer eigenvalue and the product of the others is an integer.
    """
    half = d // 2
    # free entries c_2 .. c_{half+1}; for even d the middle one is self-paired
    weights = [2] * half
    if d % 2 == 0 and half:
        weights[-1] = 1
    if not weights:
        if c1 == 1:
            yield (1,)
        return
    target = 1 - c1
    rng = range(-c1, c1 + 1)
    for head in itertools.product(rng, repeat=len(weights) - 1):
        rest = target - sum(w * x for w, x in zip(weights, head))
        if rest % weights[-1]:
            continue
        last = rest // weights[-1]
        if abs(last) > c1:
            continue
        free = head + (last,)
        row = [c1] + [0] * (d - 1)
        for k, x in enumerate(free, start=1):
            row[k] = x
            row[d - k] = x
        yield tuple(row)


def enumerate_sicup(d: int, c1_max: int) -> SicupEnumeration:
    """All d x d SICUP matrices with diagonal entry at most ``c1_max``.

    Output is sorted lexicographically by first row.
    """
    if d < 1 or c1_max < 1:
        raise ValueError("need d >= 1 and c1_max >= 1")
    found = []
    checked = 0
    for c1 in range(1, c1_max + 1):
        for row in _symmetric_rows(d, c1):
            checked += 1
            M = circulant_from_first_row(row)
            if is_positive_definite(M) and det_exact(M) == 1:
                found.append(M)
    found.sort(key=first_row)
    return SicupEnumeration(d, c1_max, found, checked)


# -- Kirby moves --------------------------------------------------------------


def blow_down(L: IntMatrix, k: int) -> IntMatrix:
    """Remove the ±1-framed unknotted component ``k`` (1-based) from a linking matrix.

    Entries become ``a_ij - a_ik a_jk / a_kk`` for ``i, j != k``.
    """
    L = as_matrix(L)
    n = L.dim
    if not 1 <= k <= n:
        raise IndexError(f"component {k} out of range 1..{n}")
    if not L.is_symmetric():
        raise NotSymmetricError("linking matrices are symmetric")
    kk = k - 1
    akk = L[kk, kk]
    if abs(akk) != 1:
        raise BlowDownError(f"component {k} has framing {akk}; only ±1 can be blown down")
    keep = [i for i in range(n) if i != kk]
    # akk = ±1 so division is multiplication by akk
    return IntMatrix([[L[i, j] - L[i, kk] * L[j, kk] * akk for j in keep] for i in keep])
