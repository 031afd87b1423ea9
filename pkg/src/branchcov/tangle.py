"""Braid words, twist-region tangles, closures and linking matrices.

Conventions
-----------
* Strand positions are 1-based in user-facing data (generator ``i`` crosses
  positions ``i`` and ``i + 1``) and 0-based internally.
* Letters are read top to bottom. ``+i`` is a positive crossing (left strand
  over right, both strands oriented downward); ``-i`` is its inverse. With this
  choice the closure of ``[1, 1]`` on two strands is the Hopf link with
  linking number +1.
* Components of a closure are the cycles of the endpoint permutation; they are
  numbered 1, 2, ... in order of their least top position.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .matrices import IntMatrix, bareiss_det
from .poly import IntPoly


class BraidError(ValueError):
    pass


class LinkingParityError(ArithmeticError):
    """Inter-component crossing sum is odd: the diagram data is inconsistent."""


class TangleRoutingError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise BraidError(f"letter {x} out of range for {self.strands} strands")

    @classmethod
    def parse(cls, text: str, strands: int) -> "BraidWord":
        text = text.strip().strip("[]")
        letters = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
        return cls(strands, tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise BraidError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)


@dataclass(frozen=True)
class ClosureComponents:
    count: int
    labeling: tuple[int, ...]  # labeling[p] = component id of top position p + 1

    def positions(self, component: int) -> list[int]:
        """1-based top positions belonging to ``component``."""
        return [p + 1 for p, c in enumerate(self.labeling) if c == component]


@dataclass(frozen=True)
class LinkingMatrixResult:
    matrix: IntMatrix
    crossing_sums: dict[tuple[int, int], int]  # (i, j), i < j -> signed crossing count
    self_crossings: dict[int, int]  # component -> signed count of self-crossings
    diagonal_rule: str
    base_framing: int
    labeling: tuple[int, ...]


def braid_permutation(w: BraidWord) -> tuple[int, ...]:
    """``perm[s]`` is the bottom position (0-based) reached by the strand starting at top ``s``."""
    at = list(range(w.strands))  # at[p] = top position of the strand now at p
    for x in w.letters:
        i = abs(x) - 1
        at[i], at[i + 1] = at[i + 1], at[i]
    perm = [0] * w.strands
    for p, s in enumerate(at):
        perm[s] = p
    return tuple(perm)


def power(w: BraidWord, d: int) -> BraidWord:
    if d < 1:
        raise ValueError("power must be at least 1")
    return BraidWord(w.strands, w.letters * d)


def permutation_cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    cycles = []
    for s in range(len(perm)):
        if not seen[s]:
            cyc = []
            x = s
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = perm[x]
            cycles.append(cyc)
    return cycles


def closure_components(w: BraidWord) -> ClosureComponents:
    cycles = permutation_cycles(braid_permutation(w))
    labeling = [0] * w.strands
    for cid, cyc in enumerate(cycles, start=1):
        for s in cyc:
            labeling[s] = cid
    return ClosureComponents(len(cycles), tuple(labeling))


def _crossing_tallies(w: BraidWord, labeling: Sequence[int]):
    pair = Counter()
    selfc = Counter()
    at = list(range(w.strands))
    for x in w.letters:
        i = abs(x) - 1
        a, b = labeling[at[i]], labeling[at[i + 1]]
        sign = 1 if x > 0 else -1
        if a == b:
            selfc[a] += sign
        else:
            pair[(min(a, b), max(a, b))] += sign
        at[i], at[i + 1] = at[i + 1], at[i]
    return pair, selfc


def linking_matrix_of_closure(
    w: BraidWord,
    base_framing: int = 1,
    framings: Optional[Sequence[int]] = None,
) -> LinkingMatrixResult:
    """Linking matrix of the closed braid, with surgery framings on the diagonal.

    Off-diagonal entries are half the signed count of crossings between the two
    components. By default the diagonal follows the row-sum rule
    ``l_ii = base_framing - sum_{j != i} l_ij`` of an equivariant surgery
    description with a single untwisting curve. Explicit ``framings`` override
    the rule.
    """
    comps = closure_components(w)
    pair, selfc = _crossing_tallies(w, comps.labeling)
    n = comps.count
    L = [[0] * n for _ in range(n)]
    for (a, b), s in pair.items():
        if s % 2:
            raise LinkingParityError(f"odd crossing sum {s} between components {a} and {b}")
        L[a - 1][b - 1] = L[b - 1][a - 1] = s // 2
    if framings is not None:
        if len(framings) != n:
            raise ValueError(f"{len(framings)} framings for {n} components")
        for i in range(n):
            L[i][i] = int(framings[i])
        rule = "user_supplied"
    else:
        for i in range(n):
            L[i][i] = base_framing - sum(L[i][j] for j in range(n) if j != i)
        rule = "row_sum"
    return LinkingMatrixResult(
        IntMatrix(L), dict(sorted(pair.items())), dict(sorted(selfc.items())), rule, base_framing, comps.labeling
    )


def component_torus_type(w: BraidWord, component: int) -> Optional[int]:
    """Knot type of one closure component when it is a torus knot T(2, q) or unknotted.

    Deleting the other strands leaves a braid on the component's own strands.
    With one strand the component is unknotted (returns 1); with two strands
    the sub-braid is sigma^q for the signed self-crossing count q. Returns None
    for components with three or more strands.
    """
    comps = closure_components(w)
    width = comps.labeling.count(component)
    if width == 0:
        raise ValueError(f"no component {component}")
    if width == 1:
        return 1
    if width == 2:
        _, selfc = _crossing_tallies(w, comps.labeling)
        return selfc.get(component, 0)
    return None


def circulant_block_check(M: IntMatrix, d: int, u: int = 1) -> bool:
    """Each d x d block is circulant and the diagonal blocks are symmetric."""
    if M.dim != u * d:
        raise ValueError(f"matrix of size {M.dim} is not {u} x {d}")
    for r in range(u):
        for s in range(u):
            for k in range(d):
                for j in range(d):
                    if M[r * d + k, s * d + j] != M[r * d, s * d + (j - k) % d]:
                        return False
            if r == s:
                for k in range(d):
                    for j in range(k + 1, d):
                        if M[r * d + k, r * d + j] != M[r * d + j, r * d + k]:
                            return False
    return True


# -- Burau / Alexander --------------------------------------------------------


def _burau_generator(n: int, x: int) -> list[list[IntPoly]]:
    """Reduced Burau matrix of sigma_i^(±1) on n strands, size (n-1) x (n-1)."""
    t = IntPoly.t()
    one, zero = IntPoly.const(1), IntPoly()
    tinv = IntPoly.monomial(1, -1)
    m = n - 1
    M = [[one if r == c else zero for c in range(m)] for r in range(m)]
    i = abs(x) - 1  # 0-based generator index, row/col of the -t entry
    pos = x > 0
    if m == 1:
        M[0][0] = -t if pos else -tinv
        return M
    M[i][i] = -t if pos else -tinv
    if i > 0:
        M[i - 1][i] = t if pos else one
    if i < m - 1:
        M[i + 1][i] = one if pos else tinv
    return M


def _matmul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    zero = IntPoly()
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for l in range(k):
            a = Ai[l]
            if a:
                Bl = B[l]
                row = out[i]
                for j in range(m):
                    if Bl[j]:
                        row[j] = row[j] + a * Bl[j]
    return out


def burau_reduced(w: BraidWord) -> list[list[IntPoly]]:
    n = w.strands
    m = n - 1
    one, zero = IntPoly.const(1), IntPoly()
    M = [[one if r == c else zero for c in range(m)] for r in range(m)]
    for x in w.letters:
        M = _matmul(M, _burau_generator(n, x))
    return M


def alexander_via_burau(w: BraidWord) -> IntPoly:
    """Alexander polynomial of a knotted braid closure.

    ``det(I - Burau(w)) = (1 + t + ... + t^(n-1)) * Delta(t)`` up to a unit; the
    quotient must be exact.
    """
    comps = closure_components(w)
    if comps.count != 1:
        raise BraidError(f"closure has {comps.count} components; Alexander polynomial needs a knot")
    n = w.strands
    B = burau_reduced(w)
    one = IntPoly.const(1)
    rows = [[(one if r == c else IntPoly()) - B[r][c] for c in range(n - 1)] for r in range(n - 1)]
    det = bareiss_det(rows, one)
    cyclo = IntPoly([1] * n)
    return det.exact_div(cyclo).normalized()


@dataclass(frozen=True)
class UnknotCheck:
    passed: bool
    reason: Optional[str] = None
    note: str = "necessary, not sufficient"

    def as_dict(self) -> dict:
        return {"passed": self.passed, "reason": self.reason, "note": self.note}


def unknot_necessary_check(w: BraidWord) -> UnknotCheck:
    """One component, Alexander polynomial 1 and determinant 1."""
    comps = closure_components(w)
    if comps.count != 1:
        return UnknotCheck(False, f"closure has {comps.count} components")
    delta = alexander_via_burau(w)
    if delta != IntPoly.const(1):
        return UnknotCheck(False, f"Alexander polynomial {delta} is not 1")
    if abs(delta(-1)) != 1:
        return UnknotCheck(False, f"determinant {abs(delta(-1))} is not 1")
    return UnknotCheck(True)


# -- twist-region tangles -----------------------------------------------------


@dataclass(frozen=True)
class TwistRegion:
    label: str
    position: int  # twists strand positions (position, position + 1), 1-based
    twist: int  # signed half-twists, positive = positive crossings
    orientation: str = "horizontal"  # "horizontal" | "vertical"; metadata only


@dataclass(frozen=True)
class TwistTangle:
    """Stack of twist boxes read top to bottom on ``strands`` parallel strands."""

    strands: int
    regions: tuple[TwistRegion, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class CompiledTangle:
    word: BraidWord
    region_of: tuple[int, ...]  # region index for each letter
    regions: tuple[TwistRegion, ...]

    def connectivity(self) -> dict[int, int]:
        """Top end ``j`` -> bottom end ``j'`` (both 1-based)."""
        perm = braid_permutation(self.word)
        return {s + 1: p + 1 for s, p in enumerate(perm)}

    def crossings_per_region(self) -> list[int]:
        counts = Counter(self.region_of)
        return [counts.get(k, 0) for k in range(len(self.regions))]


def compile_tangle(t: TwistTangle) -> CompiledTangle:
    letters: list[int] = []
    owner: list[int] = []
    for k, reg in enumerate(t.regions):
        if not 1 <= reg.position <= t.strands - 1:
            raise TangleRoutingError(
                f"region {reg.label!r} at position {reg.position} outside 1..{t.strands - 1}"
            )
        if reg.orientation not in ("horizontal", "vertical"):
            raise TangleRoutingError(f"unknown orientation {reg.orientation!r}")
        sign = 1 if reg.twist > 0 else -1
        letters.extend([sign * reg.position] * abs(reg.twist))
        owner.extend([k] * abs(reg.twist))
    return CompiledTangle(BraidWord(t.strands, tuple(letters)), tuple(owner), tuple(t.regions))


def self_crossings_by_region(ct: CompiledTangle, power_d: int, component: int) -> dict[str, int]:
    """Signed self-crossings of one component of closure(tangle^d), grouped by region label."""
    w = power(ct.word, power_d)
    comps = closure_components(w)
    owner = ct.region_of * power_d
    at = list(range(w.strands))
    out: Counter = Counter()
    for x, k in zip(w.letters, owner):
        i = abs(x) - 1
        a, b = comps.labeling[at[i]], comps.labeling[at[i + 1]]
        if a == b == component:
            out[ct.regions[k].label] += 1 if x > 0 else -1
        at[i], at[i + 1] = at[i + 1], at[i]
    return dict(out)


def matrices_equal_up_to_relabeling(A: IntMatrix, B: IntMatrix) -> bool:
    """Brute-force search for a simultaneous row/column permutation (small sizes)."""
    if A.dim != B.dim:
        return False
    n = A.dim
    if sorted(map(sorted, A.rows)) != sorted(map(sorted, B.rows)):
        return False
    for perm in itertools.permutations(range(n)):
        if all(A[perm[i], perm[j]] == B[i, j] for i in range(n) for j in range(n)):
            return True
    return False


def strand_following_permutation(w: BraidWord) -> tuple[int, ...]:
    """Independent oracle for :func:`braid_permutation`: follow each strand down the word."""
    out = []
    for s in range(w.strands):
        p = s
        for x in w.letters:
            i = abs(x) - 1
            if p == i:
                p = i + 1
            elif p == i + 1:
                p = i
        out.append(p)
    return tuple(out)


def parse_letters(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(" ", "").strip("[]").split(",") if tok]


def word_from_iterable(letters: Iterable[int], strands: int) -> BraidWord:
    return BraidWord(strands, tuple(letters))
