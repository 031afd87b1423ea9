"""The sigma(c_1, ..., c_{2m-1}) tangle family on 2m strands.

Layout: horizontal twist boxes c_j between strand positions j and j + 1 form
a staircase running down and to the right. The two vertical boxes 1 - c_m and
c_m both twist positions m and m + 1; the 1 - c_m box sits above c_{m-1}.
Every box compiles to a power of one braid generator, with positive labels
giving positive crossings. Because each c_j is odd, top end 1 exits at bottom
end 2m and top end j >= 2 exits at bottom end j - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .floer import (
    AdaptedCondition,
    KnotClass,
    adapted_inequalities,
    nu_sharp,
    torus_class,
)
from .matrices import IntMatrix, as_matrix, circulant_from_first_row
from .tangle import (
    CompiledTangle,
    TwistRegion,
    TwistTangle,
    UnknotCheck,
    closure_components,
    compile_tangle,
    component_torus_type,
    linking_matrix_of_closure,
    power,
    self_crossings_by_region,
    unknot_necessary_check,
    BraidWord,
)


class CertificateError(ValueError):
    def __init__(self, message: str, region: Optional[str] = None):
        super().__init__(message)
        self.region = region


@dataclass(frozen=True)
class SigmaParams:
    m: int
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if self.m < 1:
            raise ValueError("m must be positive")
        if len(self.c) != 2 * self.m - 1:
            raise ValueError(f"m = {self.m} needs {2 * self.m - 1} twist parameters, got {len(self.c)}")
        even = [j + 1 for j, x in enumerate(self.c) if x % 2 == 0]
        if even:
            raise ValueError(f"twist parameters must be odd; c_{even[0]} = {self.c[even[0] - 1]}")

    def cj(self, j: int) -> int:
        """1-based access c_j."""
        return self.c[j - 1]


def aux_label(m: int) -> str:
    return f"1-c{m}"


def build_sigma(p: SigmaParams) -> TwistTangle:
    m = p.m
    regions = [TwistRegion(f"c{j}", j, p.cj(j)) for j in range(1, m - 1)]
    regions.append(TwistRegion(aux_label(m), m, 1 - p.cj(m), "vertical"))
    if m >= 2:
        regions.append(TwistRegion(f"c{m - 1}", m - 1, p.cj(m - 1)))
    regions.append(TwistRegion(f"c{m}", m, p.cj(m), "vertical"))
    regions.extend(TwistRegion(f"c{j}", j, p.cj(j)) for j in range(m + 1, 2 * m))
    return TwistTangle(2 * m, tuple(regions))


def compiled_sigma(p: SigmaParams) -> CompiledTangle:
    return compile_tangle(build_sigma(p))


def expected_connectivity(m: int) -> dict[int, int]:
    """Top end 1 -> bottom end 2m, top end j -> bottom end j - 1."""
    return {j: (2 * m if j == 1 else j - 1) for j in range(1, 2 * m + 1)}


@dataclass(frozen=True)
class ClosedFormRow:
    row: tuple[int, ...]  # full first row a_11 ... a_1m
    formula_entries: dict[int, int]  # j -> a_1j from the closed forms
    a11_derived: bool = True
    note: str = "a11 = 1 - sum of off-diagonal entries (row sum 1 of a SICUP matrix) [derived]"

    def matrix(self) -> IntMatrix:
        return circulant_from_first_row(self.row)


def _half(total: int) -> int:
    assert total % 2 == 0, f"odd numerator {total}"
    return total // 2


def closed_form_first_row(p: SigmaParams) -> ClosedFormRow:
    """First row of the target matrix from the closed-form linking numbers.

    a_12 = (c_1 + c_{m+1} + c_{m-1} + c_{2m-1} - c_m + 1) / 2
    a_1j = (c_{j-1} + c_{m+j-1} + c_{m-j+1} + c_{2m-j+1}) / 2,  3 <= j <= ceil((m+1)/2)
    The remaining entries follow from a_1j = a_1,(m+2-j).
    """
    m, c = p.m, p.cj
    if m == 1:
        return ClosedFormRow((1,), {})
    formula: dict[int, int] = {2: _half(c(1) + c(m + 1) + c(m - 1) + c(2 * m - 1) - c(m) + 1)}
    for j in range(3, (m + 2) // 2 + 1):
        formula[j] = _half(c(j - 1) + c(m + j - 1) + c(m - j + 1) + c(2 * m - j + 1))
    row = [0] * (m + 1)  # 1-based
    for j, v in formula.items():
        row[j] = v
        row[m + 2 - j] = v
    row[1] = 1 - sum(row[2:])
    return ClosedFormRow(tuple(row[1:]), formula)


def brute_force_linking(p: SigmaParams) -> IntMatrix:
    """Linking matrix of the closure of sigma^m, diagonal by the row-sum rule with framing +1."""
    ct = compiled_sigma(p)
    return linking_matrix_of_closure(power(ct.word, p.m), base_framing=1).matrix


@dataclass(frozen=True)
class TorusCertificate:
    p: int
    q: int
    genus: int
    strand_positions: tuple[int, ...]
    self_crossings: dict[str, int]
    method: str = "region"  # "region" | "writhe"

    @property
    def knot_class(self) -> KnotClass:
        return torus_class(self.q)

    def as_dict(self) -> dict:
        return {
            "type": f"T({self.p},{self.q})",
            "genus": self.genus,
            "strand_positions": list(self.strand_positions),
            "self_crossings_by_region": dict(self.self_crossings),
            "method": self.method,
        }


def identify_L1(p: SigmaParams) -> TorusCertificate:
    """Certify that component 1 of closure(sigma^m) is T(2, c_m).

    Component 1 must run through exactly two strand positions. The region
    certificate asks that all of its self-crossings come from the c_m box with
    signed total c_m. Failing that, the sub-braid on the two strands is
    sigma_1^q for the total self-writhe q, so T(2, q) is accepted when it is
    the same knot as T(2, c_m) (only possible when |q| = |c_m| = 1).
    """
    ct = compiled_sigma(p)
    w = power(ct.word, p.m)
    comps = closure_components(w)
    positions = tuple(comps.positions(1))
    if len(positions) != 2:
        raise CertificateError(f"component 1 uses {len(positions)} strand positions, expected 2")
    by_region = self_crossings_by_region(ct, p.m, 1)
    cm = p.cj(p.m)
    target = f"c{p.m}"
    offending = [(label, s) for label, s in sorted(by_region.items()) if label != target and s != 0]
    q = by_region.get(target, 0)
    if not offending and q == cm:
        return TorusCertificate(2, q, (abs(q) - 1) // 2, positions, by_region, "region")
    total = sum(by_region.values())
    if torus_class(total) == torus_class(cm):
        return TorusCertificate(2, cm, (abs(cm) - 1) // 2, positions, by_region, "writhe")
    if offending:
        label, s = offending[0]
        raise CertificateError(
            f"component 1 has {s} signed self-crossings in region {label}, outside {target}; "
            f"it is T(2,{total}), not T(2,{cm})",
            label,
        )
    raise CertificateError(f"self-crossing total {q} in {target} differs from c_m = {cm}", target)


def diagram_component_class(w: BraidWord, component: int) -> Optional[KnotClass]:
    """Knot type of a closure component read off the diagram when it has at most two strands."""
    q = component_torus_type(w, component)
    return None if q is None else torus_class(q)


@dataclass(frozen=True)
class AdaptedReport:
    unknot_check: UnknotCheck
    linking_match: bool
    nu_condition: AdaptedCondition
    verdict: bool
    target_matrix: IntMatrix
    computed_matrix: IntMatrix
    l1_class: Optional[str] = None
    l1_source: str = ""
    warnings: tuple[str, ...] = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "unknot_check": self.unknot_check.as_dict(),
            "linking_match": self.linking_match,
            "nu_condition": self.nu_condition.as_dict(),
            "verdict": self.verdict,
            "target_matrix": self.target_matrix.to_list(),
            "computed_matrix": self.computed_matrix.to_list(),
            "l1_class": self.l1_class,
            "l1_source": self.l1_source,
            "warnings": list(self.warnings),
        }


def check_adapted_braid(
    w: BraidWord,
    d: int,
    A,
    l1_class: Optional[KnotClass] = None,
    base_framing: int = 1,
    l1_source: str = "user",
) -> AdaptedReport:
    """Adaptedness of a braid to a d x d matrix: unknotted closure, linking matrix
    of closure(w^d) equal to A, and the nu-sharp inequality at a_11.

    Without ``l1_class`` the type of component 1 is read from the diagram when
    possible. A supplied class that disagrees with the diagram is kept but
    produces a warning.
    """
    A = as_matrix(A)
    unknot = unknot_necessary_check(w)
    wd = power(w, d)
    L = linking_matrix_of_closure(wd, base_framing=base_framing).matrix
    warnings = []
    diagram = diagram_component_class(wd, 1)
    if l1_class is None:
        cls, source = diagram, "diagram"
    else:
        cls, source = l1_class, l1_source
        if diagram is not None and diagram != l1_class:
            warnings.append(f"supplied L1 class {l1_class} differs from diagram-derived {diagram}")
    if cls is None:
        cond = AdaptedCondition("inconclusive", None, "type of component 1 unknown")
    else:
        cond = adapted_inequalities(A[0, 0], nu_sharp(cls))
    match = L == A
    return AdaptedReport(
        unknot,
        match,
        cond,
        unknot.passed and match and cond.satisfied,
        A,
        L,
        None if cls is None else str(cls),
        source,
        tuple(warnings),
    )


def check_adapted(p: SigmaParams, A, l1_class: Optional[KnotClass] = None) -> AdaptedReport:
    """Adaptedness of sigma(p) to A. L1 comes from the T(2, c_m) certificate when it holds."""
    source = "user"
    if l1_class is None:
        try:
            l1_class = identify_L1(p).knot_class
            source = "certificate"
        except CertificateError:
            l1_class = None
    return check_adapted_braid(compiled_sigma(p).word, p.m, A, l1_class, l1_source=source)


def parse_c(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x)


def sigma_from_list(c: Sequence[int]) -> SigmaParams:
    if len(c) % 2 == 0:
        raise ValueError("need an odd number of twist parameters")
    return SigmaParams((len(c) + 1) // 2, tuple(c))
