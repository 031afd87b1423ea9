"""nu-sharp bookkeeping and the decision predicates built on it.

Nothing here computes instanton Floer homology. nu-sharp values and V/W shapes
come from three sources only: the torus knot rule nu(T(2,q)) = q - 2, the
mirror rule nu(mirror K) = -nu(K) with shape preserved, and a JSON catalog.
Unknown data stays unknown and makes the predicates inconclusive.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional, Sequence, Union

from .matrices import as_matrix, det_exact, is_negative_definite

CATALOG_ENV = "BRANCHCOV_NU_CATALOG"

SHAPES = ("V", "W")


class InconclusiveError(ValueError):
    """The nu-sharp data needed for a decision is missing."""


class NotNegativeDefiniteError(ValueError):
    pass


class NotUnimodularError(ValueError):
    pass


class NotSymmetricMatrixError(ValueError):
    pass


# -- knot classes -------------------------------------------------------------


@dataclass(frozen=True)
class Unknot:
    def __str__(self):
        return "Unknot"


@dataclass(frozen=True)
class Torus2:
    """The positive torus knot T(2, q), q odd and at least 3."""

    q: int

    def __post_init__(self):
        if self.q < 3 or self.q % 2 == 0:
            raise ValueError(f"Torus2 needs odd q >= 3, got {self.q}")

    def __str__(self):
        return f"Torus2({self.q})"


@dataclass(frozen=True)
class CatalogEntry:
    name: str

    def __str__(self):
        return f"CatalogEntry({self.name})"


@dataclass(frozen=True)
class Unknown:
    name: str = "?"

    def __str__(self):
        return f"Unknown({self.name})"


@dataclass(frozen=True)
class Mirror:
    of: "KnotClass"

    def __str__(self):
        return f"Mirror({self.of})"


KnotClass = Union[Unknot, Torus2, CatalogEntry, Unknown, Mirror]


def mirror(k: KnotClass) -> KnotClass:
    """Mirror image, with Mirror(Mirror(k)) collapsed to k and the unknot fixed."""
    if isinstance(k, Mirror):
        return k.of
    if isinstance(k, Unknot):
        return k
    return Mirror(k)


def torus_class(q: int) -> KnotClass:
    """T(2, q) for any odd q, as a normalized KnotClass."""
    if q % 2 == 0:
        raise ValueError(f"T(2, {q}) is a link, not a knot")
    if abs(q) == 1:
        return Unknot()
    return Torus2(q) if q > 0 else Mirror(Torus2(-q))


def parse_knot_class(text: str) -> KnotClass:
    """Parse ``Unknot``, ``Torus2(5)``, ``Mirror(...)``, ``Unknown(x)`` or a bare catalog name."""
    s = text.strip()
    if s.lower() == "unknot":
        return Unknot()
    head, sep, rest = s.partition("(")
    if sep and rest.endswith(")"):
        arg = rest[:-1].strip()
        h = head.strip().lower()
        if h == "torus2":
            return Torus2(int(arg))
        if h == "mirror":
            return mirror(parse_knot_class(arg))
        if h == "unknown":
            return Unknown(arg)
        if h in ("catalog", "catalogentry"):
            return CatalogEntry(arg)
        raise ValueError(f"unknown knot class {head!r}")
    return CatalogEntry(s)


# -- catalog ------------------------------------------------------------------


@dataclass(frozen=True)
class NuSharpInfo:
    nu: Optional[int]
    shape: Optional[str]
    provenance: str = ""

    def __post_init__(self):
        if self.shape is not None and self.shape not in SHAPES:
            raise ValueError(f"shape must be V or W, got {self.shape!r}")
        if self.nu is not None and self.nu != 0:
            if self.shape == "W":
                raise ValueError("a knot with nonzero nu-sharp is V-shaped")
            if self.shape is None:
                object.__setattr__(self, "shape", "V")

    @property
    def known(self) -> bool:
        return self.nu is not None and (self.nu != 0 or self.shape is not None)

    def mirrored(self) -> "NuSharpInfo":
        nu = None if self.nu is None else -self.nu
        return NuSharpInfo(nu, self.shape, f"mirror of [{self.provenance}]")

    def as_dict(self) -> dict:
        return {"nu": self.nu, "shape": self.shape, "provenance": self.provenance}


def _parse_catalog(raw: dict, source: str) -> dict[str, NuSharpInfo]:
    out = {}
    for name, entry in raw.items():
        nu = entry.get("nu")
        shape = entry.get("shape")
        if nu == 0 and shape is None:
            raise ValueError(f"catalog entry {name!r}: nu = 0 needs an explicit shape")
        out[name] = NuSharpInfo(None if nu is None else int(nu), shape, f"catalog:{name} ({source})")
    return out


@lru_cache(maxsize=None)
def _load_catalog_cached(path: Optional[str]) -> dict[str, NuSharpInfo]:
    if path is None:
        text = resources.files("branchcov").joinpath("data/nu_catalog.json").read_text()
        source = "bundled"
    else:
        with open(path) as fh:
            text = fh.read()
        source = path
    return _parse_catalog(json.loads(text), source)


def load_catalog(path: Optional[str] = None) -> dict[str, NuSharpInfo]:
    """Catalog from ``path``, else the environment override, else the bundled file."""
    return dict(_load_catalog_cached(path or os.environ.get(CATALOG_ENV) or None))


def nu_sharp(k: KnotClass, catalog: Optional[dict[str, NuSharpInfo]] = None) -> NuSharpInfo:
    if isinstance(k, Unknot):
        return NuSharpInfo(0, "V", "unknot")
    if isinstance(k, Torus2):
        return NuSharpInfo(k.q - 2, "V", f"torus rule: nu(T(2,{k.q})) = {k.q} - 2")
    if isinstance(k, Mirror):
        return nu_sharp(k.of, catalog).mirrored()
    if isinstance(k, CatalogEntry):
        cat = load_catalog() if catalog is None else catalog
        if k.name in cat:
            return cat[k.name]
        return NuSharpInfo(None, None, f"catalog miss: {k.name}")
    if isinstance(k, Unknown):
        return NuSharpInfo(None, None, f"unknown: {k.name}")
    raise TypeError(f"not a knot class: {k!r}")


# -- predicates ---------------------------------------------------------------


def trace_map_trivial(info: NuSharpInfo, n: int) -> bool:
    """Whether the n-trace cobordism map vanishes, from nu-sharp and shape."""
    if info.nu is None:
        raise InconclusiveError("nu-sharp unknown")
    if info.nu != 0:
        return n >= info.nu
    if info.shape == "V":
        return n >= -1
    if info.shape == "W":
        return n >= 1
    raise InconclusiveError("nu-sharp is 0 but the shape is unknown")


def triviality_threshold(info: NuSharpInfo) -> int:
    """Least n with a trivial trace map."""
    if info.nu is None or (info.nu == 0 and info.shape is None):
        raise InconclusiveError("insufficient nu-sharp data")
    if info.nu != 0:
        return info.nu
    return -1 if info.shape == "V" else 1


def _case_for(a: int, info: NuSharpInfo) -> tuple[Optional[int], str]:
    """(case, reason) for the negative-definite side at a single diagonal entry."""
    if info.nu is None:
        return None, "inconclusive: nu-sharp unknown"
    if info.nu != 0:
        if a >= info.nu:
            return 1, f"case 1: {a} >= {info.nu}"
        return None, f"{a} < nu = {info.nu}"
    if info.shape == "V":
        return (2, f"case 2: {a} >= -1") if a >= -1 else (None, f"{a} < -1 (nu = 0, V)")
    if info.shape == "W":
        return (3, f"case 3: {a} >= 1") if a >= 1 else (None, f"{a} < 1 (nu = 0, W)")
    return None, "inconclusive: nu = 0 with unknown shape"


@dataclass(frozen=True)
class ThmNuVerdict:
    applies: bool
    witness_index: Optional[int] = None  # 1-based
    case: Optional[int] = None
    failures: tuple[str, ...] = ()
    inconclusive: bool = False

    def as_dict(self) -> dict:
        return {
            "applies": self.applies,
            "witness_index": self.witness_index,
            "case": self.case,
            "failures": list(self.failures),
            "inconclusive": self.inconclusive,
        }


def thm_nu_applies(A, components: Sequence[NuSharpInfo]) -> ThmNuVerdict:
    """Check the hypotheses for a negative definite unimodular surgery matrix.

    Applies when some diagonal entry a_ii with component data nu_i satisfies
    one of: nu_i != 0 and a_ii >= nu_i; nu_i = 0, V-shaped and a_ii >= -1;
    nu_i = 0, W-shaped and a_ii >= 1. The first such index is the witness.
    """
    A = as_matrix(A)
    if not A.is_symmetric():
        raise NotSymmetricMatrixError("matrix is not symmetric")
    if len(components) != A.dim:
        raise ValueError(f"{len(components)} components for a {A.dim}x{A.dim} matrix")
    det = det_exact(A)
    if abs(det) != 1:
        raise NotUnimodularError(f"det = {det}, not +-1")
    if not is_negative_definite(A):
        raise NotNegativeDefiniteError("matrix is not negative definite")
    failures = []
    unknown = False
    for i, info in enumerate(components):
        case, reason = _case_for(A[i, i], info)
        if case is not None:
            return ThmNuVerdict(True, i + 1, case, tuple(failures))
        if reason.startswith("inconclusive"):
            unknown = True
        failures.append(f"index {i + 1}: {reason}")
    return ThmNuVerdict(False, None, None, tuple(failures), inconclusive=unknown)


@dataclass(frozen=True)
class AdaptedCondition:
    status: str  # satisfied | violated | inconclusive
    case: Optional[int] = None
    reason: str = ""

    @property
    def satisfied(self) -> bool:
        return self.status == "satisfied"

    def as_dict(self) -> dict:
        return {"status": self.status, "case": self.case, "reason": self.reason}


def adapted_inequalities(a11: int, info: NuSharpInfo) -> AdaptedCondition:
    """Positive-definite mirror of :func:`thm_nu_applies` at one index.

    Case 1: nu != 0 and a <= nu.  Case 2: nu = 0, V and a <= nu + 1.
    Case 3: nu = 0, W and a <= nu - 1.
    """
    if info.nu is None:
        return AdaptedCondition("inconclusive", None, "nu-sharp unknown")
    if info.nu != 0:
        if a11 <= info.nu:
            return AdaptedCondition("satisfied", 1, f"{a11} <= {info.nu}")
        return AdaptedCondition("violated", None, f"{a11} > nu = {info.nu}")
    if info.shape is None:
        return AdaptedCondition("inconclusive", None, "nu = 0 with unknown shape")
    if info.shape == "V":
        ok = a11 <= 1
        return AdaptedCondition("satisfied" if ok else "violated", 2 if ok else None, f"{a11} {'<=' if ok else '>'} 1 (nu = 0, V)")
    ok = a11 <= -1
    return AdaptedCondition("satisfied" if ok else "violated", 3 if ok else None, f"{a11} {'<=' if ok else '>'} -1 (nu = 0, W)")


@dataclass(frozen=True)
class CoverFactorization:
    g: int
    d_prime: int
    coprime: bool  # gcd(w, d_prime) == 1

    def as_dict(self) -> dict:
        return {"g": self.g, "d_prime": self.d_prime, "coprime": self.coprime}


def cover_factorization(d: int, w: int) -> CoverFactorization:
    """g = gcd(w, d) and d' = d / g, reporting whether gcd(w, d') = 1 actually holds."""
    if d <= 0:
        raise ValueError(f"d must be positive, got {d}")
    g = math.gcd(w, d)
    dp = d // g
    return CoverFactorization(g, dp, math.gcd(w, dp) == 1)
