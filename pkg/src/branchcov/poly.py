"""Integer Laurent polynomials in one variable ``t``.

Only what the knot-invariant code needs: ring operations, exact division,
evaluation, and the Alexander-style normalization (lowest degree 0, leading
coefficient positive).
"""

from __future__ import annotations

from typing import Iterable, Sequence


class InexactDivisionError(ArithmeticError):
    """Raised when a polynomial division leaves a nonzero remainder."""


class IntPoly:
    """Laurent polynomial ``sum(coeffs[k] * t**(low + k))`` with int coefficients.

    Instances are immutable and always stored trimmed: no zero coefficient at
    either end, and the zero polynomial has ``coeffs == ()`` and ``low == 0``.
    """

    __slots__ = ("low", "coeffs")

    def __init__(self, coeffs: Iterable[int] = (), low: int = 0):
        cs = [int(c) for c in coeffs]
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        end = len(cs)
        while end > start and cs[end - 1] == 0:
            end -= 1
        if start == end:
            object.__setattr__(self, "coeffs", ())
            object.__setattr__(self, "low", 0)
        else:
            object.__setattr__(self, "coeffs", tuple(cs[start:end]))
            object.__setattr__(self, "low", low + start)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, exp: int) -> "IntPoly":
        return cls((c,), exp)

    @classmethod
    def t(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> "IntPoly":
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo)

    # -- structure ---------------------------------------------------------

    @property
    def high(self) -> int:
        """Largest exponent with a nonzero coefficient (``low - 1`` for zero)."""
        return self.low + len(self.coeffs) - 1

    @property
    def degree_span(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def terms(self) -> dict[int, int]:
        return {self.low + k: c for k, c in enumerate(self.coeffs) if c}

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.low, self.coeffs))

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)!r}, low={self.low})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.terms().items()):
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "IntPoly":
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int):
            return IntPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to IntPoly")

    def __add__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for k, c in enumerate(self.coeffs):
            out[self.low - lo + k] += c
        for k, c in enumerate(other.coeffs):
            out[other.low - lo + k] += c
        return IntPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs], self.low)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out, self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers only exist for monomials; use shift()")
        result, base = IntPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "IntPoly":
        """Multiply by ``t**k``."""
        return IntPoly(self.coeffs, self.low + k)

    def exact_div(self, other) -> "IntPoly":
        """Quotient in Z[t, 1/t]; raise InexactDivisionError if it does not exist."""
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.coeffs:
            return IntPoly()
        # both operands have nonzero constant term after shifting, so the
        # Laurent quotient (if any) is a genuine polynomial
        num = list(self.coeffs)
        den = other.coeffs
        if len(den) > len(num):
            raise InexactDivisionError(f"{self} is not divisible by {other}")
        lead = den[-1]
        quot = [0] * (len(num) - len(den) + 1)
        for k in range(len(quot) - 1, -1, -1):
            top = num[k + len(den) - 1]
            if top % lead:
                raise InexactDivisionError(f"{self} is not divisible by {other}")
            q = top // lead
            quot[k] = q
            if q:
                for j, d in enumerate(den):
                    num[k + j] -= q * d
        if any(num):
            raise InexactDivisionError(f"{self} is not divisible by {other}")
        return IntPoly(quot, self.low - other.low)

    def __floordiv__(self, other):
        return self.exact_div(other)

    # -- evaluation and normal forms ----------------------------------------

    def __call__(self, x):
        """Evaluate at ``x`` (int, Fraction, float, complex, mpmath numbers)."""
        if not self.coeffs:
            return 0 * x
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.low >= 0:
            return acc * x ** self.low
        return acc / x ** (-self.low)

    def mirror(self) -> "IntPoly":
        """Substitute ``t -> 1/t``."""
        return IntPoly(tuple(reversed(self.coeffs)), -self.high if self.coeffs else 0)

    def normalized(self) -> "IntPoly":
        """Lowest degree 0 and positive leading coefficient (Alexander normal form)."""
        if not self.coeffs:
            return self
        sign = -1 if self.coeffs[-1] < 0 else 1
        return IntPoly([sign * c for c in self.coeffs], 0)

    def is_palindromic(self) -> bool:
        return self.coeffs == tuple(reversed(self.coeffs))

    def equivalent(self, other) -> bool:
        """Equality up to multiplication by a unit ``±t**k``."""
        return self.normalized() == self._coerce(other).normalized()

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def poly_from_coeffs(coeffs: Sequence[int]) -> IntPoly:
    """Build ``c0 + c1 t + c2 t^2 + ...`` from an ascending coefficient list."""
    return IntPoly(coeffs, 0)
