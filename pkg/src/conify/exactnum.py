"""Exact arithmetic over Q and over a real quadratic field Q(sqrt(d)).

A scalar is a + b*sqrt(d) with rational a, b and a fixed squarefree d >= 2.
Pure rationals carry d = 0 and mix freely with any field; two scalars with
irrational parts must share the same d.  All comparisons are exact: the sign
of a + b*sqrt(d) is decided from the signs of a and b and an integer
comparison of a^2 against b^2*d.  No floating point enters any decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import FieldMismatchError, ParseError

RationalLike = int | Fraction


def _is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class ExactScalar:
    """An element a + b*sqrt(d) of Q(sqrt(d)), canonical and immutable."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.b == 0:
            object.__setattr__(self, "d", 0)
        else:
            if not _is_squarefree(self.d):
                raise ValueError(f"radicand must be squarefree and >= 2, got {self.d}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(value: RationalLike | "ExactScalar") -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        return ExactScalar(Fraction(value))

    @staticmethod
    def root(d: int, coeff: RationalLike = 1) -> "ExactScalar":
        """The scalar coeff*sqrt(d)."""
        return ExactScalar(Fraction(0), Fraction(coeff), d)

    # -- predicates --------------------------------------------------------

    def is_rational(self) -> bool:
        return self.b == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    # -- field structure ---------------------------------------------------

    def _join(self, other: "ExactScalar") -> int:
        """Common radicand for a binary operation, or raise."""
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise FieldMismatchError(f"cannot combine sqrt({self.d}) with sqrt({other.d})")

    def __add__(self, other) -> "ExactScalar":
        other = ExactScalar.of(other)
        d = self._join(other)
        return ExactScalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.a, -self.b, self.d)

    def __sub__(self, other) -> "ExactScalar":
        return self + (-ExactScalar.of(other))

    def __rsub__(self, other) -> "ExactScalar":
        return ExactScalar.of(other) + (-self)

    def __mul__(self, other) -> "ExactScalar":
        other = ExactScalar.of(other)
        d = self._join(other)
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return ExactScalar(a, b, d)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        # 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)
        norm = self.a * self.a - self.b * self.b * self.d
        return ExactScalar(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other) -> "ExactScalar":
        return self * ExactScalar.of(other).inverse()

    def __rtruediv__(self, other) -> "ExactScalar":
        return ExactScalar.of(other) * self.inverse()

    # -- exact order -------------------------------------------------------

    def sign(self) -> int:
        """Sign of the real number a + b*sqrt(d), in {-1, 0, +1}."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: |a| vs |b|*sqrt(d) decided by squaring
        lhs = self.a * self.a
        rhs = self.b * self.b * self.d
        if lhs == rhs:  # impossible for squarefree d, kept for safety
            return 0
        return sa if lhs > rhs else sb

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.of(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b and (self.b == 0 or self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other) -> bool:
        return (self - ExactScalar.of(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - ExactScalar.of(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - ExactScalar.of(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - ExactScalar.of(other)).sign() >= 0

    def __abs__(self) -> "ExactScalar":
        return -self if self.sign() < 0 else self

    # -- integer bracketing (no floats) -------------------------------------

    def floor(self) -> int:
        if self.b == 0:
            return self.a.numerator // self.a.denominator
        p, q = abs(self.b.numerator), self.b.denominator
        # floor(sqrt(p^2 d)/q) via integer square root
        root = isqrt((p * p * self.d) // (q * q))
        irr_floor = root if self.b > 0 else -(root + 1)
        n = self.a.numerator // self.a.denominator + irr_floor
        # candidate window is [n, n+2); fix up exactly
        while (self - (n + 1)).sign() >= 0:
            n += 1
        while (self - n).sign() < 0:
            n -= 1
        return n

    def ceil(self) -> int:
        return -(-self).floor()

    def nearest_int(self) -> int:
        """Nearest integer, ties rounded up."""
        return (self + Fraction(1, 2)).floor()

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.d**0.5

    # -- printing and parsing ----------------------------------------------

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        rad = f"sqrt({self.d})"
        irr = rad if self.b == 1 else (f"-{rad}" if self.b == -1 else f"{self.b}*{rad}")
        if self.a == 0:
            return irr
        joiner = "" if irr.startswith("-") else "+"
        return f"{self.a}{joiner}{irr}"

    def __repr__(self) -> str:
        return f"ExactScalar({self})"


def parse_scalar(text: str, d: int = 0) -> ExactScalar:
    """Parse `a/b`, `c/e*s`, `a/b + c/e*s` (and sqrt(d) spelled out).

    `s` denotes sqrt(d) for the d declared by the caller; a bare `s` or
    `sqrt(d)` has implicit coefficient 1.  Raises ParseError on malformed
    input or when a radical appears with no declared field.
    """
    src = text.strip()
    if not src:
        raise ParseError("empty scalar")
    # split into one or two signed terms at top level
    terms: list[str] = []
    start = 0
    for i, ch in enumerate(src):
        if ch in "+-" and i > start and src[i - 1] not in "+-*/(":
            terms.append(src[start:i])
            start = i
    terms.append(src[start:])
    if len(terms) > 2:
        raise ParseError(f"too many terms in scalar {text!r}")

    a = Fraction(0)
    b = Fraction(0)
    seen_rad = False
    for term in terms:
        term = term.replace(" ", "")
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ParseError(f"dangling sign in scalar {text!r}")
        coeff = Fraction(1)
        radical = False
        body = term
        if "*" in body:
            head, _, tail = body.partition("*")
            try:
                coeff = Fraction(head)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad coefficient {head!r} in scalar {text!r}")
            body = tail
        if body in ("s",) or body.startswith("sqrt(") and body.endswith(")"):
            radical = True
            if body.startswith("sqrt("):
                try:
                    rad_val = int(body[5:-1])
                except ValueError:
                    raise ParseError(f"bad radical {body!r} in scalar {text!r}")
                if d and rad_val != d:
                    raise ParseError(f"radical sqrt({rad_val}) does not match field sqrt({d})")
                if not d:
                    d = rad_val
        else:
            try:
                coeff = coeff * Fraction(body)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad number {body!r} in scalar {text!r}")
        if radical:
            if seen_rad:
                raise ParseError(f"two radical terms in scalar {text!r}")
            if not d:
                raise ParseError(f"radical used in {text!r} but no quadratic field declared")
            seen_rad = True
            b += sign * coeff
        else:
            a += sign * coeff
    return ExactScalar(a, b, d if seen_rad else 0)


def sign(q: ExactScalar) -> int:
    """Module-level alias for ExactScalar.sign."""
    return ExactScalar.of(q).sign()
