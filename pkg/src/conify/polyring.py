"""Sparse multivariate polynomials over Q with weighted gradings.

A polynomial is a map from exponent tuples to nonzero Fraction coefficients,
tagged with the tuple of variable names that fixes its ring.  Weights are
ExactScalar (so gradings by elements of Q(sqrt(d)) compare exactly), while
coefficients stay rational throughout.

Initial forms follow the minimal-weight convention: initial_form keeps the
terms of least weight, which is the part surviving the substitution
z_i -> t^{w_i} z_i as t -> 0.  The fixed tie-break order everywhere is
graded reverse lexicographic on the declared variable order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import ArityError, ParseError
from .exactnum import ExactScalar

Monomial = tuple[int, ...]


# -- monomial helpers --------------------------------------------------------

def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1, m2))

def mono_div(m1: Monomial, m2: Monomial) -> Monomial:
    """m1 / m2; caller must know m2 divides m1."""
    return tuple(a - b for a, b in zip(m1, m2))

def mono_divides(m1: Monomial, m2: Monomial) -> bool:
    return all(a <= b for a, b in zip(m1, m2))

def mono_lcm(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(m1, m2))

def mono_degree(m: Monomial) -> int:
    return sum(m)


def grevlex_cmp(m1: Monomial, m2: Monomial) -> int:
    """Graded reverse lexicographic comparison; positive when m1 > m2."""
    d1, d2 = sum(m1), sum(m2)
    if d1 != d2:
        return 1 if d1 > d2 else -1
    for a, b in zip(reversed(m1), reversed(m2)):
        if a != b:
            return 1 if a < b else -1
    return 0


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class TermOrder:
    """grevlex, optionally refined by a weight vector and an elimination block.

    Comparison: (1) total degree in the first `elim` variables, grevlex within
    the block as tie-break; (2) weight of the full monomial, larger first;
    (3) grevlex over all variables.  Weights must all be positive so the order
    is global.  Keys are memoized per monomial; larger key = larger monomial.
    """

    nvars: int
    weights: tuple[ExactScalar, ...] | None = None
    elim: int = 0

    def __post_init__(self):
        if self.weights is not None:
            if len(self.weights) != self.nvars:
                raise ArityError("weight vector length does not match ring arity")
            ws = tuple(ExactScalar.of(w) for w in self.weights)
            if any(w.sign() <= 0 for w in ws):
                raise ValueError("order weights must be strictly positive")
            object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "_cache", {})

    def key(self, m: Monomial):
        cache = self._cache
        hit = cache.get(m)
        if hit is not None:
            return hit
        parts: list = []
        if self.elim:
            parts.append(_grevlex_key(m[: self.elim]))
        if self.weights is not None:
            total = ExactScalar.of(0)
            for w, e in zip(self.weights, m):
                if e:
                    total = total + w * e
            parts.append(total)
        parts.append(_grevlex_key(m))
        result = tuple(parts)
        cache[m] = result
        return result

    def cmp(self, m1: Monomial, m2: Monomial) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        if k1 == k2:
            return 0
        return 1 if k1 > k2 else -1

    def sort_key(self):
        return self.key


GREVLEX_CACHE: dict[int, TermOrder] = {}

def grevlex(nvars: int) -> TermOrder:
    if nvars not in GREVLEX_CACHE:
        GREVLEX_CACHE[nvars] = TermOrder(nvars)
    return GREVLEX_CACHE[nvars]


# -- polynomials --------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Immutable sparse polynomial over Q in named variables."""

    ring: tuple[str, ...]
    terms: dict[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mono, coeff in self.terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if len(mono) != len(self.ring):
                raise ArityError(f"monomial {mono} has wrong arity for ring {self.ring}")
            clean[tuple(mono)] = coeff
        object.__setattr__(self, "terms", clean)

    # constructors
    @staticmethod
    def zero(ring: Iterable[str]) -> "Polynomial":
        return Polynomial(tuple(ring), {})

    @staticmethod
    def constant(ring: Iterable[str], value) -> "Polynomial":
        ring = tuple(ring)
        return Polynomial(ring, {(0,) * len(ring): Fraction(value)})

    @staticmethod
    def variable(ring: Iterable[str], name: str) -> "Polynomial":
        ring = tuple(ring)
        idx = ring.index(name)
        expo = [0] * len(ring)
        expo[idx] = 1
        return Polynomial(ring, {tuple(expo): Fraction(1)})

    @staticmethod
    def from_term(ring: Iterable[str], mono: Monomial, coeff) -> "Polynomial":
        return Polynomial(tuple(ring), {tuple(mono): Fraction(coeff)})

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ArityError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # arithmetic
    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coeff
        return Polynomial(self.ring, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_ring(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, value) -> "Polynomial":
        value = Fraction(value)
        return Polynomial(self.ring, {m: c * value for m, c in self.terms.items()})

    def mul_term(self, mono: Monomial, coeff) -> "Polynomial":
        coeff = Fraction(coeff)
        return Polynomial(self.ring, {mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    def derivative(self, var_index: int) -> "Polynomial":
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[var_index]
            if e == 0:
                continue
            dm = list(m)
            dm[var_index] = e - 1
            key = tuple(dm)
            out[key] = out.get(key, Fraction(0)) + c * e
        return Polynomial(self.ring, out)

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    # order-dependent views
    def leading_monomial(self, order: TermOrder) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: TermOrder) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: TermOrder) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coeff(order)
        return self.scale(Fraction(1) / lc)

    def sorted_terms(self, order: TermOrder | None = None) -> list[tuple[Monomial, Fraction]]:
        order = order or grevlex(len(self.ring))
        key = order.sort_key()
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.sorted_terms())

    # substitution helpers used by the degeneration machinery
    def set_variable(self, var_index: int, value) -> "Polynomial":
        """Substitute a rational constant for one variable (ring unchanged)."""
        value = Fraction(value)
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[var_index]
            nm = list(m)
            nm[var_index] = 0
            coeff = c * value**e
            if coeff == 0:
                continue
            key = tuple(nm)
            out[key] = out.get(key, Fraction(0)) + coeff
        return Polynomial(self.ring, out)

    def drop_variable(self, var_index: int) -> "Polynomial":
        """Remove a variable that no term uses."""
        ring = self.ring[:var_index] + self.ring[var_index + 1:]
        out = {}
        for m, c in self.terms.items():
            if m[var_index] != 0:
                raise ValueError(f"variable {self.ring[var_index]} still occurs")
            out[m[:var_index] + m[var_index + 1:]] = c
        return Polynomial(ring, out)

    def extend_ring(self, ring: tuple[str, ...]) -> "Polynomial":
        """Reinterpret in a larger ring containing the current variables."""
        pos = [ring.index(v) for v in self.ring]
        out = {}
        for m, c in self.terms.items():
            nm = [0] * len(ring)
            for p, e in zip(pos, m):
                nm[p] = e
            out[tuple(nm)] = c
        return Polynomial(ring, out)

    # printing
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


# -- weighted gradings --------------------------------------------------------

@dataclass(frozen=True)
class WeightData:
    """Positive weights for the ring variables, plus family metadata.

    `weights` grades the z-variables; when `t_weight` (the positive integer w
    with t scaling as lambda^{-w}) is present, a trailing t-variable carries
    weight -t_weight.  `form_weight` is the weight of the symplectic form when
    the input carries one.
    """

    weights: tuple[ExactScalar, ...]
    t_weight: Fraction | None = None
    form_weight: Fraction | None = None

    def __post_init__(self):
        ws = tuple(ExactScalar.of(w) for w in self.weights)
        if any(w.sign() <= 0 for w in ws):
            raise ValueError("all weights must be strictly positive")
        object.__setattr__(self, "weights", ws)
        if self.t_weight is not None:
            tw = Fraction(self.t_weight)
            if tw <= 0:
                raise ValueError("t-weight must be positive")
            object.__setattr__(self, "t_weight", tw)
        if self.form_weight is not None:
            fw = Fraction(self.form_weight)
            if fw <= 0:
                raise ValueError("form weight must be positive")
            object.__setattr__(self, "form_weight", fw)

    def integer_weights(self) -> tuple[int, ...]:
        out = []
        for w in self.weights:
            f = w.as_fraction()
            if f.denominator != 1:
                raise ValueError("integer weights required")
            out.append(f.numerator)
        return tuple(out)

    def full_vector(self, arity: int) -> tuple[ExactScalar, ...]:
        """Weight per ring position; supports an optional trailing t."""
        if arity == len(self.weights):
            return self.weights
        if arity == len(self.weights) + 1 and self.t_weight is not None:
            return self.weights + (ExactScalar.of(-self.t_weight),)
        raise ArityError(f"cannot grade arity {arity} with {len(self.weights)} weights")


def term_weight(mono: Monomial, wd: WeightData) -> ExactScalar:
    """Weighted degree of a monomial; a trailing t counts with -t_weight."""
    vec = wd.full_vector(len(mono))
    total = ExactScalar.of(0)
    for w, e in zip(vec, mono):
        if e:
            total = total + w * e
    return total


def initial_form(f: Polynomial, wd: WeightData) -> Polynomial:
    """Sum of the terms of minimal weight."""
    if f.is_zero():
        raise ValueError("zero polynomial has no initial form")
    best: ExactScalar | None = None
    picked: dict[Monomial, Fraction] = {}
    for mono, coeff in f.terms.items():
        w = term_weight(mono, wd)
        if best is None or (w - best).sign() < 0:
            best = w
            picked = {mono: coeff}
        elif (w - best).sign() == 0:
            picked[mono] = coeff
    return Polynomial(f.ring, picked)


def homogeneous_weight(f: Polynomial, wd: WeightData) -> ExactScalar | None:
    """Common weight of all terms, or None if the terms disagree.

    The zero polynomial is homogeneous of every weight; use is_homogeneous
    to distinguish that case from a genuine disagreement.
    """
    value: ExactScalar | None = None
    for mono in f.terms:
        w = term_weight(mono, wd)
        if value is None:
            value = w
        elif (w - value).sign() != 0:
            return None
    return value


def is_homogeneous(f: Polynomial, wd: WeightData) -> bool:
    if f.is_zero():
        return True
    return homogeneous_weight(f, wd) is not None


# -- polynomial parsing --------------------------------------------------------

_NUM_CHARS = set("0123456789")


def _tokenize(text: str, line: int | None):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        col = i + 1
        if ch in "+-*^":
            tokens.append((ch, ch, col))
            i += 1
        elif ch in _NUM_CHARS:
            j = i
            while j < n and text[j] in _NUM_CHARS:
                j += 1
            if j < n and text[j] == "/":
                k = j + 1
                while k < n and text[k] in _NUM_CHARS:
                    k += 1
                if k == j + 1:
                    raise ParseError("missing denominator", line, j + 1)
                tokens.append(("num", Fraction(int(text[i:j]), int(text[j + 1:k])), col))
                i = k
            else:
                tokens.append(("num", Fraction(int(text[i:j])), col))
                i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], col))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    return tokens


def parse_polynomial(text: str, ring: Iterable[str], line: int | None = None) -> Polynomial:
    """Parse `+ - * ^` polynomial syntax with explicit multiplication."""
    ring = tuple(ring)
    tokens = _tokenize(text, line)
    if not tokens:
        raise ParseError("empty polynomial", line)
    result = Polynomial.zero(ring)
    i = 0
    n = len(tokens)
    while i < n:
        sign = 1
        while i < n and tokens[i][0] in "+-":
            if tokens[i][0] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign", line, tokens[-1][2])
        coeff = Fraction(sign)
        expo = [0] * len(ring)
        expect_factor = True
        while i < n:
            kind, value, col = tokens[i]
            if kind in "+-" and not expect_factor:
                break
            if kind == "num":
                coeff *= value
                i += 1
            elif kind == "name":
                if value not in ring:
                    raise ParseError(f"unknown variable {value!r}", line, col)
                idx = ring.index(value)
                power = 1
                i += 1
                if i < n and tokens[i][0] == "^":
                    i += 1
                    if i >= n or tokens[i][0] != "num" or tokens[i][1].denominator != 1:
                        raise ParseError("exponent must be an integer", line, col)
                    power = tokens[i][1].numerator
                    if power < 0:
                        raise ParseError("negative exponent", line, col)
                    i += 1
                expo[idx] += power
            else:
                raise ParseError(f"unexpected token {value!r}", line, col)
            expect_factor = False
            if i < n and tokens[i][0] == "*":
                i += 1
                expect_factor = True
                continue
            if i < n and tokens[i][0] in "+-":
                break
            if i < n and tokens[i][0] not in "+-":
                raise ParseError("missing '*' between factors", line, tokens[i][2])
        if expect_factor:
            raise ParseError("dangling '*'", line)
        result = result + Polynomial.from_term(ring, tuple(expo), coeff)
    return result
