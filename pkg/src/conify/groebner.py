"""Buchberger's algorithm with reduced bases, elimination, saturation, quotients.

Pair selection follows the normal strategy (smallest lcm in the term order)
with the coprimality and chain criteria.  All results are returned as unique
reduced bases sorted by leading monomial, so equal ideals compare equal.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityError, BudgetExceededError
from .polyring import (
    Monomial,
    Polynomial,
    TermOrder,
    WeightData,
    grevlex,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


@dataclass(frozen=True)
class IdealPresentation:
    """An ideal given by generators, with optional weight metadata."""

    ring: tuple[str, ...]
    generators: tuple[Polynomial, ...]
    weights: WeightData | None = None

    def __post_init__(self):
        object.__setattr__(self, "ring", tuple(self.ring))
        gens = []
        for g in self.generators:
            if g.ring != self.ring:
                raise ArityError(f"generator ring {g.ring} differs from ideal ring {self.ring}")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis together with its term order."""

    ring: tuple[str, ...]
    elements: tuple[Polynomial, ...]
    order: TermOrder

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.elements) + "}"


# -- division ------------------------------------------------------------------

def division(f: Polynomial, divisors: list[Polynomial], order: TermOrder):
    """Full multivariate division: f = sum(q_i d_i) + r with no term of r
    divisible by any leading term of the divisors.  Returns (quotients, r)."""
    key = order.key
    leads = []
    for i, d in enumerate(divisors):
        if d.is_zero():
            continue
        lm = max(d.terms, key=key)
        leads.append((lm, d.terms[lm], d.terms, i))
    work = dict(f.terms)
    remainder: dict = {}
    raw_quotients: list[dict] = [{} for _ in divisors]
    zero = Fraction(0)
    while work:
        lm = max(work, key=key)
        lc = work.pop(lm)
        for lead_m, lead_c, dterms, qi in leads:
            if mono_divides(lead_m, lm):
                factor = mono_div(lm, lead_m)
                coeff = lc / lead_c
                for m2, c2 in dterms.items():
                    if m2 == lead_m:
                        continue
                    target = mono_mul(m2, factor)
                    value = work.get(target, zero) - coeff * c2
                    if value:
                        work[target] = value
                    else:
                        work.pop(target, None)
                raw_quotients[qi][factor] = raw_quotients[qi].get(factor, zero) + coeff
                break
        else:
            remainder[lm] = lc
    quotients = [Polynomial(f.ring, q) for q in raw_quotients]
    return quotients, Polynomial(f.ring, remainder)


def normal_form(f: Polynomial, basis: GroebnerBasis | list[Polynomial], order: TermOrder | None = None) -> Polynomial:
    """Remainder of f on division by a basis (unique for a Groebner basis)."""
    if isinstance(basis, GroebnerBasis):
        if f.ring != basis.ring:
            raise ArityError(f"ring mismatch: {f.ring} vs {basis.ring}")
        divisors, order = list(basis.elements), basis.order
    else:
        divisors = list(basis)
        order = order or grevlex(len(f.ring))
    if not divisors:
        return f
    _, r = division(f, divisors, order)
    return r


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f for f dividing g exactly; raises otherwise."""
    order = grevlex(len(g.ring))
    (q,), r = division(g, [f], order)
    if not r.is_zero():
        raise ValueError(f"{f} does not divide {g}")
    return q


# -- Buchberger ----------------------------------------------------------------

def spoly(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(lf, lg)
    mf = f.mul_term(mono_div(lcm, lf), Fraction(1) / f.terms[lf])
    mg = g.mul_term(mono_div(lcm, lg), Fraction(1) / g.terms[lg])
    return mf - mg


def _buchberger(gens: list[Polynomial], order: TermOrder, max_steps: int | None) -> list[Polynomial]:
    key = order.key
    basis: list[Polynomial] = []
    leads: list[Monomial] = []
    for g in gens:
        if not g.is_zero():
            basis.append(g.monic(order))
            leads.append(g.leading_monomial(order))
    heap: list = []
    done: set[tuple[int, int]] = set()

    def push(i: int, j: int):
        lcm = mono_lcm(leads[i], leads[j])
        heapq.heappush(heap, (key(lcm), i, j, lcm))

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            push(i, j)
    steps = 0
    while heap:
        _, i, j, lcm = heapq.heappop(heap)
        done.add((i, j))
        # coprimality criterion
        if lcm == mono_mul(leads[i], leads[j]):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(leads[k], lcm):
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 in done and p2 in done:
                skip = True
                break
        if skip:
            continue
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise BudgetExceededError(f"S-pair budget of {max_steps} exceeded")
        r = normal_form(spoly(basis[i], basis[j], order), basis, order)
        if not r.is_zero():
            new = len(basis)
            basis.append(r.monic(order))
            leads.append(r.leading_monomial(order))
            for k in range(new):
                push(k, new)
    return basis


def _minimalize(basis: list[Polynomial], order: TermOrder) -> list[Polynomial]:
    key = order.sort_key()
    out: list[Polynomial] = []
    for f in sorted(basis, key=lambda g: key(g.leading_monomial(order))):
        lm = f.leading_monomial(order)
        if not any(mono_divides(g.leading_monomial(order), lm) for g in out):
            out.append(f)
    return out


def _interreduce(basis: list[Polynomial], order: TermOrder) -> list[Polynomial]:
    out = []
    for i, f in enumerate(basis):
        rest = basis[:i] + basis[i + 1:]
        r = normal_form(f, rest, order)
        if not r.is_zero():
            out.append(r.monic(order))
    key = order.sort_key()
    return sorted(out, key=lambda g: key(g.leading_monomial(order)))


def reduced_basis(ideal: IdealPresentation, order: TermOrder | None = None,
                  max_steps: int | None = None) -> GroebnerBasis:
    """The unique reduced Groebner basis of the ideal for the order."""
    order = order or grevlex(len(ideal.ring))
    if order.nvars != len(ideal.ring):
        raise ArityError("order arity does not match ring")
    if not ideal.generators:
        return GroebnerBasis(ideal.ring, (), order)
    raw = _buchberger(list(ideal.generators), order, max_steps)
    reduced = _interreduce(_minimalize(raw, order), order)
    return GroebnerBasis(ideal.ring, tuple(reduced), order)


def ideals_equal(a: IdealPresentation, b: IdealPresentation) -> bool:
    """Exact ideal equality via canonical grevlex reduced bases."""
    if a.ring != b.ring:
        raise ArityError("cannot compare ideals in different rings")
    return reduced_basis(a).elements == reduced_basis(b).elements


# -- saturation and quotient -----------------------------------------------------

_FRESH = "_u"


def _fresh_name(ring: tuple[str, ...], base: str) -> str:
    name = base
    while name in ring:
        name += "_"
    return name


def saturate_by_variable(ideal: IdealPresentation, var: str,
                         max_steps: int | None = None) -> IdealPresentation:
    """(I : var^infinity) via a Rees-style inverse variable and elimination."""
    if var not in ideal.ring:
        raise ArityError(f"{var!r} is not a ring variable")
    u = _fresh_name(ideal.ring, _FRESH)
    big_ring = (u,) + ideal.ring
    order = TermOrder(len(big_ring), elim=1)
    gens = [g.extend_ring(big_ring) for g in ideal.generators]
    inverse = (Polynomial.variable(big_ring, u) * Polynomial.variable(big_ring, var)
               - Polynomial.constant(big_ring, 1))
    basis = reduced_basis(IdealPresentation(big_ring, tuple(gens) + (inverse,)), order, max_steps)
    kept = [g.drop_variable(0) for g in basis if g.leading_monomial(order)[0] == 0]
    return IdealPresentation(ideal.ring, tuple(kept), ideal.weights)


def intersect(a: IdealPresentation, b: IdealPresentation,
              max_steps: int | None = None) -> IdealPresentation:
    """Ideal intersection via the one-tag-variable elimination trick."""
    if a.ring != b.ring:
        raise ArityError("cannot intersect ideals in different rings")
    u = _fresh_name(a.ring, _FRESH)
    big_ring = (u,) + a.ring
    order = TermOrder(len(big_ring), elim=1)
    tag = Polynomial.variable(big_ring, u)
    one_minus = Polynomial.constant(big_ring, 1) - tag
    gens = [tag * g.extend_ring(big_ring) for g in a.generators]
    gens += [one_minus * g.extend_ring(big_ring) for g in b.generators]
    basis = reduced_basis(IdealPresentation(big_ring, tuple(gens)), order, max_steps)
    kept = [g.drop_variable(0) for g in basis if g.leading_monomial(order)[0] == 0]
    return IdealPresentation(a.ring, tuple(kept), a.weights)


def ideal_quotient(ideal: IdealPresentation, f: Polynomial,
                   max_steps: int | None = None) -> IdealPresentation:
    """(I : f) computed as (I cap <f>) / f."""
    if f.is_zero():
        raise ValueError("cannot quotient by the zero polynomial")
    if f.ring != ideal.ring:
        raise ArityError("polynomial ring differs from ideal ring")
    if not ideal.generators:
        return ideal
    meet = intersect(ideal, IdealPresentation(ideal.ring, (f,)), max_steps)
    divided = tuple(exact_divide(g, f) for g in meet.generators)
    return IdealPresentation(ideal.ring, divided, ideal.weights)
