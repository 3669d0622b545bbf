"""Buchberger's algorithm, initial monomial ideals and Borel-fixedness.

Ideals here are homogeneous. Bases are always returned reduced and monic,
so the Groebner basis of an ideal is canonical for a given order.
"""
from __future__ import annotations

import logging
from typing import Iterable, Optional, Sequence

from app.services.arith import TowerElement
from app.services.errors import DegreeMismatch, RosterMismatch, ZeroPolynomial
from app.services.poly import (
    MonomialOrder,
    MultiIndex,
    Polynomial,
    divides,
    format_monomial,
    mono_div,
    mono_lcm,
)

logger = logging.getLogger(__name__)


class Ideal:
    """Homogeneous ideal given by a nonempty list of nonzero generators."""

    def __init__(self, generators: Sequence[Polynomial]):
        generators = list(generators)
        if not generators:
            raise ZeroPolynomial("an ideal needs at least one generator")
        roster = generators[0].roster
        for g in generators:
            if g.roster != roster:
                raise RosterMismatch(f"generator roster {g.roster} differs from {roster}")
            if g.is_zero():
                raise ZeroPolynomial("zero generator in ideal")
            if not g.is_homogeneous():
                raise DegreeMismatch(f"generator {g} is not homogeneous")
        self.generators = generators
        self.roster = roster

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g) for g in self.generators)})"


def minimalize(monomials: Iterable[MultiIndex]) -> list[MultiIndex]:
    """Drop every monomial divisible by another one in the collection."""
    unique = sorted(set(tuple(m) for m in monomials), key=lambda a: (sum(a), a))
    kept: list[MultiIndex] = []
    for alpha in unique:
        if not any(divides(beta, alpha) for beta in kept):
            kept.append(alpha)
    return kept


class MonomialIdeal:
    """Monomial ideal stored by its minimal generators.

    An empty generator set is the zero ideal.
    """

    def __init__(self, roster: Sequence[str], generators: Iterable[MultiIndex]):
        self.roster = tuple(roster)
        gens = minimalize(generators)
        for alpha in gens:
            if len(alpha) != len(self.roster):
                raise RosterMismatch(f"monomial {alpha} does not match roster {self.roster}")
        self.generators: frozenset[MultiIndex] = frozenset(gens)

    def contains(self, beta: MultiIndex) -> bool:
        return any(divides(alpha, tuple(beta)) for alpha in self.generators)

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return (0,) * len(self.roster) in self.generators

    def sorted_generators(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> list[MultiIndex]:
        """Generators by ascending degree, descending in `order` within a degree."""
        return sorted(self.generators, key=order.green.key, reverse=True)

    def monomial_strings(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> list[str]:
        return [format_monomial(alpha, self.roster) for alpha in self.sorted_generators(order)]

    def format(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> str:
        if self.is_zero():
            return "0"
        return ", ".join(self.monomial_strings(order))

    def degrees(self) -> list[int]:
        return sorted(sum(alpha) for alpha in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.roster == other.roster and self.generators == other.generators

    def __hash__(self) -> int:
        return hash((self.roster, self.generators))

    def __str__(self) -> str:
        return f"({self.format()})"

    def __repr__(self) -> str:
        return f"MonomialIdeal{self}"


def monomial_ideal_equal(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    if a.roster != b.roster:
        raise RosterMismatch(f"rosters {a.roster} and {b.roster} differ")
    return a.generators == b.generators


def monomial_ideal_contains(a: MonomialIdeal, beta: MultiIndex) -> bool:
    if len(beta) != len(a.roster):
        raise RosterMismatch(f"monomial {beta} does not match roster {a.roster}")
    return a.contains(beta)


class _Divisor:
    __slots__ = ("poly", "lm", "lc_inv")

    def __init__(self, poly: Polynomial, order: MonomialOrder):
        self.poly = poly
        self.lm = poly.leading_monomial(order)
        self.lc_inv = poly.terms[self.lm].inverse()


def _reduce(f: Polynomial, divisors: Sequence[_Divisor], order: MonomialOrder) -> Polynomial:
    remainder: dict[MultiIndex, TowerElement] = {}
    p = f
    while p.terms:
        lt = p.leading_monomial(order)
        coefficient = p.terms[lt]
        divisor = next((d for d in divisors if divides(d.lm, lt)), None)
        if divisor is None:
            remainder[lt] = coefficient
            rest = dict(p.terms)
            del rest[lt]
            p = Polynomial._trusted(p.roster, rest)
        else:
            p = p.sub_term_multiple(divisor.poly, coefficient * divisor.lc_inv, mono_div(lt, divisor.lm))
    return Polynomial._trusted(f.roster, remainder)


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of f on division by `basis`.

    The largest reducible term is always reduced first, by the first basis
    element (in list order) whose leading monomial divides it.
    """
    if any(g.is_zero() for g in basis):
        raise ZeroPolynomial("division by the zero polynomial")
    return _reduce(f, [_Divisor(g, order) for g in basis], order)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(lf, lg)
    left = f.mul_term(mono_div(lcm, lf), f.terms[lf].inverse())
    right = g.mul_term(mono_div(lcm, lg), g.terms[lg].inverse())
    return left - right


def is_groebner_basis(basis: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Every S-polynomial of the basis reduces to zero."""
    divisors = [_Divisor(g, order) for g in basis]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if _reduce(s_polynomial(basis[i], basis[j], order), divisors, order).terms:
                return False
    return True


def _coprime(alpha: MultiIndex, beta: MultiIndex) -> bool:
    return all(a == 0 or b == 0 for a, b in zip(alpha, beta))


def _interreduce(basis: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    """Reduced Groebner basis from any Groebner basis."""
    leads = [g.leading_monomial(order) for g in basis]
    minimal: list[Polynomial] = []
    for k, g in enumerate(basis):
        dominated = any(
            divides(leads[m], leads[k]) and (leads[m] != leads[k] or m < k)
            for m in range(len(basis))
            if m != k
        )
        if not dominated:
            minimal.append(g.monic(order))
    reduced = []
    for k, g in enumerate(minimal):
        others = [_Divisor(h, order) for m, h in enumerate(minimal) if m != k]
        lm = g.leading_monomial(order)
        tail = Polynomial._trusted(g.roster, {a: c for a, c in g.terms.items() if a != lm})
        reduced.append(Polynomial.monomial(g.roster, lm) + _reduce(tail, others, order))
    reduced.sort(key=lambda p: order.key(p.leading_monomial(order)))
    return reduced


def buchberger(ideal: Ideal, order: MonomialOrder) -> list[Polynomial]:
    """Reduced, monic Groebner basis of the ideal.

    Pairs are processed with the normal strategy (smallest lcm first, ties by
    position) and the coprime leading-monomial criterion is the only one
    applied.
    """
    basis: list[Polynomial] = []
    divisors: list[_Divisor] = []
    pairs: list[tuple[int, int]] = []

    def add(poly: Polynomial) -> None:
        poly = poly.monic(order)
        index = len(basis)
        basis.append(poly)
        divisors.append(_Divisor(poly, order))
        pairs.extend((k, index) for k in range(index))

    for g in ideal.generators:
        r = _reduce(g, divisors, order)
        if r.terms:
            add(r)

    processed = skipped = 0
    while pairs:
        best = min(
            range(len(pairs)),
            key=lambda k: (order.key(mono_lcm(divisors[pairs[k][0]].lm, divisors[pairs[k][1]].lm)), pairs[k]),
        )
        i, j = pairs.pop(best)
        if _coprime(divisors[i].lm, divisors[j].lm):
            skipped += 1
            continue
        processed += 1
        r = _reduce(s_polynomial(basis[i], basis[j], order), divisors, order)
        if r.terms:
            add(r)

    logger.debug(
        "[GROEBNER] %d generators -> %d basis elements (%d pairs reduced, %d skipped by coprimality)",
        len(ideal), len(basis), processed, skipped,
    )
    return _interreduce(basis, order)


def initial_ideal(ideal: Ideal, order: MonomialOrder, basis: Optional[Sequence[Polynomial]] = None) -> MonomialIdeal:
    if basis is None:
        basis = buchberger(ideal, order)
    return MonomialIdeal(ideal.roster, (g.leading_monomial(order) for g in basis))


def _exchange(alpha: MultiIndex, j: int, target: int) -> MultiIndex:
    beta = list(alpha)
    beta[j] -= 1
    beta[target] += 1
    return tuple(beta)


def borel_fixed_check(ideal: MonomialIdeal) -> bool:
    """(Z_l / Z_j) * m stays in the ideal for every generator m, Z_j | m and l < j."""
    for alpha in ideal.generators:
        for j, e in enumerate(alpha):
            if not e:
                continue
            for target in range(j):
                if not ideal.contains(_exchange(alpha, j, target)):
                    return False
    return True


def affine_borel_fixed_check(monomials: Iterable[MultiIndex]) -> bool:
    """Borel exchanges and divisions by a variable both stay in the set."""
    members = set(tuple(m) for m in monomials)
    for alpha in members:
        for j, e in enumerate(alpha):
            if not e:
                continue
            lowered = list(alpha)
            lowered[j] -= 1
            if tuple(lowered) not in members:
                return False
            for target in range(j):
                if _exchange(alpha, j, target) not in members:
                    return False
    return True
