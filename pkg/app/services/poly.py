"""Sparse multivariate polynomials over the tower field and monomial orders."""
from __future__ import annotations

from enum import Enum, IntEnum
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Optional, Sequence

from app.services.arith import ONE, ZERO, Scalar, TowerElement, coerce
from app.services.errors import (
    DegreeTooSmall,
    DimensionMismatch,
    LengthMismatch,
    RosterMismatch,
    ZeroPolynomial,
)

MultiIndex = tuple[int, ...]


def degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def divides(alpha: MultiIndex, beta: MultiIndex) -> bool:
    return all(a <= b for a, b in zip(alpha, beta))


def mono_mul(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def mono_div(beta: MultiIndex, alpha: MultiIndex) -> MultiIndex:
    return tuple(b - a for a, b in zip(alpha, beta))


def mono_lcm(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(max(a, b) for a, b in zip(alpha, beta))


def monomials_of_degree(nvars: int, d: int) -> list[MultiIndex]:
    """All exponent vectors of total degree d, in no particular order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        alpha = [0] * nvars
        for v in combo:
            alpha[v] += 1
        out.append(tuple(alpha))
    return out


def monomials_up_to_degree(nvars: int, d: int) -> list[MultiIndex]:
    return [alpha for k in range(d + 1) for alpha in monomials_of_degree(nvars, k)]


def format_monomial(alpha: MultiIndex, roster: Sequence[str]) -> str:
    factors = []
    for name, e in zip(roster, alpha):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


class Comparison(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class MonomialOrder(Enum):
    """Multiplicative monomial orders with Z0 > Z1 > ... > Zn.

    The classical orders put higher total degree first; the Green variants
    put lower total degree first, so 1 is the largest monomial.
    """
    GREVLEX = "grevlex"
    GRLEX = "grlex"
    GREEN_GREVLEX = "green-grevlex"
    GREEN_GRLEX = "green-grlex"

    @property
    def is_green(self) -> bool:
        return self in (MonomialOrder.GREEN_GREVLEX, MonomialOrder.GREEN_GRLEX)

    @property
    def classical(self) -> "MonomialOrder":
        """The degree-increasing order with the same tie-break."""
        return {
            MonomialOrder.GREEN_GREVLEX: MonomialOrder.GREVLEX,
            MonomialOrder.GREEN_GRLEX: MonomialOrder.GRLEX,
        }.get(self, self)

    @property
    def green(self) -> "MonomialOrder":
        return {
            MonomialOrder.GREVLEX: MonomialOrder.GREEN_GREVLEX,
            MonomialOrder.GRLEX: MonomialOrder.GREEN_GRLEX,
        }.get(self, self)

    def key(self, alpha: MultiIndex) -> tuple:
        """Sort key: a larger key is a larger monomial."""
        total = sum(alpha)
        if self in (MonomialOrder.GRLEX, MonomialOrder.GREEN_GRLEX):
            tie = alpha
        else:
            tie = tuple(-a for a in reversed(alpha))
        return (-total if self.is_green else total, tie)

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        normalized = text.strip().lower().replace("_", "-")
        for order in cls:
            if order.value == normalized:
                return order
        raise ValueError(f"unknown monomial order '{text}' (expected one of {[o.value for o in cls]})")


def compare_monomials(a: MultiIndex, b: MultiIndex, order: MonomialOrder) -> Comparison:
    if len(a) != len(b):
        raise LengthMismatch(f"monomials of length {len(a)} and {len(b)}")
    ka, kb = order.key(a), order.key(b)
    if ka == kb:
        return Comparison.EQUAL
    return Comparison.GREATER if ka > kb else Comparison.LESS


class Polynomial:
    """Multivariate polynomial with an explicit variable roster.

    Terms map exponent tuples to nonzero TowerElements. Instances are
    treated as immutable.
    """

    __slots__ = ("roster", "terms")

    def __init__(self, roster: Sequence[str], terms: Optional[Mapping[MultiIndex, Scalar]] = None):
        self.roster: tuple[str, ...] = tuple(roster)
        clean: dict[MultiIndex, TowerElement] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != len(self.roster):
                raise LengthMismatch(f"exponent {alpha} does not match roster {self.roster}")
            c = coerce(c)
            if c:
                clean[alpha] = c
        self.terms: dict[MultiIndex, TowerElement] = clean

    @classmethod
    def _trusted(cls, roster: tuple[str, ...], terms: dict[MultiIndex, TowerElement]) -> "Polynomial":
        p = object.__new__(cls)
        p.roster = roster
        p.terms = terms
        return p

    # Constructors

    @classmethod
    def zero(cls, roster: Sequence[str]) -> "Polynomial":
        return cls._trusted(tuple(roster), {})

    @classmethod
    def constant(cls, roster: Sequence[str], value: Scalar) -> "Polynomial":
        return cls(roster, {(0,) * len(roster): value})

    @classmethod
    def monomial(cls, roster: Sequence[str], alpha: MultiIndex, coefficient: Scalar = 1) -> "Polynomial":
        return cls(roster, {tuple(alpha): coefficient})

    @classmethod
    def variable(cls, roster: Sequence[str], name: str | int) -> "Polynomial":
        roster = tuple(roster)
        index = roster.index(name) if isinstance(name, str) else name
        alpha = tuple(1 if k == index else 0 for k in range(len(roster)))
        return cls._trusted(roster, {alpha: ONE})

    # Queries

    @property
    def nvars(self) -> int:
        return len(self.roster)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(alpha) for alpha in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(alpha) for alpha in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(alpha) for alpha in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(sum(alpha) == 0 for alpha in self.terms)

    def coefficient(self, alpha: MultiIndex) -> TowerElement:
        return self.terms.get(tuple(alpha), ZERO)

    def leading_monomial(self, order: MonomialOrder) -> MultiIndex:
        if not self.terms:
            raise ZeroPolynomial("leading monomial of the zero polynomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder) -> TowerElement:
        return self.terms[self.leading_monomial(order)]

    def sorted_monomials(self, order: MonomialOrder) -> list[MultiIndex]:
        return sorted(self.terms, key=order.key, reverse=True)

    def _check_roster(self, other: "Polynomial") -> None:
        if self.roster != other.roster:
            raise RosterMismatch(f"rosters {self.roster} and {other.roster} differ")

    # Arithmetic

    def __add__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.roster, other)
        self._check_roster(other)
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            s = out.get(alpha)
            s = c if s is None else s + c
            if s:
                out[alpha] = s
            else:
                out.pop(alpha, None)
        return Polynomial._trusted(self.roster, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._trusted(self.roster, {alpha: -c for alpha, c in self.terms.items()})

    def __sub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.roster, other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return Polynomial.constant(self.roster, other) - self

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = coerce(factor)
        if not factor:
            return Polynomial.zero(self.roster)
        return Polynomial._trusted(self.roster, {alpha: c * factor for alpha, c in self.terms.items()})

    def mul_term(self, shift: MultiIndex, factor: Scalar = 1) -> "Polynomial":
        factor = coerce(factor)
        if not factor:
            return Polynomial.zero(self.roster)
        return Polynomial._trusted(
            self.roster,
            {mono_mul(alpha, shift): c * factor for alpha, c in self.terms.items()},
        )

    def sub_term_multiple(self, other: "Polynomial", factor: TowerElement, shift: MultiIndex) -> "Polynomial":
        """self - factor * x^shift * other, the elementary reduction step."""
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            beta = mono_mul(alpha, shift)
            s = out.get(beta, ZERO) - factor * c
            if s:
                out[beta] = s
            else:
                out.pop(beta, None)
        return Polynomial._trusted(self.roster, out)

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_roster(other)
        out: dict[MultiIndex, TowerElement] = {}
        for alpha, a in self.terms.items():
            for beta, b in other.terms.items():
                gamma = mono_mul(alpha, beta)
                s = out.get(gamma, ZERO) + a * b
                if s:
                    out[gamma] = s
                else:
                    out.pop(gamma, None)
        return Polynomial._trusted(self.roster, out)

    def __rmul__(self, other: Scalar) -> "Polynomial":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.roster, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def monic(self, order: MonomialOrder) -> "Polynomial":
        return self.scale(self.leading_coefficient(order).inverse())

    def conj_coefficients(self) -> "Polynomial":
        return Polynomial._trusted(self.roster, {alpha: c.conj() for alpha, c in self.terms.items()})

    # Composition

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute images[k] for variable k; images share one roster."""
        if len(images) != self.nvars:
            raise DimensionMismatch(f"{len(images)} images for {self.nvars} variables")
        if not images:
            return self
        target = images[0].roster
        powers: list[list[Polynomial]] = [[Polynomial.constant(target, 1)] for _ in images]
        result = Polynomial.zero(target)
        for alpha, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for k, e in enumerate(alpha):
                if e:
                    cache = powers[k]
                    while len(cache) <= e:
                        cache.append(cache[-1] * images[k])
                    term = term * cache[e]
            result = result + term
        return result

    def substitute_linear(self, matrix: Sequence[Sequence[Scalar]]) -> "Polynomial":
        return substitute_linear(self, matrix)

    def substitute_affine(self, matrix: Sequence[Sequence[Scalar]], shift: Sequence[Scalar]) -> "Polynomial":
        return substitute_affine(self, matrix, shift)

    def with_roster(self, roster: Sequence[str]) -> "Polynomial":
        roster = tuple(roster)
        if len(roster) != self.nvars:
            raise LengthMismatch(f"roster {roster} has the wrong length")
        return Polynomial._trusted(roster, dict(self.terms))

    # Comparison and display

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.roster == other.roster and self.terms == other.terms
        if isinstance(other, (int, TowerElement)) or hasattr(other, "denominator"):
            return self == Polynomial.constant(self.roster, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.roster, frozenset(self.terms.items())))

    def format(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for alpha in self.sorted_monomials(order):
            c = self.terms[alpha]
            mono = format_monomial(alpha, self.roster)
            if mono == "1":
                text = str(c) if c.is_atomic() else f"({c})"
            elif c == 1:
                text = mono
            elif c == -1:
                text = "-" + mono
            elif c.is_atomic():
                text = f"{c}*{mono}"
            else:
                text = f"({c})*{mono}"
            pieces.append(text)
        out = pieces[0]
        for piece in pieces[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()!r}, roster={self.roster})"


def leading_monomial(p: Polynomial, order: MonomialOrder) -> MultiIndex:
    return p.leading_monomial(order)


def linear_forms(roster: Sequence[str], matrix: Sequence[Sequence[Scalar]]) -> list[Polynomial]:
    """Row k of the matrix read as the linear form sum_j M[k][j] * x_j."""
    n = len(roster)
    forms = []
    for row in matrix:
        if len(row) != n:
            raise DimensionMismatch(f"matrix row of length {len(row)} for {n} variables")
        terms = {}
        for j, value in enumerate(row):
            terms[tuple(1 if k == j else 0 for k in range(n))] = value
        forms.append(Polynomial(roster, terms))
    return forms


def substitute_linear(p: Polynomial, matrix: Sequence[Sequence[Scalar]]) -> Polynomial:
    """p(M * Z), expanded exactly."""
    if len(matrix) != p.nvars:
        raise DimensionMismatch(f"{len(matrix)}x? matrix for {p.nvars} variables")
    return p.compose(linear_forms(p.roster, matrix))


def substitute_affine(p: Polynomial, matrix: Sequence[Sequence[Scalar]], shift: Sequence[Scalar]) -> Polynomial:
    """p(M * z + c), expanded exactly."""
    if len(matrix) != p.nvars or len(shift) != p.nvars:
        raise DimensionMismatch(f"affine map of size {len(matrix)}/{len(shift)} for {p.nvars} variables")
    images = [form + c for form, c in zip(linear_forms(p.roster, matrix), shift)]
    return p.compose(images)


def homogenize(
    p: Polynomial,
    d: int,
    varname: str = "Z0",
    roster: Optional[Sequence[str]] = None,
) -> Polynomial:
    """Multiply each term by varname^(d - |alpha|); the new variable comes first.

    `roster` optionally renames the old variables in the result.
    """
    if not p.is_zero() and d < p.total_degree():
        raise DegreeTooSmall(f"cannot homogenize degree {p.total_degree()} to degree {d}")
    new_roster = (varname,) + tuple(roster if roster is not None else p.roster)
    if len(new_roster) != p.nvars + 1:
        raise LengthMismatch(f"roster {new_roster} has the wrong length")
    terms = {(d - sum(alpha),) + alpha: c for alpha, c in p.terms.items()}
    return Polynomial._trusted(new_roster, terms)


def dehomogenize(
    p: Polynomial,
    varname: str = "Z0",
    roster: Optional[Sequence[str]] = None,
) -> Polynomial:
    """Set varname = 1 and drop it from the roster."""
    index = p.roster.index(varname)
    rest = tuple(name for k, name in enumerate(p.roster) if k != index)
    new_roster = tuple(roster) if roster is not None else rest
    if len(new_roster) != len(rest):
        raise LengthMismatch(f"roster {new_roster} has the wrong length")
    out: dict[MultiIndex, TowerElement] = {}
    for alpha, c in p.terms.items():
        beta = alpha[:index] + alpha[index + 1:]
        s = out.get(beta, ZERO) + c
        if s:
            out[beta] = s
        else:
            out.pop(beta, None)
    return Polynomial._trusted(new_roster, out)


def sum_polynomials(polys: Iterable[Polynomial], roster: Sequence[str]) -> Polynomial:
    total = Polynomial.zero(roster)
    for p in polys:
        total = total + p
    return total
