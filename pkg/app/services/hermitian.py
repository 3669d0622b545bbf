"""Hermitian coefficient matrices of real polynomials in Z and conj(Z).

A form stands for sum c[a, b] * Z^a * conj(Z)^b over a monomial basis.
The squared norm of a map, its exact quotient by the source norm and the
span of a holomorphic decomposition all live here.
"""
from __future__ import annotations

import logging
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Sequence

from app.services.arith import I, ONE, ZERO, TowerElement
from app.services.errors import (
    DegreeMismatch,
    DegreeTooSmall,
    DimensionMismatch,
    DivisionByZero,
    NotDivisible,
    RosterMismatch,
)
from app.services.gin import GinConfig, MonomialSubspace, gin_ideal, gin_subspace
from app.services.groebner import Ideal, MonomialIdeal
from app.services.linalg import Matrix, identity, inverse, mat_add, mat_mul, mat_sub, row_reduce, solve
from app.services.poly import (
    MonomialOrder,
    MultiIndex,
    Polynomial,
    format_monomial,
    monomials_of_degree,
    monomials_up_to_degree,
)

if TYPE_CHECKING:
    from app.services.maps import HomogenizedMap

logger = logging.getLogger(__name__)

Pair = tuple[MultiIndex, MultiIndex]


@dataclass(frozen=True)
class Signature:
    """Hyperquadric Q(a, b): a positive and b negative squares in C^(a+b)."""
    a: int
    b: int = 0

    def __post_init__(self):
        if self.a < 1 or self.b < 0:
            raise ValueError(f"invalid signature ({self.a}, {self.b})")

    @property
    def dimension(self) -> int:
        return self.a + self.b

    @property
    def homogeneous_negatives(self) -> int:
        """Negative slots of ||Z||^2_(b+1): the homogenizing variable plus b."""
        return self.b + 1

    @classmethod
    def parse(cls, text: str) -> "Signature":
        a, _, b = text.partition(",")
        return cls(int(a), int(b or 0))

    def as_list(self) -> list[int]:
        return [self.a, self.b]

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def _basis_key(alpha: MultiIndex) -> tuple:
    return MonomialOrder.GREEN_GREVLEX.key(alpha)


class HermitianForm:
    """Sparse Hermitian matrix over a monomial basis.

    `degree` is set for bihomogeneous forms (basis = all monomials of that
    degree) and None for forms over all monomials up to `max_degree`.
    """

    def __init__(
        self,
        roster: Sequence[str],
        basis: Sequence[MultiIndex],
        entries: dict[Pair, TowerElement],
        degree: Optional[int] = None,
    ):
        self.roster = tuple(roster)
        self.basis: list[MultiIndex] = sorted((tuple(b) for b in basis), key=_basis_key, reverse=True)
        self.degree = degree
        members = set(self.basis)
        self.entries: dict[Pair, TowerElement] = {}
        for (alpha, beta), c in entries.items():
            if alpha not in members or beta not in members:
                raise DimensionMismatch(f"entry ({alpha}, {beta}) is outside the basis")
            if c:
                self.entries[(alpha, beta)] = c

    @classmethod
    def homogeneous(cls, roster: Sequence[str], degree: int, entries: dict[Pair, TowerElement]) -> "HermitianForm":
        return cls(roster, monomials_of_degree(len(roster), degree), entries, degree)

    @classmethod
    def inhomogeneous(cls, roster: Sequence[str], max_degree: int, entries: dict[Pair, TowerElement]) -> "HermitianForm":
        return cls(roster, monomials_up_to_degree(len(roster), max_degree), entries, None)

    @property
    def matrix(self) -> Matrix:
        return [[self.entries.get((a, b), ZERO) for b in self.basis] for a in self.basis]

    def entry(self, alpha: MultiIndex, beta: MultiIndex) -> TowerElement:
        return self.entries.get((tuple(alpha), tuple(beta)), ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def is_hermitian(self) -> bool:
        return all(self.entry(beta, alpha) == c.conj() for (alpha, beta), c in self.entries.items())

    def rank(self) -> int:
        if self.is_zero():
            return 0
        return len(row_reduce(self.matrix)[1])

    def __neg__(self) -> "HermitianForm":
        return HermitianForm(self.roster, self.basis, {k: -c for k, c in self.entries.items()}, self.degree)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HermitianForm):
            return NotImplemented
        return self.roster == other.roster and self.basis == other.basis and self.entries == other.entries

    def dehomogenized(self, roster: Sequence[str]) -> "HermitianForm":
        """Set the first variable to 1 on both sides."""
        if len(roster) != len(self.roster) - 1:
            raise DimensionMismatch(f"roster {tuple(roster)} has the wrong length")
        merged: dict[Pair, TowerElement] = defaultdict(lambda: ZERO)
        for (alpha, beta), c in self.entries.items():
            merged[(alpha[1:], beta[1:])] += c
        max_degree = self.degree if self.degree is not None else max((sum(b) for b in self.basis), default=0)
        return HermitianForm.inhomogeneous(roster, max_degree, dict(merged))

    def format(self) -> str:
        if not self.entries:
            return "0"
        pieces = []
        ordered = sorted(
            self.entries.items(),
            key=lambda item: (self.basis.index(item[0][0]), self.basis.index(item[0][1])),
        )
        for (alpha, beta), c in ordered:
            left = format_monomial(alpha, self.roster)
            right = format_monomial(beta, self.roster)
            if alpha == beta:
                body = "1" if left == "1" else f"|{left}|^2"
            else:
                body = f"{left}*conj({right})"
            if body == "1":
                text = str(c) if c.is_atomic() else f"({c})"
            elif c == 1:
                text = body
            elif c == -1:
                text = "-" + body
            else:
                text = f"{c}*{body}" if c.is_atomic() else f"({c})*{body}"
            pieces.append(text)
        out = pieces[0]
        for piece in pieces[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"HermitianForm({self.format()!r})"


def squared_norm_form(components: Sequence[Polynomial], negatives: int, degree: Optional[int] = None) -> HermitianForm:
    """Form of -sum_{j<neg} |F_j|^2 + sum_{j>=neg} |F_j|^2.

    Zero components contribute nothing; `degree` is needed only when every
    component is zero.
    """
    if not components:
        raise DimensionMismatch("no components")
    if negatives > len(components):
        raise DimensionMismatch(f"{negatives} negative slots for {len(components)} components")
    roster = components[0].roster
    degrees = set()
    for f in components:
        if f.roster != roster:
            raise RosterMismatch(f"component roster {f.roster} differs from {roster}")
        if f.is_zero():
            continue
        if not f.is_homogeneous():
            raise DegreeMismatch(f"component {f} is not homogeneous")
        degrees.add(f.total_degree())
    if len(degrees) > 1:
        raise DegreeMismatch(f"components have degrees {sorted(degrees)}")
    d = degrees.pop() if degrees else degree
    if d is None:
        raise DegreeMismatch("degree of an all-zero map is unknown")

    entries: dict[Pair, TowerElement] = defaultdict(lambda: ZERO)
    for j, f in enumerate(components):
        terms = list(f.terms.items())
        for alpha, a in terms:
            for beta, b in terms:
                value = a * b.conj()
                entries[(alpha, beta)] = entries[(alpha, beta)] - value if j < negatives else entries[(alpha, beta)] + value
    return HermitianForm.homogeneous(roster, d, dict(entries))


def norm_form(roster: Sequence[str], negatives: int) -> HermitianForm:
    """||Z||^2 with the first `negatives` variables negative."""
    n = len(roster)
    entries = {}
    for j in range(n):
        e = tuple(1 if k == j else 0 for k in range(n))
        entries[(e, e)] = -ONE if j < negatives else ONE
    return HermitianForm.homogeneous(roster, 1, entries)


def _shift_down(alpha: MultiIndex, j: int) -> Optional[MultiIndex]:
    if alpha[j] == 0:
        return None
    return alpha[:j] + (alpha[j] - 1,) + alpha[j + 1:]


def _shift_up(alpha: MultiIndex, j: int) -> MultiIndex:
    return alpha[:j] + (alpha[j] + 1,) + alpha[j + 1:]


def multiply_by_norm(q: HermitianForm, negatives: int) -> HermitianForm:
    """||Z||^2_neg * q as a form of one degree higher."""
    n = len(q.roster)
    entries: dict[Pair, TowerElement] = defaultdict(lambda: ZERO)
    for (gamma, delta), c in q.entries.items():
        for j in range(n):
            key = (_shift_up(gamma, j), _shift_up(delta, j))
            entries[key] = entries[key] - c if j < negatives else entries[key] + c
    return HermitianForm.homogeneous(q.roster, (q.degree or 0) + 1, dict(entries))


def divide_by_norm(r: HermitianForm, signature: Signature) -> tuple[HermitianForm, int]:
    """Solve R = ||Z||^2_(b+1) * q exactly; return (q, side).

    The linear system splits into independent blocks indexed by the
    difference alpha - beta, each solved by Gaussian elimination. The
    product N * q is then recomputed and compared with R. q is negated
    (side -1) when its Z0^(d-1) diagonal coefficient is a negative rational.
    """
    if r.degree is None or r.degree < 1:
        raise DegreeTooSmall("division needs a bihomogeneous form of degree at least 1")
    n = len(r.roster)
    if n != signature.dimension + 1:
        raise DimensionMismatch(f"form in {n} variables for source signature {signature}")
    negatives = signature.homogeneous_negatives
    d = r.degree
    small = monomials_of_degree(n, d - 1)

    blocks: dict[tuple, list[Pair]] = defaultdict(list)
    for gamma in small:
        for delta in small:
            blocks[tuple(g - h for g, h in zip(gamma, delta))].append((gamma, delta))

    solution: dict[Pair, TowerElement] = {}
    for diff, unknowns in blocks.items():
        position = {pair: k for k, pair in enumerate(unknowns)}
        equations: dict[Pair, list[TowerElement]] = {}
        for (gamma, delta), k in position.items():
            for j in range(n):
                key = (_shift_up(gamma, j), _shift_up(delta, j))
                row = equations.setdefault(key, [ZERO] * len(unknowns))
                row[k] = row[k] + (-ONE if j < negatives else ONE)
        targets = [key for key in equations]
        stray = [key for key, c in r.entries.items() if tuple(a - b for a, b in zip(*key)) == diff and key not in equations]
        if stray:
            raise NotDivisible(f"coefficient at {stray[0]} cannot come from the source norm")
        values = solve([equations[key] for key in targets], [r.entry(*key) for key in targets])
        if values is None:
            raise NotDivisible(f"the squared norm is not divisible by the norm of signature {signature}")
        for pair, value in zip(unknowns, values):
            if value:
                solution[pair] = value

    q = HermitianForm.homogeneous(r.roster, d - 1, solution)
    residual = multiply_by_norm(q, negatives)
    if residual != HermitianForm.homogeneous(r.roster, d, r.entries):
        raise NotDivisible("reconstruction residual is nonzero")

    base = (d - 1,) + (0,) * (n - 1)
    anchor = q.entry(base, base)
    side = 1
    if anchor.is_rational() and anchor.rational_value() < 0:
        q, side = -q, -1
    logger.debug("[HERMITIAN] quotient of degree %d with %d entries, side %+d", d - 1, len(q.entries), side)
    return q, side


def holomorphic_decomposition_span(q: HermitianForm, strategy: str = "leading") -> list[Polynomial]:
    """Basis of the column space of q's matrix, read back as polynomials.

    strategy: "leading" keeps the first independent columns, "trailing"
    scans from the right, "echelon" returns the reduced echelon basis.
    """
    if q.is_zero():
        return []
    matrix = q.matrix
    basis = q.basis
    columns = [[row[k] for row in matrix] for k in range(len(basis))]

    def as_poly(vector: Sequence[TowerElement]) -> Polynomial:
        return Polynomial(q.roster, {alpha: c for alpha, c in zip(basis, vector) if c})

    if strategy == "echelon":
        rows, _ = row_reduce(columns)
        return [as_poly(row) for row in rows]
    if strategy == "leading":
        _, pivots = row_reduce(matrix)
        return [as_poly(columns[k]) for k in pivots]
    if strategy == "trailing":
        reversed_rows = [list(reversed(row)) for row in matrix]
        _, pivots = row_reduce(reversed_rows)
        last = len(basis) - 1
        return [as_poly(columns[last - k]) for k in sorted(pivots, reverse=True)]
    raise ValueError(f"unknown pivot strategy '{strategy}'")


def map_quotient(f: "HomogenizedMap") -> tuple[HermitianForm, int]:
    """Quotient form q of a homogenized map and the side it was found on."""
    r = squared_norm_form(f.components, f.target.homogeneous_negatives, f.degree)
    return divide_by_norm(r, f.source)


def quotient_gin(
    f: "HomogenizedMap",
    cfg: GinConfig,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    strategy: str = "leading",
) -> MonomialIdeal:
    q, _ = map_quotient(f)
    return quotient_form_gin(q, cfg, order, strategy)


def quotient_form_gin(
    q: HermitianForm,
    cfg: GinConfig,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    strategy: str = "leading",
) -> MonomialIdeal:
    span = holomorphic_decomposition_span(q, strategy)
    if not span:
        logger.info("[HERMITIAN] zero quotient; gin is the zero ideal")
        return MonomialIdeal(q.roster, [])
    return gin_ideal(Ideal(span), order, cfg)


def real_form_gin(
    r: HermitianForm,
    cfg: GinConfig,
    order: MonomialOrder = MonomialOrder.GREEN_GRLEX,
) -> MonomialSubspace:
    """gin of the affine span of a holomorphic decomposition of r."""
    span = holomorphic_decomposition_span(r)
    return gin_subspace([Polynomial.constant(r.roster, 1)] + span, order, cfg, roster=r.roster)


def cayley_j_unitary(signs: Sequence[int], rng: random.Random, bound: int = 3) -> Matrix:
    """Exact matrix T with T* J T = J for J = diag(signs).

    K is a random anti-Hermitian matrix over Q(i), S = J K, and
    T = (I - S)(I + S)^-1.
    """
    n = len(signs)
    while True:
        k: list[list[TowerElement]] = [[ZERO] * n for _ in range(n)]
        for r in range(n):
            k[r][r] = I * rng.randint(-bound, bound)
            for c in range(r + 1, n):
                value = rng.randint(-bound, bound) + I * rng.randint(-bound, bound)
                k[r][c] = value
                k[c][r] = -value.conj()
        s = [[k[r][c] * signs[r] for c in range(n)] for r in range(n)]
        eye = identity(n)
        try:
            return mat_mul(mat_sub(eye, s), inverse(mat_add(eye, s)))
        except DivisionByZero:
            continue
