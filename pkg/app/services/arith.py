"""Exact arithmetic in the number field Q(i, 2^(1/4), sqrt(3)).

Rationals are `fractions.Fraction`. A `TowerElement` is a vector of 16
rationals over the basis i^e0 * t^e1 * s^e2 with t = 2^(1/4), s = sqrt(3),
e0 in {0,1}, e1 in {0..3}, e2 in {0,1}. Reduction uses i^2 = -1, t^4 = 2,
s^2 = 3. Complex conjugation fixes t and s and sends i to -i.
"""
from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Union

from app.services.errors import DivisionByZero, NotRepresentable

Rational = Fraction
Scalar = Union[int, Fraction, "TowerElement"]

DIMENSION = 16


def basis_index(e0: int, e1: int, e2: int) -> int:
    return e0 * 8 + e1 * 2 + e2


def basis_exponents(k: int) -> tuple[int, int, int]:
    return k // 8, (k // 2) % 4, k % 2


def _build_mul_table() -> list[list[tuple[int, int]]]:
    table = []
    for p in range(DIMENSION):
        a0, a1, a2 = basis_exponents(p)
        row = []
        for q in range(DIMENSION):
            b0, b1, b2 = basis_exponents(q)
            factor = 1
            e0, e1, e2 = a0 + b0, a1 + b1, a2 + b2
            if e0 == 2:
                e0, factor = 0, -factor
            if e1 >= 4:
                e1, factor = e1 - 4, factor * 2
            if e2 == 2:
                e2, factor = 0, factor * 3
            row.append((basis_index(e0, e1, e2), factor))
        table.append(row)
    return table


_MUL_TABLE = _build_mul_table()
_ZERO_COORDS = (Fraction(0),) * DIMENSION


class TowerElement:
    """Immutable element of Q(i, 2^(1/4), sqrt(3))."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[Scalar] = _ZERO_COORDS):
        values = tuple(Fraction(c) for c in coords)
        if len(values) != DIMENSION:
            raise ValueError(f"expected {DIMENSION} coordinates, got {len(values)}")
        object.__setattr__(self, "coords", values)

    def __setattr__(self, name, value):
        raise AttributeError("TowerElement is immutable")

    @classmethod
    def _raw(cls, coords: tuple[Fraction, ...]) -> "TowerElement":
        element = object.__new__(cls)
        object.__setattr__(element, "coords", coords)
        return element

    # Construction

    @classmethod
    def from_rational(cls, value: int | Fraction) -> "TowerElement":
        coords = list(_ZERO_COORDS)
        coords[0] = Fraction(value)
        return cls._raw(tuple(coords))

    @classmethod
    def basis(cls, e0: int, e1: int, e2: int, coefficient: int | Fraction = 1) -> "TowerElement":
        coords = list(_ZERO_COORDS)
        coords[basis_index(e0, e1, e2)] = Fraction(coefficient)
        return cls._raw(tuple(coords))

    # Queries

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise NotRepresentable(f"{self} is not rational")
        return self.coords[0]

    def is_real(self) -> bool:
        """True when the i-part vanishes (real under the embedding t, s > 0)."""
        return not any(self.coords[8:])

    def support(self) -> list[tuple[int, Fraction]]:
        return [(k, c) for k, c in enumerate(self.coords) if c]

    # Field operations

    def __add__(self, other: Scalar) -> "TowerElement":
        other = coerce(other)
        return TowerElement._raw(tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> "TowerElement":
        return TowerElement._raw(tuple(-a for a in self.coords))

    def __sub__(self, other: Scalar) -> "TowerElement":
        other = coerce(other)
        return TowerElement._raw(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other: Scalar) -> "TowerElement":
        return coerce(other) - self

    def __mul__(self, other: Scalar) -> "TowerElement":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return TowerElement._raw(tuple(a * other for a in self.coords))
        if not isinstance(other, TowerElement):
            return NotImplemented
        left = self.support()
        right = other.support()
        if not left or not right:
            return ZERO
        if len(right) == 1 and right[0][0] == 0:
            return self * right[0][1]
        if len(left) == 1 and left[0][0] == 0:
            return other * left[0][1]
        out = [Fraction(0)] * DIMENSION
        for p, a in left:
            row = _MUL_TABLE[p]
            for q, b in right:
                r, factor = row[q]
                out[r] += factor * a * b
        return TowerElement._raw(tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "TowerElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in the tower field")
        if self.is_rational():
            return TowerElement.from_rational(1 / self.coords[0])
        # Column k of the multiplication matrix holds x * basis_k.
        columns = []
        for k in range(DIMENSION):
            columns.append((self * TowerElement._basis_cache[k]).coords)
        matrix = [[columns[k][r] for k in range(DIMENSION)] for r in range(DIMENSION)]
        rhs = [Fraction(1)] + [Fraction(0)] * (DIMENSION - 1)
        return TowerElement._raw(tuple(_solve_rational(matrix, rhs)))

    def __truediv__(self, other: Scalar) -> "TowerElement":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return TowerElement._raw(tuple(a / other for a in self.coords))
        return self * coerce(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "TowerElement":
        return coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "TowerElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> "TowerElement":
        return TowerElement._raw(self.coords[:8] + tuple(-a for a in self.coords[8:]))

    # Comparison and hashing

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if isinstance(other, TowerElement):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    # Display

    def __repr__(self) -> str:
        return f"TowerElement({self})"

    def __str__(self) -> str:
        terms = []
        for k, c in self.support():
            name = _basis_name(k)
            if not name:
                terms.append(_format_rational(c))
            elif c == 1:
                terms.append(name)
            elif c == -1:
                terms.append("-" + name)
            else:
                terms.append(f"{_format_rational(c)}*{name}")
        if not terms:
            return "0"
        text = terms[0]
        for term in terms[1:]:
            text += " - " + term[1:] if term.startswith("-") else " + " + term
        return text

    def is_atomic(self) -> bool:
        """True when the element prints as a single signed term."""
        return len(self.support()) <= 1

    def approx(self, digits: int = 12) -> str:
        """Decimal approximation for log output only."""
        with localcontext() as ctx:
            ctx.prec = digits + 10
            t = Decimal(2).sqrt().sqrt()
            s = Decimal(3).sqrt()
            parts = [Decimal(0), Decimal(0)]
            for k, c in self.support():
                e0, e1, e2 = basis_exponents(k)
                value = Decimal(c.numerator) / Decimal(c.denominator) * t ** e1 * s ** e2
                parts[e0] += value
            real = round(parts[0], digits)
            imag = round(parts[1], digits)
        if imag == 0:
            return f"{real}"
        sign = "+" if imag >= 0 else "-"
        return f"{real} {sign} {abs(imag)}i"


def _basis_name(k: int) -> str:
    e0, e1, e2 = basis_exponents(k)
    factors = []
    if e0:
        factors.append("i")
    factors.append({0: "", 1: "root4(2)", 2: "sqrt(2)", 3: "root4(2)^3"}[e1])
    if e2:
        factors.append("sqrt(3)")
    return "*".join(f for f in factors if f)


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _solve_rational(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan solve of a square nonsingular rational system."""
    n = len(matrix)
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            raise DivisionByZero("singular multiplication matrix")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [v / lead for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


ZERO = TowerElement()
ONE = TowerElement.from_rational(1)
I = TowerElement.basis(1, 0, 0)
ROOT4_2 = TowerElement.basis(0, 1, 0)
SQRT2 = TowerElement.basis(0, 2, 0)
SQRT3 = TowerElement.basis(0, 0, 1)
TowerElement._basis_cache = tuple(TowerElement.basis(*basis_exponents(k)) for k in range(DIMENSION))


def coerce(value: Scalar) -> TowerElement:
    if isinstance(value, TowerElement):
        return value
    if isinstance(value, (int, Fraction)):
        return TowerElement.from_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as a tower element")


def tower_add(x: Scalar, y: Scalar) -> TowerElement:
    return coerce(x) + coerce(y)


def tower_mul(x: Scalar, y: Scalar) -> TowerElement:
    return coerce(x) * coerce(y)


def tower_neg(x: Scalar) -> TowerElement:
    return -coerce(x)


def tower_inv(x: Scalar) -> TowerElement:
    return coerce(x).inverse()


def tower_conj(x: Scalar) -> TowerElement:
    return coerce(x).conj()


# sqrt(m) for squarefree m in {1, 2, 3, 6}
_SQUAREFREE_ROOTS = {1: ONE, 2: SQRT2, 3: SQRT3, 6: SQRT2 * SQRT3}


def tower_sqrt_rational(value: int | Fraction) -> TowerElement:
    """Non-negative square root of a rational, when it lies in the field."""
    value = Fraction(value)
    if value < 0:
        raise NotRepresentable(f"sqrt({value}) is not real")
    if value == 0:
        return ZERO
    # sqrt(p/q) = sqrt(p*q*m) / (sqrt(m)*q), rational exactly when p*q*m is a square
    product = value.numerator * value.denominator
    for m, root_m in _SQUAREFREE_ROOTS.items():
        root = math.isqrt(product * m)
        if root * root == product * m:
            return root_m * Fraction(root, m * value.denominator)
    raise NotRepresentable(f"sqrt({value}) is not in Q(i, 2^(1/4), sqrt(3))")
