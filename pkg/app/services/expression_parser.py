"""Parser for the polynomial input language.

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ("^" INTEGER)?
    atom    := INTEGER | NAME | "i" | FUNC "(" INTEGER ")" | "(" expr ")"
    FUNC    := "sqrt" | "root4"

Multiplication must be explicit. Division is only allowed by a nonzero
constant, so "3/5*z1" and "sqrt(3)/2" are fine. Positions in error
messages are 0-based character offsets into the full input.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from app.services.arith import I, ROOT4_2, tower_sqrt_rational
from app.services.errors import (
    DegreeTooSmall,
    ExpressionSyntaxError,
    NegativeExponent,
    NonRealForm,
    NotRepresentable,
    UnknownVariable,
)
from app.services.hermitian import HermitianForm
from app.services.poly import Polynomial

FUNCTIONS = ("sqrt", "root4")

_TOKEN = re.compile(r"(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass
class Token:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    position: int


def tokenize(text: str, offset: int = 0) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if match.group(1) is not None:
            tokens.append(Token("int", match.group(1), offset + match.start(1)))
        elif match.group(2) is not None:
            tokens.append(Token("name", match.group(2), offset + match.start(2)))
        elif match.group(3) is not None:
            char = match.group(3)
            if char not in "+-*/^()":
                raise ExpressionSyntaxError(f"unexpected character '{char}'", offset + match.start(3))
            tokens.append(Token("op", char, offset + match.start(3)))
        pos = match.end()
    tokens.append(Token("end", "", offset + len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, roster: Sequence[str], offset: int = 0):
        self.roster = tuple(roster)
        self.tokens = tokenize(text, offset)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.current
        if token.kind != "op" or token.text != text:
            found = token.text or "end of input"
            raise ExpressionSyntaxError(f"expected '{text}' but found '{found}'", token.position)
        return self.advance()

    def parse(self) -> Polynomial:
        if self.current.kind == "end":
            raise ExpressionSyntaxError("empty expression", self.current.position)
        result = self.expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"unexpected '{self.current.text}'", self.current.position)
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            right = self.term()
            result = result + right if op == "+" else result - right
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance()
            right = self.unary()
            if op.text == "*":
                result = result * right
                continue
            if not right.is_constant():
                raise ExpressionSyntaxError("division by a non-constant", op.position)
            divisor = right.coefficient((0,) * len(self.roster))
            if not divisor:
                raise ExpressionSyntaxError("division by zero", op.position)
            result = result.scale(divisor.inverse())
        return result

    def unary(self) -> Polynomial:
        if self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            operand = self.unary()
            return operand if op == "+" else -operand
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            self.advance()
            token = self.current
            if token.kind == "op" and token.text == "-":
                raise NegativeExponent(token.position)
            if token.kind != "int":
                raise ExpressionSyntaxError("exponent must be a non-negative integer", token.position)
            self.advance()
            base = base ** int(token.text)
        return base

    def atom(self) -> Polynomial:
        token = self.current
        if token.kind == "int":
            self.advance()
            return Polynomial.constant(self.roster, int(token.text))
        if token.kind == "op" and token.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if token.kind == "name":
            self.advance()
            if token.text in self.roster:
                return Polynomial.variable(self.roster, token.text)
            if token.text == "i":
                return Polynomial.constant(self.roster, I)
            if token.text in FUNCTIONS:
                return self.function(token)
            if self.current.kind == "op" and self.current.text == "(":
                raise ExpressionSyntaxError(f"unknown function '{token.text}'", token.position)
            raise UnknownVariable(token.text, token.position)
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"unexpected '{found}'", token.position)

    def function(self, name: Token) -> Polynomial:
        self.expect("(")
        argument = self.current
        if argument.kind != "int":
            raise ExpressionSyntaxError(f"{name.text} takes an integer literal", argument.position)
        self.advance()
        self.expect(")")
        value = int(argument.text)
        if name.text == "sqrt":
            return Polynomial.constant(self.roster, tower_sqrt_rational(value))
        if value != 2:
            raise NotRepresentable(f"root4({value}) is not supported; only root4(2) is in the field")
        return Polynomial.constant(self.roster, ROOT4_2)


def parse_polynomial(text: str, roster: Sequence[str], offset: int = 0) -> Polynomial:
    if not roster:
        raise ValueError("the variable roster is empty")
    return _Parser(text, roster, offset).parse()


def parse_polynomial_list(text: str, roster: Sequence[str]) -> list[Polynomial]:
    """Polynomials separated by ';'. Positions stay relative to the full text."""
    polys = []
    offset = 0
    for piece in text.split(";"):
        polys.append(parse_polynomial(piece, roster, offset))
        offset += len(piece) + 1
    return polys


def parse_roster(text: str) -> tuple[str, ...]:
    names = tuple(name.strip() for name in text.split(",") if name.strip())
    if not names:
        raise ExpressionSyntaxError("empty variable list", 0)
    for name in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or name in FUNCTIONS or name == "i":
            raise ExpressionSyntaxError(f"invalid variable name '{name}'", text.find(name))
    if len(set(names)) != len(names):
        raise ExpressionSyntaxError("repeated variable name", 0)
    return names


def conjugate_roster(roster: Sequence[str]) -> tuple[str, ...]:
    """Names standing for conj(z_k): z1 -> w1, or a trailing 'bar'."""
    out = []
    for name in roster:
        if name.startswith("z"):
            out.append("w" + name[1:])
        else:
            out.append(name + "bar")
    return tuple(out)


def parse_real_form(text: str, roster: Sequence[str], max_degree: Optional[int] = None) -> HermitianForm:
    """Real polynomial in z and w = conj(z) as a Hermitian form.

    Each term z^a * w^b becomes the matrix entry (a, b). The result must be
    Hermitian, otherwise NonRealForm is raised.
    """
    roster = tuple(roster)
    conjugates = conjugate_roster(roster)
    n = len(roster)
    p = parse_polynomial(text, roster + conjugates)
    entries = {}
    for exponent, c in p.terms.items():
        entries[(exponent[:n], exponent[n:])] = c
    needed = max((max(sum(a), sum(b)) for a, b in entries), default=0)
    if max_degree is None:
        max_degree = needed
    elif needed > max_degree:
        raise DegreeTooSmall(f"the form has degree {needed} in z or w, more than {max_degree}")
    form = HermitianForm.inhomogeneous(roster, max_degree, entries)
    if not form.is_hermitian():
        raise NonRealForm("the expression is not real: its coefficient matrix is not Hermitian")
    return form
