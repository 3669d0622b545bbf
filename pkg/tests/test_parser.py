from fractions import Fraction

import pytest

from app.services.arith import I, ROOT4_2, SQRT3
from app.services.errors import (
    DegreeTooSmall,
    ExpressionSyntaxError,
    NegativeExponent,
    NonRealForm,
    NotRepresentable,
    UnknownVariable,
)
from app.services.expression_parser import (
    conjugate_roster,
    parse_polynomial,
    parse_polynomial_list,
    parse_real_form,
    parse_roster,
    tokenize,
)
from app.services.poly import Polynomial
from tests.conftest import AFFINE_2


def P(text):
    return parse_polynomial(text, AFFINE_2)


def test_coefficient_literals():
    assert P("sqrt(3)*z1*z2").coefficient((1, 1)) == SQRT3
    assert P("3/5*z1").coefficient((1, 0)) == Fraction(3, 5)
    assert P("root4(2)*i").coefficient((0, 0)) == ROOT4_2 * I
    assert P("sqrt(3)/2") == Polynomial.constant(AFFINE_2, SQRT3 / 2)


def test_lebl_numerator():
    p = P("z1^2 - sqrt(3)*z1*z2 + z2^2 - z1")
    assert p.coefficient((2, 0)) == 1
    assert p.coefficient((1, 1)) == -SQRT3
    assert p.coefficient((0, 2)) == 1
    assert p.coefficient((1, 0)) == -1
    assert len(p.terms) == 4


def test_whitespace_and_grouping():
    assert P(" ( z1 + z2 ) ^ 2 ") == P("z1^2+2*z1*z2+z2^2")
    assert P("-(z1 - 1)") == P("1 - z1")
    assert P("2*-z1") == P("-2*z1")


def test_negative_exponent():
    with pytest.raises(NegativeExponent) as info:
        P("z1^-1")
    assert info.value.position == 3


def test_unknown_variable_position():
    with pytest.raises(UnknownVariable) as info:
        P("z1 + z3")
    assert info.value.name == "z3"
    assert info.value.position == 5


@pytest.mark.parametrize(
    "text, position",
    [
        ("z1 +* z2", 4),
        ("2z1", 1),
        ("(z1 + z2", 8),
        ("z1 # z2", 3),
        ("", 0),
    ],
)
def test_syntax_errors_carry_positions(text, position):
    with pytest.raises(ExpressionSyntaxError) as info:
        P(text)
    assert info.value.position == position
    assert f"position {position}" in str(info.value)


def test_division_only_by_constants():
    with pytest.raises(ExpressionSyntaxError):
        P("z1/z2")
    with pytest.raises(ExpressionSyntaxError):
        P("z1/0")


def test_unknown_function_and_unsupported_roots():
    with pytest.raises(ExpressionSyntaxError):
        P("cos(2)")
    with pytest.raises(NotRepresentable):
        P("sqrt(5)")
    with pytest.raises(NotRepresentable):
        P("root4(3)")


def test_list_positions_are_global():
    polys = parse_polynomial_list("z1; z2^2; 0", AFFINE_2)
    assert [p.format() for p in polys] == ["z1", "z2^2", "0"]
    with pytest.raises(UnknownVariable) as info:
        parse_polynomial_list("z1; z3", AFFINE_2)
    assert info.value.position == 4


def test_tokens():
    kinds = [t.kind for t in tokenize("z1^2 + 3")]
    assert kinds == ["name", "op", "int", "op", "int", "end"]


def test_rosters():
    assert parse_roster("Z0, Z1,Z2") == ("Z0", "Z1", "Z2")
    assert conjugate_roster(("z1", "z2", "u")) == ("w1", "w2", "ubar")
    with pytest.raises(ExpressionSyntaxError):
        parse_roster("z1, z1")
    with pytest.raises(ExpressionSyntaxError):
        parse_roster("z1, i")


def test_real_forms():
    form = parse_real_form("z1*w1 - z2*w2", AFFINE_2)
    assert form.entry((1, 0), (1, 0)) == 1
    assert form.entry((0, 1), (0, 1)) == -1
    mixed = parse_real_form("i*z1*w2 - i*z2*w1 + 1", AFFINE_2)
    assert mixed.is_hermitian()
    with pytest.raises(NonRealForm):
        parse_real_form("z1*w2", AFFINE_2)
    with pytest.raises(DegreeTooSmall):
        parse_real_form("z1^2*w1^2", AFFINE_2, max_degree=1)
