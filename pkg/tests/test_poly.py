import pytest

from app.services.arith import SQRT3
from app.services.errors import DegreeTooSmall, DimensionMismatch, LengthMismatch, RosterMismatch, ZeroPolynomial
from app.services.expression_parser import parse_polynomial
from app.services.linalg import determinant, inverse
from app.services.poly import (
    Comparison,
    MonomialOrder,
    Polynomial,
    compare_monomials,
    dehomogenize,
    format_monomial,
    homogenize,
    leading_monomial,
    monomials_of_degree,
    substitute_affine,
    substitute_linear,
)
from tests.conftest import AFFINE_2, HOMOGENEOUS_3, random_element, random_homogeneous

GREVLEX = MonomialOrder.GREVLEX
GRLEX = MonomialOrder.GRLEX


def P(text, roster=HOMOGENEOUS_3):
    return parse_polynomial(text, roster)


def descending(order, degree, nvars=3):
    monomials = monomials_of_degree(nvars, degree)
    return [format_monomial(a, HOMOGENEOUS_3) for a in sorted(monomials, key=order.key, reverse=True)]


def test_grevlex_chain_in_degree_two():
    assert descending(GREVLEX, 2) == ["Z0^2", "Z0*Z1", "Z1^2", "Z0*Z2", "Z1*Z2", "Z2^2"]


def test_grlex_chain_in_degree_two():
    assert descending(GRLEX, 2) == ["Z0^2", "Z0*Z1", "Z0*Z2", "Z1^2", "Z1*Z2", "Z2^2"]


def test_orders_differ_in_degree_three():
    # Z1^3 against Z0*Z2^2 is where the two orders part ways.
    assert compare_monomials((0, 3, 0), (1, 0, 2), GREVLEX) is Comparison.GREATER
    assert compare_monomials((0, 3, 0), (1, 0, 2), GRLEX) is Comparison.LESS


def test_compare_monomials_basics():
    alpha = (1, 2, 0)
    assert compare_monomials(alpha, alpha, GREVLEX) is Comparison.EQUAL
    assert compare_monomials((0, 0, 3), (1, 0, 0), GREVLEX) is Comparison.GREATER
    assert compare_monomials((0, 0, 3), (1, 0, 0), MonomialOrder.GREEN_GREVLEX) is Comparison.LESS
    with pytest.raises(LengthMismatch):
        compare_monomials((1, 0), (1, 0, 0), GREVLEX)


def test_order_parsing():
    assert MonomialOrder.parse("GrevLex") is GREVLEX
    assert MonomialOrder.parse("green_grlex") is MonomialOrder.GREEN_GRLEX
    assert GREVLEX.green is MonomialOrder.GREEN_GREVLEX
    assert MonomialOrder.GREEN_GRLEX.classical is GRLEX
    with pytest.raises(ValueError):
        MonomialOrder.parse("lex")


def test_leading_monomial_examples():
    p = P("Z1^2 - sqrt(3)*Z1*Z2 + Z2^2 - Z1*Z0")
    assert leading_monomial(p, GREVLEX) == (1, 1, 0)
    assert p.leading_coefficient(GREVLEX) == -1
    assert leading_monomial(P("1 + z1", AFFINE_2), MonomialOrder.GREEN_GRLEX) == (0, 0)
    assert leading_monomial(P("Z2^3"), GREVLEX) == (0, 0, 3)
    with pytest.raises(ZeroPolynomial):
        leading_monomial(Polynomial.zero(HOMOGENEOUS_3), GREVLEX)


def test_polynomial_print_format():
    p = P("Z1^2 - sqrt(3)*Z1*Z2 + Z2^2 - Z1*Z0")
    assert p.format(GREVLEX) == "-Z0*Z1 + Z1^2 - sqrt(3)*Z1*Z2 + Z2^2"
    assert str(P("(1 + i)*Z0 + 3")) == "(1 + i)*Z0 + 3"
    assert str(Polynomial.zero(HOMOGENEOUS_3)) == "0"


def test_arithmetic_is_exact():
    x, y = P("Z0 + Z1"), P("Z0 - Z1")
    assert x * y == P("Z0^2 - Z1^2")
    assert (x + y) - 2 * P("Z0") == 0
    assert x ** 3 == P("Z0^3 + 3*Z0^2*Z1 + 3*Z0*Z1^2 + Z1^3")
    assert (x * SQRT3).coefficient((1, 0, 0)) == SQRT3
    assert (x - x).is_zero()


def test_mixed_rosters_are_rejected():
    with pytest.raises(RosterMismatch):
        P("Z0") + P("z1", AFFINE_2)


def test_degree_queries():
    p = P("Z0^2*Z1 + Z2")
    assert p.total_degree() == 3
    assert p.min_degree() == 1
    assert not p.is_homogeneous()
    assert P("Z0*Z1 - Z2^2").is_homogeneous()
    assert Polynomial.zero(HOMOGENEOUS_3).total_degree() == -1


def test_substitute_linear():
    p = P("Z0^2 + Z1*Z2")
    identity = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert substitute_linear(p, identity) == p
    swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert substitute_linear(P("Z0*Z1"), swap) == P("Z0*Z1")
    roster = ("Z0", "Z1")
    shear = [[1, 1], [0, 1]]
    assert substitute_linear(P("Z0^2", roster), shear) == P("Z0^2 + 2*Z0*Z1 + Z1^2", roster)
    with pytest.raises(DimensionMismatch):
        substitute_linear(p, shear)


def test_substitute_affine():
    p = P("z1^2", AFFINE_2)
    assert substitute_affine(p, [[1, 0], [0, 1]], [1, 0]) == P("1 + 2*z1 + z1^2", AFFINE_2)
    q = P("z1*z2 + z2", AFFINE_2)
    matrix = [[2, 1], [-1, 3]]
    assert substitute_affine(q, matrix, [0, 0]) == substitute_linear(q, matrix)
    moved = substitute_affine(P("z2", AFFINE_2), matrix, [5, 7])
    assert moved == P("7 - z1 + 3*z2", AFFINE_2)


def test_homogenize_examples():
    roster = ("Z1", "Z2")
    assert homogenize(P("z1*z2", AFFINE_2), 2, roster=roster) == P("Z1*Z2", ("Z0",) + roster)
    assert homogenize(P("z1*z2", AFFINE_2), 3, roster=roster) == P("Z0*Z1*Z2")
    assert homogenize(P("1", AFFINE_2), 3, roster=roster) == P("Z0^3")
    with pytest.raises(DegreeTooSmall):
        homogenize(P("z1^3", AFFINE_2), 2)


def test_homogenize_faran_quadratic():
    roster = ("Z1", "Z2")
    images = [homogenize(P(t, AFFINE_2), 2, roster=roster) for t in ("1", "z1", "z1*z2", "z2^2")]
    assert images == [P("Z0^2"), P("Z1*Z0"), P("Z1*Z2"), P("Z2^2")]


def test_dehomogenize_inverts_homogenize():
    p = P("3*z1^2 - z2 + 1/2", AFFINE_2)
    h = homogenize(p, 4, "Z0", ("Z1", "Z2"))
    assert h.is_homogeneous() and h.total_degree() == 4
    assert dehomogenize(h, "Z0", AFFINE_2) == p


def test_compose_uses_images():
    p = P("Z0*Z1 + Z2^2")
    images = [P("z1", AFFINE_2), P("z2", AFFINE_2), P("z1 - 1", AFFINE_2)]
    assert p.compose(images) == P("z1*z2 + z1^2 - 2*z1 + 1", AFFINE_2)


def test_monic_and_conjugate():
    p = P("2*i*Z0 + Z1")
    monic = p.monic(GREVLEX)
    assert monic.leading_coefficient(GREVLEX) == 1
    assert p.conj_coefficients() == P("-2*i*Z0 + Z1")


ALL_ORDERS = list(MonomialOrder)


def random_index(rng, nvars=3, top=3):
    return tuple(rng.randint(0, top) for _ in range(nvars))


def random_polynomial(rng, roster=HOMOGENEOUS_3, terms=4, top=3):
    coefficients = {random_index(rng, len(roster), top): random_element(rng) for _ in range(terms)}
    return Polynomial(roster, {alpha: c for alpha, c in coefficients.items() if not c.is_zero()})


@pytest.mark.parametrize("order", ALL_ORDERS, ids=lambda o: o.value)
def test_orders_are_multiplicative(rng, order):
    for _ in range(200):
        a, b, c = random_index(rng), random_index(rng), random_index(rng)
        shifted = compare_monomials(
            tuple(x + z for x, z in zip(a, c)), tuple(y + z for y, z in zip(b, c)), order
        )
        assert shifted == compare_monomials(a, b, order)


@pytest.mark.parametrize("order", [GREVLEX, GRLEX], ids=lambda o: o.value)
def test_leading_monomial_of_a_product(rng, order):
    for _ in range(30):
        p, q = random_polynomial(rng), random_polynomial(rng)
        if p.is_zero() or q.is_zero():
            continue
        expected = tuple(x + y for x, y in zip(leading_monomial(p, order), leading_monomial(q, order)))
        assert leading_monomial(p * q, order) == expected


def test_substitution_by_the_inverse_matrix_undoes_it(rng):
    for _ in range(10):
        matrix = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        if not determinant(matrix):
            continue
        p = random_polynomial(rng, top=2)
        assert substitute_linear(substitute_linear(p, matrix), inverse(matrix)) == p


def test_green_and_classical_grevlex_agree_on_homogeneous_polynomials(rng):
    for degree in range(1, 5):
        for _ in range(10):
            p = random_homogeneous(rng, HOMOGENEOUS_3, degree, terms=min(3, degree + 1))
            assert leading_monomial(p, GREVLEX) == leading_monomial(p, MonomialOrder.GREEN_GREVLEX)
            assert leading_monomial(p, GRLEX) == leading_monomial(p, MonomialOrder.GREEN_GRLEX)
