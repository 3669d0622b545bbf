import random

import pytest

from app.services.arith import ONE
from app.services.errors import DegreeTooSmall, NotDivisible
from app.services.expression_parser import parse_polynomial, parse_polynomial_list, parse_real_form
from app.services.gin import initial_subspace
from app.services.hermitian import (
    HermitianForm,
    Signature,
    cayley_j_unitary,
    divide_by_norm,
    holomorphic_decomposition_span,
    multiply_by_norm,
    norm_form,
    quotient_form_gin,
    real_form_gin,
    squared_norm_form,
)
from app.services.linalg import as_matrix, conjugate_transpose, mat_mul
from app.services.poly import MonomialOrder
from tests.conftest import AFFINE_2, HOMOGENEOUS_3

BALL_2 = Signature(2, 0)
FARAN_CUBIC = "Z0^3; Z1^3; sqrt(3)*Z0*Z1*Z2; Z2^3"


def polys(text):
    return parse_polynomial_list(text, HOMOGENEOUS_3)


def mono(text):
    return parse_polynomial(text, HOMOGENEOUS_3).leading_monomial(MonomialOrder.GREVLEX)


def faran_cubic_quotient():
    r = squared_norm_form(polys(FARAN_CUBIC), 1)
    return divide_by_norm(r, BALL_2)


def test_signature():
    sig = Signature.parse("2,1")
    assert (sig.a, sig.b) == (2, 1)
    assert sig.dimension == 3
    assert sig.homogeneous_negatives == 2
    assert str(sig) == "(2,1)"
    assert Signature.parse("3") == Signature(3, 0)
    with pytest.raises(ValueError):
        Signature(0, 1)


def test_squared_norm_of_identity_is_the_norm():
    r = squared_norm_form(polys("Z0; Z1; Z2"), 1)
    assert r == norm_form(HOMOGENEOUS_3, 1)
    assert r.format() == "-|Z0|^2 + |Z1|^2 + |Z2|^2"


def test_squared_norm_of_faran_cubic():
    r = squared_norm_form(polys(FARAN_CUBIC), 1)
    assert r.entries == {
        (mono("Z0^3"), mono("Z0^3")): -ONE,
        (mono("Z1^3"), mono("Z1^3")): ONE,
        (mono("Z0*Z1*Z2"), mono("Z0*Z1*Z2")): 3 * ONE,
        (mono("Z2^3"), mono("Z2^3")): ONE,
    }
    assert r.is_hermitian()


def test_repeated_component_cancels():
    r = squared_norm_form(polys("Z1^2 - Z0*Z2; Z1^2 - Z0*Z2; Z0^2"), 1)
    assert r.format() == "|Z0^2|^2"
    zero = squared_norm_form(polys("Z0 + Z1; Z0 + Z1"), 1)
    assert zero.is_zero()


def test_divide_identity_norm():
    q, side = divide_by_norm(norm_form(HOMOGENEOUS_3, 1), BALL_2)
    assert side == 1
    assert q.degree == 0
    assert q.format() == "1"


def test_faran_cubic_quotient():
    q, side = faran_cubic_quotient()
    assert side == 1
    expected = {"Z0^2": 1, "Z0*Z1": 1, "Z0*Z2": 1, "Z1^2": 1, "Z2^2": 1, "Z1*Z2": -1}
    assert q.entries == {(mono(m), mono(m)): ONE * c for m, c in expected.items()}
    assert multiply_by_norm(q, 1) == squared_norm_form(polys(FARAN_CUBIC), 1)


def test_not_divisible():
    r = squared_norm_form(polys("Z0; Z1; Z1"), 1)
    with pytest.raises(NotDivisible):
        divide_by_norm(r, BALL_2)


BALL_BUMPS = [
    "Z1^2", "Z0*Z2", "2*Z2^2", "Z1*Z2", "Z0^2", "Z0*Z1 + Z2^2",
    "Z0*Z1", "i*Z1*Z2", "sqrt(3)*Z0*Z2", "Z1^2 - Z2^2", "Z0^2 + i*Z0*Z1", "root4(2)*Z1^2",
]


def test_residual_is_nonzero_on_perturbed_maps():
    base = polys("Z0^2; Z0*Z1; Z1*Z2; Z2^2")
    divide_by_norm(squared_norm_form(base, 1), BALL_2)
    for k, bump in enumerate(BALL_BUMPS):
        moved = list(base)
        slot = 1 + k % 3
        moved[slot] = moved[slot] + parse_polynomial(bump, HOMOGENEOUS_3)
        with pytest.raises(NotDivisible):
            divide_by_norm(squared_norm_form(moved, 1), BALL_2)


@pytest.mark.parametrize("slot,bump", [(1, "Z0^2"), (2, "Z1*Z2"), (3, "Z0*Z1")])
def test_residual_is_nonzero_on_perturbed_maps_into_q21(slot, bump):
    # (z2^2, z1^2, sqrt(2)*z2) into Q(2,1); the denominator and z2^2 are the negative slots
    base = polys("Z0^2; Z2^2; Z1^2; sqrt(2)*Z0*Z2")
    divide_by_norm(squared_norm_form(base, 2), BALL_2)
    moved = list(base)
    moved[slot] = moved[slot] + parse_polynomial(bump, HOMOGENEOUS_3)
    with pytest.raises(NotDivisible):
        divide_by_norm(squared_norm_form(moved, 2), BALL_2)


def test_side_is_reported_for_the_reflected_map():
    r = squared_norm_form(polys(FARAN_CUBIC), 1)
    q, side = divide_by_norm(-r, BALL_2)
    assert side == -1
    assert q == faran_cubic_quotient()[0]


def test_division_needs_positive_degree():
    with pytest.raises(DegreeTooSmall):
        divide_by_norm(HermitianForm.homogeneous(HOMOGENEOUS_3, 0, {}), BALL_2)


def test_decomposition_of_faran_cubic_quotient():
    q, _ = faran_cubic_quotient()
    span = holomorphic_decomposition_span(q)
    assert len(span) == 6
    degree_two = initial_subspace(span, MonomialOrder.GREVLEX)
    assert degree_two.dimension == 6


@pytest.mark.parametrize("strategy", ["leading", "trailing", "echelon"])
def test_pivot_strategies_span_the_same_space(strategy):
    q = HermitianForm.homogeneous(
        HOMOGENEOUS_3, 1,
        {(mono("Z0"), mono("Z1")): 2 * ONE, (mono("Z1"), mono("Z0")): 2 * ONE},
    )
    span = holomorphic_decomposition_span(q, strategy)
    assert len(span) == 2
    assert initial_subspace(span, MonomialOrder.GRLEX).monomials == {mono("Z0"), mono("Z1")}


def test_rank_one_decomposition():
    q = HermitianForm.homogeneous(HOMOGENEOUS_3, 1, {(mono("Z0"), mono("Z0")): ONE})
    assert [p.format() for p in holomorphic_decomposition_span(q)] == ["Z0"]
    assert holomorphic_decomposition_span(HermitianForm.homogeneous(HOMOGENEOUS_3, 1, {})) == []


def test_quotient_gin_of_faran_cubic(cfg):
    q, _ = faran_cubic_quotient()
    gin = quotient_form_gin(q, cfg)
    assert gin.format() == "Z0^2, Z0*Z1, Z1^2, Z0*Z2, Z1*Z2, Z2^2"


def test_quotient_gin_of_a_zero_form(cfg):
    gin = quotient_form_gin(HermitianForm.homogeneous(HOMOGENEOUS_3, 1, {}), cfg)
    assert gin.is_zero()
    assert gin.format() == "0"


def test_real_form_gins(cfg):
    assert real_form_gin(parse_real_form("z1*w1", AFFINE_2), cfg).format() == "{1, z1}"
    assert real_form_gin(parse_real_form("0", AFFINE_2), cfg).format() == "{1}"
    faran_q = parse_real_form("z1^2*w1^2 + z2^2*w2^2 - z1*z2*w1*w2 + z1*w1 + z2*w2 + 1", AFFINE_2)
    assert real_form_gin(faran_q, cfg).format() == "{1, z1, z2, z1^2, z1*z2, z2^2}"


def test_dehomogenized_quotient_matches_the_real_form():
    q, _ = faran_cubic_quotient()
    expected = parse_real_form("z1^2*w1^2 + z2^2*w2^2 - z1*z2*w1*w2 + z1*w1 + z2*w2 + 1", AFFINE_2)
    assert q.dehomogenized(AFFINE_2) == expected


@pytest.mark.parametrize("signs", [[-1, 1, 1], [-1, -1, 1, 1], [1, 1]])
def test_cayley_matrices_preserve_the_form(signs):
    rng = random.Random(len(signs))
    for _ in range(3):
        t = cayley_j_unitary(signs, rng)
        j = as_matrix([[s if r == c else 0 for c, s in enumerate(signs)] for r in range(len(signs))])
        assert mat_mul(conjugate_transpose(t), mat_mul(j, t)) == j
