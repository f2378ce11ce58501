import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings

from cyclotomic import (
    OMEGA,
    ONE,
    ZERO,
    ArithmeticInconsistency,
    CycloNumber,
    CycloZeroDivisionError,
    angle_of_root,
    cyclotomic_coefficients,
    multiplicative_order,
    root_of_unity,
    root_of_unity_angle,
)
from strategies import cyclo_numbers, tall_integers


def test_cyclotomic_polynomial_coefficients():
    assert cyclotomic_coefficients(1) == (-1, 1)
    assert cyclotomic_coefficients(3) == (1, 1, 1)
    assert cyclotomic_coefficients(9) == (1, 0, 0, 1, 0, 0, 1)


def test_omega_is_a_primitive_cube_root():
    assert OMEGA ** 3 == 1
    assert OMEGA != 1
    assert (ONE + OMEGA + OMEGA ** 2).is_zero()


def test_sum_of_roots_vanishes_without_structural_zero():
    total = ONE + OMEGA + OMEGA ** 2
    assert not total.is_structurally_zero
    assert total.is_zero()
    assert str(total) == "0"


def test_equality_across_orders():
    assert root_of_unity(9, 3) == OMEGA
    assert hash(root_of_unity(9, 3)) == hash(OMEGA)
    assert root_of_unity(6, 2) == OMEGA
    assert root_of_unity(2, 1) == -1


def test_rational_detection():
    value = OMEGA + OMEGA ** 2
    assert value.is_rational()
    assert value.to_fraction() == -1
    assert not OMEGA.is_rational()
    with pytest.raises(ValueError):
        OMEGA.to_fraction()


def test_inverse_of_multi_term_number():
    x = 1 + 2 * root_of_unity(5, 1)
    assert x * x.inv() == 1
    assert (x / x) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(CycloZeroDivisionError):
        ZERO.inv()
    with pytest.raises(ZeroDivisionError):
        ONE / (ONE + OMEGA + OMEGA ** 2)


def test_embed_matches_complex_exponential():
    assert OMEGA.embed() == pytest.approx(cmath.exp(2j * cmath.pi / 3))
    assert root_of_unity(9, 2).embed() == pytest.approx(cmath.exp(4j * cmath.pi / 9))


def test_root_of_unity_angle_reduces_mod_one():
    assert root_of_unity_angle(Fraction(4, 3)) == OMEGA
    assert root_of_unity_angle(Fraction(-1, 3)) == OMEGA ** 2


def test_orders_and_angles():
    assert multiplicative_order(-1) == 2
    assert multiplicative_order(ONE + OMEGA) == 6
    assert multiplicative_order(2) is None
    assert angle_of_root(OMEGA) == Fraction(1, 3)
    assert angle_of_root(root_of_unity(9, 3)) == Fraction(1, 3)
    assert angle_of_root(CycloNumber.rational(3)) is None


def test_nonpositive_order_rejected():
    with pytest.raises(ValueError):
        CycloNumber(0)
    with pytest.raises(ValueError):
        root_of_unity(0)


def test_arithmetic_inconsistency_is_an_arithmetic_error():
    assert issubclass(ArithmeticInconsistency, ArithmeticError)


@settings(max_examples=60, deadline=None)
@given(cyclo_numbers(), cyclo_numbers(), cyclo_numbers())
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0


@settings(max_examples=60, deadline=None)
@given(cyclo_numbers(), cyclo_numbers())
def test_embedding_is_a_ring_homomorphism(x, y):
    assert (x * y).embed() == pytest.approx(x.embed() * y.embed(), rel=1e-12, abs=1e-12)
    assert (x + y).embed() == pytest.approx(x.embed() + y.embed(), rel=1e-12, abs=1e-12)
    assert x.conj().embed() == pytest.approx(x.embed().conjugate(), rel=1e-12, abs=1e-12)


def _height(x):
    return 1 + sum(abs(float(c)) for c in x.coeffs)


@settings(max_examples=200, deadline=None)
@given(cyclo_numbers(coefficients=tall_integers), cyclo_numbers(coefficients=tall_integers))
def test_embedding_holds_at_large_heights(x, y):
    # float error grows with the coefficient height, so compare against it
    scale = _height(x) * _height(y)
    assert abs((x * y).embed() - x.embed() * y.embed()) <= 1e-12 * scale
    assert abs((x + y).embed() - (x.embed() + y.embed())) <= 1e-12 * scale
    assert abs(x.conj().embed() - x.embed().conjugate()) <= 1e-12 * _height(x)


@settings(max_examples=40, deadline=None)
@given(cyclo_numbers())
def test_norm_is_real_and_inverse_exact(x):
    norm = x * x.conj()
    assert abs(norm.embed().imag) < 1e-9
    if not x.is_zero():
        assert x * x.inv() == 1


@settings(max_examples=40, deadline=None)
@given(cyclo_numbers())
def test_compact_preserves_value(x):
    assert x.compact() == x
    assert x.compact().canonical_key() == x.canonical_key()
