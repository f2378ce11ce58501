from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings

from cyclotomic import OMEGA
from sphere_polynomials import (
    DEFAULT_CONSTRAINTS,
    EPS,
    LAM,
    LAMB,
    Z1,
    Z2,
    Z3,
    ZB1,
    ZB2,
    ZB3,
    VARIABLES,
    SpherePoly,
    is_zero_mod_constraints,
    numeric_sphere_point,
    poly_add,
    poly_mul,
    poly_scale,
    substitute,
)
from strategies import raw_sphere_terms, sphere_polys


def test_sphere_constraints_reduce_to_zero():
    assert is_zero_mod_constraints(ZB1 * Z1 + ZB2 * Z2 + ZB3 * Z3 - 1)
    assert is_zero_mod_constraints(ZB2 * Z2 + ZB3 * Z3 - EPS)
    assert is_zero_mod_constraints(LAM * LAMB - 1)


def test_non_identity_is_not_zero():
    assert not is_zero_mod_constraints(ZB1 * Z1 - 1)
    assert not is_zero_mod_constraints(Z2 * ZB3)


def test_rewrite_system_terminates():
    assert DEFAULT_CONSTRAINTS.check_termination()


def test_normal_form_is_independent_of_rule_order():
    # z1^2 zb1^2 z3 zb3 + z2 z3 zb3 lam lamb, unreduced
    raw = {(2, 0, 1, 2, 0, 1, 0, 0, 0): 1, (0, 1, 1, 0, 0, 1, 0, 1, 1): 1}
    expected = SpherePoly(raw).terms
    for order in permutations(range(3)):
        assert SpherePoly(raw, DEFAULT_CONSTRAINTS.reordered(order)).terms == expected


def test_confluence_on_a_raw_monomial():
    # zb1 z1 zb3 z3 read either rule first
    product = SpherePoly({(1, 0, 1, 1, 0, 1, 0, 0, 0): 1})
    expected = (1 - EPS) * (EPS - ZB2 * Z2)
    for order in permutations(range(3)):
        reordered = SpherePoly({(1, 0, 1, 1, 0, 1, 0, 0, 0): 1}, DEFAULT_CONSTRAINTS.reordered(order))
        assert reordered.terms == product.terms
    assert product == expected


def test_conjugation():
    p = OMEGA * Z1 * ZB2
    assert p.conj() == OMEGA ** 2 * ZB1 * Z2
    assert (EPS * 3).conj() == EPS * 3


def test_substitution_multiplies_by_phases():
    p = ZB1 * Z2
    image = substitute(p, {"z1": OMEGA * Z1, "zb1": OMEGA ** 2 * ZB1})
    assert image == OMEGA ** 2 * ZB1 * Z2


def test_substitution_must_respect_conjugation():
    with pytest.raises(ValueError):
        Z1.substitute({"z1": OMEGA * Z1})
    with pytest.raises(ValueError):
        EPS.substitute({"eps": Z1})
    with pytest.raises(ValueError):
        Z1.substitute({"w": Z1})


def test_functional_helpers():
    assert poly_add(Z1, Z2) == Z2 + Z1
    assert poly_mul(Z1, ZB1) == 1 - EPS
    assert poly_scale(Z1, Fraction(1, 2)) * 2 == Z1


def test_string_form():
    assert str(SpherePoly()) == "0"
    assert str(SpherePoly.constant(3)) == "3"
    assert "z2" in str(Z2 * 2)


def test_numeric_points_satisfy_constraints(rng):
    for _ in range(20):
        values = numeric_sphere_point(rng, Fraction(49, 625))
        assert abs(values["z1"]) ** 2 == pytest.approx(1 - 49 / 625)
        assert abs(values["z2"]) ** 2 + abs(values["z3"]) ** 2 == pytest.approx(49 / 625)
        for constraint in (ZB1 * Z1 + ZB2 * Z2 + ZB3 * Z3, LAM * LAMB):
            raw = constraint.evaluate(values)
            assert raw == pytest.approx(1.0)


@settings(max_examples=30, deadline=None)
@given(sphere_polys(), sphere_polys(), sphere_polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@settings(max_examples=30, deadline=None)
@given(sphere_polys(), sphere_polys())
def test_reduction_commutes_with_evaluation(p, q):
    values = numeric_sphere_point(np.random.default_rng(7), Fraction(1, 16))
    assert (p * q).evaluate(values) == pytest.approx(p.evaluate(values) * q.evaluate(values), abs=1e-8)
    assert p.conj().evaluate(values) == pytest.approx(np.conj(p.evaluate(values)), abs=1e-8)


SOUNDNESS_EPS = Fraction(49, 625)
SOUNDNESS_POINTS = [
    numeric_sphere_point(np.random.default_rng(seed), SOUNDNESS_EPS) for seed in range(100)
]


def _evaluate_raw(terms, values):
    point = np.array([complex(values[name]) for name in VARIABLES])
    return sum(c.embed() * np.prod(point ** np.array(mono)) for mono, c in terms.items())


@settings(max_examples=1000, deadline=None)
@given(raw_sphere_terms())
def test_reduction_is_confluent(terms):
    expected = SpherePoly(terms).terms
    for order in permutations(range(3)):
        assert SpherePoly(terms, DEFAULT_CONSTRAINTS.reordered(order)).terms == expected


@settings(max_examples=1000, deadline=None)
@given(raw_sphere_terms())
def test_reduced_form_agrees_with_direct_evaluation(terms):
    reduced = SpherePoly(terms)
    for values in SOUNDNESS_POINTS:
        assert reduced.evaluate(values) == pytest.approx(_evaluate_raw(terms, values), abs=1e-10)
