from fractions import Fraction

import numpy as np
import pytest

from cyclotomic import OMEGA, ArithmeticInconsistency, CycloNumber, root_of_unity
from representations import PHI_A, PHI_B
from sphere_regions import (
    AXIS_POINTS,
    BOUNDARY,
    CENTER_POINT,
    INTERIOR,
    OUTSIDE,
    P_NUMERIC,
    P_TILDE,
    P_SCALE_SQ,
    RegionSpec,
    b_twist_identity,
    b_twist_terms,
    boundary_points,
    classify,
    conjugation_identities,
    disjointness_bound,
    in_V1,
    in_V2,
    point,
    region_summary,
    sample_v1_points,
    structured_points,
    validate_epsilon,
    verify_boundary_points,
    verify_disjointness,
    verify_invariance,
    verify_scalar_invariance,
)


@pytest.mark.parametrize("raw, expected", [
    ("49/625", Fraction(49, 625)), (Fraction(1, 16), Fraction(1, 16)), ("1/10", Fraction(1, 10)),
])
def test_validate_epsilon_accepts_rationals_below_one_ninth(raw, expected):
    assert validate_epsilon(raw) == expected


@pytest.mark.parametrize("raw", ["1/9", "1/4", 0, "-1/20", "abc", "1/0"])
def test_validate_epsilon_rejects(raw):
    with pytest.raises(ValueError):
        validate_epsilon(raw)


def test_region_spec_validates_and_p_is_unitary():
    assert RegionSpec().p_is_unitary()
    with pytest.raises(ValueError):
        RegionSpec(Fraction(1, 4))


def test_axis_points_sit_in_v1_only(eps):
    for p in AXIS_POINTS:
        assert classify(p, eps) == (INTERIOR, OUTSIDE)


def test_center_point_lies_in_neither_region(eps):
    assert classify(CENTER_POINT, eps) == (OUTSIDE, OUTSIDE)
    assert classify(CENTER_POINT.transform(P_TILDE, P_SCALE_SQ), eps) == (OUTSIDE, OUTSIDE)


def test_translated_axis_points_sit_in_v2(eps):
    image = AXIS_POINTS[0].transform(P_TILDE, P_SCALE_SQ)
    assert classify(image, eps) == (OUTSIDE, INTERIOR)


def test_exact_point_must_lie_on_the_sphere():
    with pytest.raises(ValueError):
        point(1, 1, 0)
    with pytest.raises(ValueError):
        point(1, 0)
    assert point(1, 1, 0, scale_sq=Fraction(1, 2)).moduli_sq() == (Fraction(1, 2), Fraction(1, 2), 0)


def test_exact_moduli_refuse_irrational_squares():
    # |1 + zeta_5|^2 is irrational, so this cannot be a sphere point with rational scale
    with pytest.raises(ArithmeticInconsistency):
        point(root_of_unity(5, 1) + 1, 0, 0)


def test_numeric_membership_matches_exact(eps):
    for p in structured_points(eps, 1) + structured_points(eps, 2):
        exact = classify(p, eps)
        if BOUNDARY in exact:
            continue
        assert classify(p.embed(), eps) == exact


def test_numeric_points_off_the_sphere_rejected(eps):
    with pytest.raises(ValueError):
        in_V1(np.array([1.0, 1.0, 0.0]), eps)
    with pytest.raises(ValueError):
        in_V2(np.array([1.0, 0.0]), eps)


@pytest.mark.parametrize("eps_value", [Fraction(49, 625), Fraction(1, 16)])
def test_boundary_points_are_exactly_on_the_boundary(eps_value):
    points = boundary_points(eps_value)
    assert points
    for p in points:
        assert sum(p.moduli_sq()) == 1
        assert in_V1(p, eps_value) == BOUNDARY
    assert verify_boundary_points(eps_value).certified


def test_boundary_point_for_default_epsilon():
    # y1 = 24/7, y2 = -1, y3 = 0
    first = boundary_points(Fraction(49, 625))[0]
    assert first.moduli_sq() == (Fraction(576, 625), Fraction(49, 625), 0)


def test_boundary_stays_boundary_under_rotation(eps):
    for p in boundary_points(eps, limit=4):
        assert in_V1(p.transform(PHI_A), eps) == BOUNDARY
        assert in_V1(p.transform(PHI_B), eps) == BOUNDARY


def test_structured_points_rejects_unknown_region(eps):
    with pytest.raises(ValueError):
        structured_points(eps, 3)


def test_disjointness_bound_exceeds_epsilon(eps):
    bound = disjointness_bound(eps)
    assert bound > eps
    assert disjointness_bound(Fraction(1, 10)) > Fraction(1, 10)


def test_disjointness_certified(eps):
    result = verify_disjointness(eps, samples=500, seed=3)
    assert result.certified
    assert result.check_id == "geometry.disjointness[49/625]"
    assert result.witness["literal_margin"] == Fraction(2, 3) - 3 * eps
    assert result.witness["counterexamples"] == []


def test_sampled_v1_points_are_in_v1(eps, rng):
    points = sample_v1_points(rng, eps, 200)
    assert np.allclose(np.linalg.norm(points, axis=1), 1.0)
    assert {in_V1(z, eps) for z in points} <= {INTERIOR, BOUNDARY}
    assert {in_V1(w, eps) for w in points @ P_NUMERIC.T} == {OUTSIDE}


def test_conjugation_identities_hold():
    result = conjugation_identities()
    assert result.certified, result.witness["failing"]


@pytest.mark.parametrize("i", [1, 2])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_b_twist_identity(i, k):
    first, second, third = b_twist_terms(i, k)
    assert first == second == third
    assert b_twist_identity(i, k)


def test_b_twist_rejects_region_zero():
    with pytest.raises(ValueError):
        b_twist_terms(0, 1)


@pytest.mark.parametrize("i", [0, 1, 2])
def test_invariance_of_each_region(i, eps):
    result = verify_invariance(i, 3, eps, samples=20, seed=1)
    assert result.certified, result.witness["classification_changes"]
    assert result.check_id == f"geometry.invariance.U{i}.P3"


def test_invariance_rejects_bad_arguments(eps):
    with pytest.raises(ValueError):
        verify_invariance(3, 3, eps, samples=0)
    with pytest.raises(ValueError):
        verify_invariance(1, 2, eps, samples=0)


def test_scalar_invariance(eps):
    assert verify_scalar_invariance(eps).certified
    p = AXIS_POINTS[1]
    assert classify(p.scaled(OMEGA), eps) == classify(p, eps)
    assert p.scaled(OMEGA).same_point(point(0, OMEGA, 0))
    assert not p.same_point(AXIS_POINTS[2])


def test_region_summary_covers_all_regions(eps):
    rows = region_summary(eps)
    assert {row["region"] for row in rows} == {"V0", "V1", "V2"}
    assert all(row["V1"] in (INTERIOR, BOUNDARY, OUTSIDE) for row in rows)


def test_scaling_by_roots_of_unity_keeps_moduli():
    p = point(CycloNumber.rational(1), 0, 0).scaled(root_of_unity(9, 2))
    assert p.moduli_sq() == (1, 0, 0)
