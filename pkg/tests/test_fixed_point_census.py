from fractions import Fraction

import pytest
from numpy.testing import assert_allclose

from cyclo_matrix import UMatrix
from cyclotomic import OMEGA, ONE
from fixed_point_census import (
    CensusEntry,
    ManualAnalysisRequired,
    a_set_members,
    census_check,
    conjugation_check,
    circle_candidates,
    expected_x0_census,
    fixed_subspace,
    has_eigenvalue_one,
    model_action,
    numeric_fixed_dimension,
    offender_fixed_points,
    oracle_check,
    space_census,
    verify_circle_candidates,
    verify_free_on_U,
)
from finite_groups import conjugacy_classes
from presented_groups import p_group
from representations import PHI_A, PHI_B, rep_build


def test_eigenvalue_one_detection():
    assert has_eigenvalue_one(PHI_A)
    assert has_eigenvalue_one(PHI_B)
    assert not has_eigenvalue_one(UMatrix.scalar(OMEGA))
    assert len(fixed_subspace(UMatrix.identity(3))) == 3
    assert numeric_fixed_dimension(PHI_A) == 1


def test_a_sets_of_p3_have_six_elements_each():
    assert len(a_set_members(3, "A1")) == 6
    assert len(a_set_members(3, "A2")) == 6
    assert not a_set_members(3, "A1") & a_set_members(3, "A2")


def test_x0_census_of_p3_is_exactly_the_a_sets():
    census = space_census("X0", 3)
    assert len(census) == 12
    assert census.offenders == a_set_members(3, "A1") | a_set_members(3, "A2")
    assert {entry.a_set for entry in census.entries} == {"A1", "A2"}
    assert all(entry.phi_dimension == 1 for entry in census.entries)


def test_sphere_census_contains_the_x0_census():
    y = space_census("Y", 3)
    x0 = space_census("X0", 3)
    assert x0.offenders < y.offenders
    assert len(y) == 24


@pytest.mark.parametrize("k", [3, 4])
def test_x0_census_matches_the_mu3_characterization(k):
    assert len(expected_x0_census(k)) == 12
    result = census_check("X0", k)
    assert result.certified, result.witness
    assert result.check_id == f"fixedpoints.census.X0.P{k}"


@pytest.mark.parametrize("space", ["X1", "X2"])
def test_x1_x2_spare_their_a_set(space):
    result = census_check(space, 3)
    assert result.certified, result.witness


def test_census_frame_layout():
    frame = space_census("X0", 3).to_frame()
    assert list(frame.columns) == ["element", "a_set", "phi_dim", "psi_dim"]
    assert len(frame) == 12
    assert set(frame["a_set"]) == {"A1", "A2"}


def test_parallel_census_matches_serial():
    assert space_census("X0", 3, n_jobs=2).offenders == space_census("X0", 3).offenders


def test_unknown_space_rejected():
    with pytest.raises(ValueError):
        space_census("X3", 3)


@pytest.mark.parametrize("space", ["Y", "X0", "X1", "X2"])
def test_exact_census_agrees_with_float_oracle(space):
    assert oracle_check(space, 3).certified


def test_circle_candidates_are_cube_roots():
    candidates = circle_candidates()
    assert set(candidates) == {(i, j) for i in range(3) for j in range(3)}
    assert Fraction(0) in candidates[(0, 1)]
    for thetas in candidates.values():
        assert all((3 * t).denominator == 1 for t in thetas)
    assert verify_circle_candidates().certified


@pytest.mark.parametrize("i", [0, 1, 2])
def test_free_on_each_open_set(i, eps):
    result = verify_free_on_U(i, 3, eps)
    assert result.certified, result.witness["failures"]
    assert result.witness["offenders"] > 0


def test_free_on_u0_for_p4(eps):
    assert verify_free_on_U(0, 4, eps).certified


def test_free_on_U_rejects_bad_arguments(eps):
    with pytest.raises(ValueError):
        verify_free_on_U(3, 3, eps)
    with pytest.raises(ValueError):
        verify_free_on_U(0, 3, Fraction(1, 4))


def test_two_dimensional_fixed_space_needs_manual_analysis():
    basis = [(ONE, 0, 0), (0, ONE, 0)]
    entry = CensusEntry(element="g", a_set=None, phi_basis=basis)
    with pytest.raises(ManualAnalysisRequired):
        entry.fixed_point()


def test_fixed_point_is_on_the_sphere():
    for entry in space_census("X0", 3).entries:
        assert sum(entry.fixed_point().moduli_sq()) == 1


def test_model_action_fixes_offender_points():
    for entry in space_census("X0", 3).entries:
        z, w = offender_fixed_points(entry)
        image_z, image_w = model_action(entry.element, z, w)
        assert_allclose(image_z, z, atol=1e-10)
        assert_allclose(image_w, w, atol=1e-10)


def test_model_action_on_the_single_sphere():
    entry = space_census("Y", 3).entries[0]
    z, w = offender_fixed_points(entry, space="Y")
    assert w is None
    image_z, image_w = model_action(entry.element, z, None, space="Y")
    assert image_w is None
    assert_allclose(image_z, z, atol=1e-10)


@pytest.mark.parametrize("k", [3, 4])
def test_eigenvalue_one_is_a_class_function(k):
    phi = rep_build("phi")
    for cls in conjugacy_classes(p_group(k)):
        assert len({has_eigenvalue_one(phi.apply(g)) for g in cls}) == 1


def test_conjugation_check_certifies_p3():
    result = conjugation_check(3)
    assert result.certified
    assert result.check_id == "fixedpoints.conjugation.P3"
    # three central classes and eight of size three
    assert result.witness["classes"] == 11
    assert result.witness["mixed_classes"] == []
