import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from presented_groups import (
    GAMMA_A,
    GAMMA_B,
    GAMMA_IDENTITY,
    GAMMA_OMEGA,
    GAMMA_RELATIONS,
    GammaWord,
    a_set_kind,
    b_group,
    build_group,
    commutator,
    e_group,
    gamma_assignment,
    gamma_circle,
    p_group,
    pk_embed,
    verify_relations,
)
from strategies import group_elements

P4 = p_group(4)
E5 = e_group(5)
B4 = b_group(4, -1)


@pytest.mark.parametrize("k, order", [(3, 27), (4, 81), (5, 243)])
def test_p_group_orders(k, order):
    G = p_group(k)
    assert G.order == order
    assert len(G.elements()) == order
    assert len(set(G.elements())) == order


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_e_group_orders(p):
    assert e_group(p).order == 3 * p * p


@pytest.mark.parametrize("k, sign", [(4, -1), (4, 1), (5, -1), (6, 1)])
def test_b_group_orders(k, sign):
    assert b_group(k, sign).order == 3 ** k


@pytest.mark.parametrize(
    "group", [p_group(3), P4, p_group(5), e_group(2), e_group(3), E5, B4, b_group(5, 1)],
    ids=lambda G: G.name,
)
def test_presentations_hold_on_normal_forms(group):
    result = group.verify_own_relations()
    assert result.certified, result.witness["failing"]
    assert result.check_id == f"groups.relations.{group.name}"


def test_invalid_parameters():
    with pytest.raises(ValueError):
        p_group(2)
    with pytest.raises(ValueError):
        b_group(3, 1)
    with pytest.raises(ValueError):
        b_group(4, 2)
    with pytest.raises(ValueError):
        build_group("X", 3)


def test_build_group_factory():
    assert build_group("p", 3).name == "P(3)"
    assert build_group("B", 4, -1).name == "B(4,-1)"
    assert build_group("E", 7).order == 147


def test_gamma_commutator_is_omega():
    assert commutator(GAMMA_A, GAMMA_B) == GAMMA_OMEGA
    assert GAMMA_A ** 3 == GAMMA_IDENTITY
    assert (GAMMA_B ** -1) * GAMMA_B == GAMMA_IDENTITY
    assert gamma_circle(Fraction(4, 3)) == GAMMA_OMEGA


@pytest.mark.parametrize("theta", [Fraction(0), Fraction(1, 7), Fraction(5, 9)])
def test_gamma_relations_hold(theta):
    assert verify_relations(gamma_assignment(theta), GAMMA_RELATIONS).certified


def test_broken_assignment_reports_failing_relation(p3):
    assignment = dict(p3.generators)
    assignment["c"] = p3.identity
    result = verify_relations(assignment, p3.relations, "groups.broken")
    assert not result.certified
    assert "[a,b] = c^1" in result.witness["failing"]


def test_inverse_and_identity(p3):
    for g in p3.elements():
        assert (g * g.inverse()).is_identity
        assert g ** 0 == p3.identity


def test_cross_group_multiplication_rejected(p3):
    with pytest.raises(ValueError):
        p3.generators["a"] * E5.generators["w"]


def test_pk_embed_sends_c_to_the_circle():
    c = P4.generators["c"]
    assert pk_embed(4, c) == GammaWord(0, 0, Fraction(1, 9))
    assert pk_embed(4, c ** 3) == GAMMA_OMEGA


def test_pk_embed_rejects_foreign_elements(p3):
    with pytest.raises(ValueError):
        pk_embed(4, p3.generators["a"])
    with pytest.raises(ValueError):
        pk_embed(2, p3.generators["a"])


def test_pk_embed_p3_every_pair(p3):
    elements = p3.elements()
    assert len({pk_embed(3, g) for g in elements}) == 27
    for x, y in itertools.product(elements, repeat=2):
        assert pk_embed(3, x * y) == pk_embed(3, x) * pk_embed(3, y)
    for g in elements:
        assert (pk_embed(3, g) * pk_embed(3, g.inverse())).is_identity


def test_gamma_words_commute_up_to_omega():
    assert GAMMA_A * GAMMA_B == GAMMA_B * GAMMA_A * GAMMA_OMEGA
    assert GAMMA_A * GAMMA_B != GAMMA_B * GAMMA_A


def test_a_set_membership():
    assert a_set_kind(GammaWord(0, 1)) == "A1"
    assert a_set_kind(GammaWord(0, 2, Fraction(1, 3))) == "A1"
    assert a_set_kind(GammaWord(1, 2)) == "A2"
    assert a_set_kind(GammaWord(2, 1, Fraction(2, 3))) == "A2"
    assert a_set_kind(GammaWord(1, 0)) is None
    assert a_set_kind(GammaWord(0, 0, Fraction(1, 3))) is None


@settings(max_examples=60, deadline=None)
@given(group_elements(P4), group_elements(P4), group_elements(P4))
def test_p4_multiplication_is_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=60, deadline=None)
@given(group_elements(B4), group_elements(B4), group_elements(B4))
def test_b4_multiplication_is_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=60, deadline=None)
@given(group_elements(P4), group_elements(P4))
def test_pk_embed_is_multiplicative(x, y):
    assert pk_embed(4, x * y) == pk_embed(4, x) * pk_embed(4, y)


@settings(max_examples=40, deadline=None)
@given(group_elements(E5), group_elements(E5))
def test_e5_inverse_of_product(x, y):
    assert (x * y).inverse() == y.inverse() * x.inverse()
