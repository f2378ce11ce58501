"""
Representations
Exact matrix tables for the representations used by the construction, and
character computations over finite groups.

Tables on Gamma (phi, psi0, psi1, psi2) store the images of a and b plus a
rule for the circle: phi sends z to the scalar matrix z*I, the psi tables send
it to I. Finite P(k) elements reach these tables through pk_embed. The other
tables (rho_P3, rho_E, rho_B4, rho_E2) are defined on one presented group.
"""

import logging
from dataclasses import dataclass
from math import lcm
from fractions import Fraction

from sympy import isprime

from cyclo_matrix import UMatrix
from cyclotomic import OMEGA, ONE, ZERO, ArithmeticInconsistency, root_of_unity, root_of_unity_angle
from finite_groups import group_closure
from presented_groups import (
    GAMMA_RELATIONS,
    GammaWord,
    GroupElement,
    build_group,
    p_group,
    pk_embed,
    verify_relations,
)
from verification_report import CheckResult

LOGGER = logging.getLogger(__name__)

# phi(a): (z1, z2, z3) -> (z2, z3, z1)
PHI_A = UMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
# phi(b)
PHI_B = UMatrix.diagonal([ONE, OMEGA, OMEGA ** 2])
OMEGA_I = UMatrix.scalar(OMEGA)

PSI_B = {
    "psi0": UMatrix.diagonal([OMEGA, OMEGA, ONE]),
    "psi1": UMatrix.diagonal([OMEGA, OMEGA ** 2, OMEGA ** 2]),
    "psi2": UMatrix.diagonal([OMEGA ** 2, ONE, ONE]),
}

GAMMA_TABLES = ("phi", "psi0", "psi1", "psi2")
FINITE_TABLES = ("rho_P3", "rho_E", "rho_B4", "rho_E2")
REP_NAMES = GAMMA_TABLES + FINITE_TABLES

ANCHORS = {
    "phi": "An irreducible representation φ: Γ → U(3)",
    "psi0": "Three representations that pullback from representations of Γ/S¹",
    "psi1": "Three representations that pullback from representations of Γ/S¹",
    "psi2": "Three representations that pullback from representations of Γ/S¹",
    "rho_P3": "a³=b³=c^{3^{k−2}}",
    "rho_E": "The groups E(p) are all subgroups of SU(3)",
    "rho_B4": "the group B(4,−1) is a subgroup of SU(3)",
    "rho_E2": "E(2) is isomorphic to the alternating group A₄",
    "trivial": "An irreducible representation φ: Γ → U(3)",
}

CIRCLE_SCALAR = "scalar"
CIRCLE_TRIVIAL = "trivial"


class RepTable:
    """
    Generator images of a representation.

    Args:
        name: Table name, e.g. 'phi' or 'rho_E(5)'
        source: 'Gamma' or the name of a presented group, e.g. 'E(5)'
        generators: dict generator name -> UMatrix
        circle_rule: 'scalar' or 'trivial' for Gamma tables, None otherwise
        source_params: (family, *params) for finite tables
    """

    def __init__(self, name, source, generators, circle_rule=None, source_params=None):
        self.name = name
        self.source = source
        self.generators = dict(generators)
        self.circle_rule = circle_rule
        self.source_params = source_params
        self.dimension = next(iter(self.generators.values())).size
        self._powers = {}

    @property
    def anchor(self):
        return ANCHORS.get(self.name.split("(")[0], self.name)

    @property
    def on_gamma(self):
        return self.source == "Gamma"

    def source_group(self, k=3):
        """The finite group the table is checked on (P(k) for Gamma tables)."""
        if self.on_gamma:
            return p_group(k)
        return build_group(*self.source_params)

    def circle_image(self, theta):
        identity = UMatrix.identity(self.dimension)
        if self.circle_rule == CIRCLE_SCALAR:
            return UMatrix.scalar(root_of_unity_angle(theta), self.dimension)
        return identity

    def _power(self, generator, exponent):
        key = (generator, exponent)
        if key not in self._powers:
            self._powers[key] = self.generators[generator] ** exponent
        return self._powers[key]

    def apply(self, element):
        """
        Image of a GammaWord or a GroupElement.

        P(k) elements are sent through pk_embed when the table lives on Gamma;
        any other mismatch between element and table raises ValueError.
        """
        if isinstance(element, GammaWord):
            if not self.on_gamma:
                raise ValueError(f"{self.name} is defined on {self.source}, not on Gamma")
            return (
                self._power("a", element.i)
                * self._power("b", element.j)
                * self.circle_image(element.theta)
            )
        if isinstance(element, GroupElement):
            group = element.group
            if self.on_gamma:
                if group.family != "P":
                    raise ValueError(f"{self.name} cannot act on elements of {group.name}")
                return self.apply(pk_embed(group.params[0], element))
            if group.name != self.source:
                raise ValueError(f"{self.name} is defined on {self.source}, not on {group.name}")
            result = UMatrix.identity(self.dimension)
            for generator, exponent in zip(group.generator_names, element.exps):
                if exponent:
                    result = result * self._power(generator, exponent)
            return result
        raise TypeError(f"Cannot apply {self.name} to {element!r}")

    def unitarity_failures(self):
        return [name for name, m in self.generators.items() if not m.is_unitary()]

    def __repr__(self):
        return f"RepTable({self.name} on {self.source})"


def rep_build(name, p=None):
    """
    Build a representation table by name.

    Args:
        name: One of REP_NAMES, or 'trivial'
        p: The prime for 'rho_E' (odd, not 3)

    Returns:
        RepTable
    """
    if name == "phi":
        return RepTable("phi", "Gamma", {"a": PHI_A, "b": PHI_B}, CIRCLE_SCALAR)
    if name in PSI_B:
        return RepTable(name, "Gamma", {"a": OMEGA_I, "b": PSI_B[name]}, CIRCLE_TRIVIAL)
    if name == "trivial":
        one = UMatrix.identity(1)
        return RepTable("trivial", "Gamma", {"a": one, "b": one}, CIRCLE_TRIVIAL)
    if name == "rho_P3":
        return RepTable(
            "rho_P3", "P(3)", {"a": PHI_A, "b": PHI_B, "c": OMEGA_I}, source_params=("P", 3)
        )
    if name == "rho_E":
        if p is None or not isprime(p) or p in (2, 3):
            raise ValueError(f"rho_E needs an odd prime p != 3, got {p}")
        alpha = root_of_unity(p, 1)
        beta = root_of_unity(p, p - 2)
        generators = {
            "w": PHI_A,
            "u": UMatrix.diagonal([alpha, alpha, beta]),
            "v": UMatrix.diagonal([alpha, beta, alpha]),
        }
        return RepTable(f"rho_E({p})", f"E({p})", generators, source_params=("E", p))
    if name == "rho_E2":
        generators = {
            "w": PHI_A,
            "u": UMatrix.diagonal([-1, -1, 1]),
            "v": UMatrix.diagonal([-1, 1, -1]),
        }
        return RepTable("rho_E2", "E(2)", generators, source_params=("E", 2))
    if name == "rho_B4":
        gamma = root_of_unity(9, 1)
        generators = {
            "a": PHI_A,
            "b": UMatrix.diagonal([ONE, gamma ** 3, gamma ** 6]),
            "c": UMatrix.diagonal([gamma ** 5, gamma ** 8, gamma ** 5]),
        }
        return RepTable("rho_B4", "B(4,-1)", generators, source_params=("B", 4, -1))
    raise ValueError(f"Unknown representation {name!r}; expected one of {REP_NAMES}")


def build_all_tables(primes=(5, 7, 11, 13)):
    """Every table: the Gamma tables, rho_P3, rho_B4, rho_E2 and rho_E(p) per prime."""
    tables = [rep_build(name) for name in GAMMA_TABLES + ("rho_P3", "rho_B4", "rho_E2")]
    tables += [rep_build("rho_E", p) for p in primes if p != 3]
    return tables


def rep_apply(rep, element):
    return rep.apply(element)


def verify_rep_relations(rep, k_values=(3, 4, 5), circle_samples=None):
    """
    All defining relations of a table's source, evaluated exactly.

    Gamma tables are checked on the Gamma presentation at several circle
    points and on the P(k) presentations through pk_embed.
    """
    failing = []
    checked = 0
    not_unitary = rep.unitarity_failures()
    if rep.on_gamma:
        samples = circle_samples or (Fraction(0), Fraction(1, 3), Fraction(1, 9), Fraction(2, 27), Fraction(1, 5))
        for theta in samples:
            assignment = {
                "a": rep.generators["a"],
                "b": rep.generators["b"],
                "z": rep.circle_image(theta),
                "omega": rep.circle_image(Fraction(1, 3)),
            }
            result = verify_relations(assignment, GAMMA_RELATIONS)
            checked += result.witness["relations_checked"]
            failing += [f"Gamma[z={theta}]: {r}" for r in result.witness["failing"]]
        groups = [p_group(k) for k in k_values]
    else:
        groups = [rep.source_group()]
    for group in groups:
        assignment = {name: rep.apply(g) for name, g in group.generators.items()}
        result = verify_relations(assignment, group.relations)
        checked += result.witness["relations_checked"]
        failing += [f"{group.name}: {r}" for r in result.witness["failing"]]

    return CheckResult.from_outcome(
        f"representations.relations.{rep.name}",
        rep.anchor,
        not failing and not not_unitary,
        {"relations_checked": checked, "failing": failing, "non_unitary_generators": not_unitary},
    )


def det_check(rep, G):
    """det(rep(g)) = 1 for every element g of G, exactly."""
    bad = [str(g) for g in G.elements() if rep.apply(g).det() != 1]
    return CheckResult.from_outcome(
        f"representations.det.{rep.name}.{G.name}",
        rep.anchor,
        not bad,
        {"elements": G.order, "det_not_one": bad[:10], "det_not_one_count": len(bad)},
    )


@dataclass
class Character:
    """Trace function of a representation on a finite group."""

    group_name: str
    values: dict
    dimension: int

    def __call__(self, element):
        return self.values[element]

    def is_class_function(self, classes):
        return all(len({self.values[g].canonical_key(self._order()) for g in cls}) == 1 for cls in classes)

    def _order(self):
        order = 1
        for v in self.values.values():
            order = lcm(order, v.order)
        return order


def character(rep, G):
    values = {g: rep.apply(g).trace() for g in G.elements()}
    return Character(G.name, values, rep.dimension)


def inner_product(chi1, chi2, G=None):
    """
    (1/|G|) sum chi1(g) conj(chi2(g)), exactly.

    Raises:
        ArithmeticInconsistency: the value is not a non-negative integer
    """
    if chi1.group_name != chi2.group_name:
        raise ValueError(f"Characters live on {chi1.group_name} and {chi2.group_name}")
    elements = G.elements() if G is not None else list(chi1.values)
    total = sum((chi1(g) * chi2(g).conj() for g in elements), ZERO)
    if not total.is_rational():
        raise ArithmeticInconsistency(f"Character inner product is not rational: {total}")
    value = total.to_fraction() / len(elements)
    if value.denominator != 1 or value < 0:
        raise ArithmeticInconsistency(f"Character inner product {value} is not a non-negative integer")
    return value


def is_irreducible(rep, G):
    chi = character(rep, G)
    return inner_product(chi, chi, G) == 1


def factors_through_quotient(rep, central_elements):
    """True iff every listed element maps to the identity matrix."""
    return all(rep.apply(g).is_identity() for g in central_elements)


def e3_model():
    """
    E(3) through the P(3) matrices: w -> phi(a), u -> phi(b^2 c^2), v -> phi(b^2 c),
    the inverse of the isomorphism a -> w, b -> vu, c -> v^-1 u.
    """
    generators = {
        "w": PHI_A,
        "u": PHI_B ** 2 * OMEGA_I ** 2,
        "v": PHI_B ** 2 * OMEGA_I,
    }
    return RepTable("rho_E(3)", "E(3)", generators, source_params=("E", 3))


def verify_faithful(rep, G, bound=5000):
    """The generator images close up to a group of order |G| (and no larger)."""
    images = {name: rep.apply(g) for name, g in G.generators.items()}
    closure = group_closure(images, bound=bound, name=f"{rep.name}({G.name})")
    return CheckResult.from_outcome(
        f"representations.faithful.{rep.name}.{G.name}",
        rep.anchor,
        closure.order == G.order,
        {"closure_order": closure.order, "group_order": G.order},
    )


def verify_irreducible(rep, G, expected=True):
    """<chi, chi> = 1 when ``expected``, > 1 otherwise."""
    chi = character(rep, G)
    norm = inner_product(chi, chi, G)
    passed = (norm == 1) if expected else (norm > 1)
    label = "irreducible" if expected else "reducible"
    return CheckResult.from_outcome(
        f"representations.{label}.{rep.name}.{G.name}",
        rep.anchor,
        passed,
        {"character_norm": norm, "dimension": chi.dimension, "identity_trace": str(chi(G.identity))},
    )


def verify_real_orthogonal(rep):
    """Every generator image is a rational orthogonal matrix of determinant 1."""
    offenders = [
        name for name, m in rep.generators.items()
        if not all(v.is_rational() for row in m.rows for v in row)
        or not m.is_unitary() or m.det() != 1
    ]
    return CheckResult.from_outcome(
        f"representations.SO3.{rep.name}",
        rep.anchor,
        not offenders,
        {"offending_generators": offenders},
    )
