"""
Fixed Point Census
Exact fixed-point analysis for the unitary actions of P(k) on

    Y  = S^5                    g . z      = phi(g) z
    Xi = S^5 x S^5  (i = 0,1,2) g . (z, w) = (phi(g) z, psi_i(g) w)

A unitary map fixes a sphere point iff it has eigenvalue 1, so an element is
an offender on Xi iff phi(g) and psi_i(g) both do. The census lists every
offender with its exact fixed subspaces; verify_free_on_U then places the
fixed circles against the regions V1, V2.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from scipy.linalg import null_space

from cyclo_matrix import UMatrix
from cyclotomic import ArithmeticInconsistency, angle_of_root, root_of_unity_angle
from finite_groups import conjugacy_classes
from presented_groups import GammaWord, a_set_kind, p_group, pk_embed
from representations import PHI_A, PHI_B, rep_build
from sphere_regions import INTERIOR, OUTSIDE, SpherePointExact, in_V1, in_V2, validate_epsilon
from verification_report import CheckResult

LOGGER = logging.getLogger(__name__)

SPACES = {
    "Y": ("phi", None),
    "X0": ("phi", "psi0"),
    "X1": ("phi", "psi1"),
    "X2": ("phi", "psi2"),
}

ORACLE_TOLERANCE = 1e-8

ANCHOR_FREENESS = "The Γ-action on U_i is free"
ANCHOR_CENSUS = "All elements of Γ except A₁ ∪ A₂ act freely on X₀"


class ManualAnalysisRequired(RuntimeError):
    """A fixed eigenspace of dimension >= 2 needs an argument the census cannot make."""


def has_eigenvalue_one(M):
    """det(M - I) = 0, exactly."""
    return (M - UMatrix.identity(M.size)).det().is_zero()


def fixed_subspace(M):
    """Exact basis of ker(M - I)."""
    return (M - UMatrix.identity(M.size)).kernel()


def numeric_has_eigenvalue_one(M, tolerance=ORACLE_TOLERANCE):
    eigenvalues = np.linalg.eigvals(M.embed())
    return bool(np.any(np.abs(eigenvalues - 1) < tolerance))


def numeric_fixed_dimension(M, tolerance=ORACLE_TOLERANCE):
    matrix = M.embed() - np.eye(M.size)
    return null_space(matrix, rcond=tolerance).shape[1]


@dataclass
class CensusEntry:
    """One offender: its A-set kind and its exact fixed subspaces."""

    element: object
    a_set: str
    phi_basis: list
    psi_dimension: int = None

    @property
    def phi_dimension(self):
        return len(self.phi_basis)

    def fixed_point(self):
        """
        The phi-fixed sphere point of a 1-dimensional eigenspace, as a unit
        representative with formal scale 1 / |v|^2.
        """
        if self.phi_dimension != 1:
            raise ManualAnalysisRequired(
                f"{self.element} has a {self.phi_dimension}-dimensional fixed subspace"
            )
        vector = self.phi_basis[0]
        norm = sum((v * v.conj() for v in vector[1:]), vector[0] * vector[0].conj())
        if not norm.is_rational():
            raise ArithmeticInconsistency(f"Fixed vector {vector} has irrational norm {norm}")
        return SpherePointExact(vector, 1 / norm.to_fraction())


@dataclass
class FixedPointCensus:
    space: str
    group_name: str
    entries: list = field(default_factory=list)

    @property
    def offenders(self):
        return {entry.element for entry in self.entries}

    def __len__(self):
        return len(self.entries)

    def to_frame(self):
        return pd.DataFrame(
            [
                {
                    "element": str(entry.element),
                    "a_set": entry.a_set or "-",
                    "phi_dim": entry.phi_dimension,
                    "psi_dim": entry.psi_dimension,
                }
                for entry in self.entries
            ],
            columns=["element", "a_set", "phi_dim", "psi_dim"],
        )


def _gamma_word(element):
    if isinstance(element, GammaWord):
        return element
    return pk_embed(element.group.params[0], element)


def _inspect(matrix_a, matrix_b):
    basis = fixed_subspace(matrix_a)
    if not basis or matrix_b is None:
        return basis, None
    return basis, len(fixed_subspace(matrix_b))


def product_census(G, rep_a, rep_b=None, space="X0", n_jobs=1):
    """
    Every non-identity element of G with a fixed point on the product action.

    With rep_b None this is the census of rep_a acting on one sphere.
    Elements are inspected in G's element order; n_jobs fans the exact
    kernels out through joblib.
    """
    elements = [g for g in G.elements() if not g.is_identity]
    pairs = [(rep_a.apply(g), rep_b.apply(g) if rep_b is not None else None) for g in elements]
    if n_jobs == 1:
        results = [_inspect(a, b) for a, b in pairs]
    else:
        results = Parallel(n_jobs=n_jobs)(delayed(_inspect)(a, b) for a, b in pairs)

    census = FixedPointCensus(space, G.name)
    for g, (basis, psi_dimension) in zip(elements, results):
        if not basis or psi_dimension == 0:
            continue
        kind = a_set_kind(_gamma_word(g)) if G.family == "P" else None
        census.entries.append(CensusEntry(g, kind, basis, psi_dimension))
    LOGGER.debug("%s census of %s: %d offenders", space, G.name, len(census))
    return census


def space_census(space, k, n_jobs=1):
    """Census of P(k) on one of Y, X0, X1, X2."""
    if space not in SPACES:
        raise ValueError(f"Unknown space {space!r}; expected one of {sorted(SPACES)}")
    rep_a, rep_b = SPACES[space]
    return product_census(
        p_group(k), rep_build(rep_a), rep_build(rep_b) if rep_b else None, space, n_jobs
    )


def expected_x0_census(k):
    """
    Elements of (A1 u A2) n P(k) whose circle part is a cube root of unity.

    phi(z a^i b^j) has eigenvalue 1 only for z in mu_3, so this is the
    whole non-identity (A1 u A2) n P(3) for k = 3 and the same twelve
    elements of the embedded P(3) for larger k.
    """
    result = set()
    for g in p_group(k).elements():
        word = pk_embed(k, g)
        if a_set_kind(word) and (3 * word.theta).denominator == 1:
            result.add(g)
    return result


def a_set_members(k, kind):
    return {g for g in p_group(k).elements() if a_set_kind(pk_embed(k, g)) == kind}


def census_check(space, k, n_jobs=1):
    """
    Census certificate for one space.

    X0: offenders equal expected_x0_census(k) as sets (and, for k = 3, all of
    (A1 u A2) n P(3)). X1, X2: no element of A1, respectively A2, offends.
    """
    census = space_census(space, k, n_jobs)
    offenders = census.offenders
    witness = {"offenders": sorted(str(g) for g in offenders), "count": len(offenders)}
    if space == "X0":
        expected = expected_x0_census(k)
        passed = offenders == expected
        if k == 3:
            full = a_set_members(3, "A1") | a_set_members(3, "A2")
            passed = passed and offenders == full
        witness["missing"] = sorted(str(g) for g in expected - offenders)
        witness["unexpected"] = sorted(str(g) for g in offenders - expected)
    elif space in ("X1", "X2"):
        kind = "A1" if space == "X1" else "A2"
        inside = sorted(str(entry.element) for entry in census.entries if entry.a_set == kind)
        witness[f"{kind}_offenders"] = inside
        passed = not inside
    else:
        passed = True
    return CheckResult.from_outcome(
        f"fixedpoints.census.{space}.P{k}", ANCHOR_CENSUS, passed, witness
    )


def oracle_check(space, k):
    """Exact census agrees with float eigenvalues and scipy null spaces on every element."""
    rep_a, rep_b = (rep_build(name) if name else None for name in SPACES[space])
    disagreements = []
    G = p_group(k)
    for g in G.elements():
        for rep in (rep_a, rep_b):
            if rep is None:
                continue
            M = rep.apply(g)
            exact_dimension = len(fixed_subspace(M))
            if has_eigenvalue_one(M) != numeric_has_eigenvalue_one(M):
                disagreements.append(f"{rep.name}({g}): eigenvalue test")
            if exact_dimension != numeric_fixed_dimension(M):
                disagreements.append(f"{rep.name}({g}): dimension {exact_dimension}")
    return CheckResult.from_outcome(
        f"fixedpoints.oracle.{space}.P{k}",
        ANCHOR_CENSUS,
        not disagreements,
        {"elements": G.order, "disagreements": disagreements[:10]},
    )


def conjugation_check(k):
    """The eigenvalue-one flag of phi and each psi_i is constant on every conjugacy class of P(k)."""
    G = p_group(k)
    classes = conjugacy_classes(G)
    mixed = []
    for name in ("phi", "psi0", "psi1", "psi2"):
        rep = rep_build(name)
        for cls in classes:
            flags = {has_eigenvalue_one(rep.apply(g)) for g in cls}
            if len(flags) > 1:
                mixed.append(f"{name}: class of {min(cls, key=str)}")
    return CheckResult.from_outcome(
        f"fixedpoints.conjugation.P{k}",
        ANCHOR_CENSUS,
        not mixed,
        {"classes": len(classes), "mixed_classes": mixed[:10]},
    )


def circle_candidates():
    """
    For each coset pattern a^i b^j of Gamma, the exact circle angles theta
    with phi(a^i b^j z(theta)) having eigenvalue 1.

    i = 0: phi(b^j) is diagonal and z must invert one of its entries.
    i != 0: M = phi(a^i b^j) has M^3 = mu I, so z^3 = mu^-1; the three
    candidate cube roots are tested exactly.
    """
    candidates = {}
    for i in range(3):
        for j in range(3):
            M = PHI_A ** i * PHI_B ** j
            if i == 0:
                angles = {(-angle_of_root(M[q, q])) % 1 for q in range(3)}
            else:
                cube = M ** 3
                if not cube.is_scalar():
                    raise ArithmeticInconsistency(f"phi(a^{i} b^{j})^3 is not scalar")
                mu_angle = angle_of_root(cube[0, 0])
                angles = {((-mu_angle + t) / 3) % 1 for t in range(3)}
            candidates[(i, j)] = sorted(
                theta for theta in angles
                if has_eigenvalue_one(M * root_of_unity_angle(theta))
            )
    return candidates


def verify_circle_candidates():
    """Every Gamma element with a phi-fixed point has its circle part in mu_3."""
    candidates = circle_candidates()
    outside = {
        f"a^{i} b^{j}": [str(t) for t in thetas if (3 * t).denominator != 1]
        for (i, j), thetas in candidates.items()
    }
    outside = {k: v for k, v in outside.items() if v}
    return CheckResult.from_outcome(
        "fixedpoints.circle_candidates",
        ANCHOR_CENSUS,
        not outside,
        {
            "candidates": {f"a^{i} b^{j}": thetas for (i, j), thetas in candidates.items()},
            "outside_mu3": outside,
        },
    )


def model_action(g, z, w, space="X0"):
    """Phi_i(g, (z, w)) = (phi(g) z, psi_i(g) w) in floating point."""
    rep_a, rep_b = SPACES[space]
    image_z = rep_build(rep_a).apply(g).embed() @ np.asarray(z, dtype=complex)
    if rep_b is None:
        return image_z, None
    image_w = rep_build(rep_b).apply(g).embed() @ np.asarray(w, dtype=complex)
    return image_z, image_w


def verify_free_on_U(i, k, eps, n_jobs=1):
    """
    P(k) acts freely on U_i.

    i = 0: every X0 offender has a 1-dimensional phi-fixed subspace whose
    circle lies in the interior of V1 or V2. i = 1, 2: every Xi offender has
    its phi-fixed circle outside V_i.

    Raises:
        ValueError: eps outside (0, 1/9) or i not in 0, 1, 2
        ManualAnalysisRequired: an offender with a fixed subspace of dimension >= 2
    """
    eps = validate_epsilon(eps)
    if i not in (0, 1, 2):
        raise ValueError(f"i must be 0, 1 or 2, got {i}")
    census = space_census(f"X{i}", k, n_jobs)

    placements = {}
    failures = []
    for entry in census.entries:
        fixed = entry.fixed_point()
        v1, v2 = in_V1(fixed, eps), in_V2(fixed, eps)
        placements[str(entry.element)] = {"a_set": entry.a_set, "V1": v1, "V2": v2}
        if i == 0:
            ok = INTERIOR in (v1, v2)
        else:
            ok = (v1 if i == 1 else v2) == OUTSIDE
        if not ok:
            failures.append(str(entry.element))

    return CheckResult.from_outcome(
        f"fixedpoints.free.U{i}.P{k}",
        ANCHOR_FREENESS,
        not failures,
        {
            "epsilon": eps,
            "offenders": len(census),
            "placements": placements,
            "failures": failures,
        },
    )


def unit_vector(basis_vector):
    """Float unit vector along an exact basis vector."""
    v = np.array([c.embed() for c in basis_vector])
    return v / np.linalg.norm(v)


def offender_fixed_points(entry, space="X0"):
    """Float (z, w) fixed by the model action of a census entry."""
    rep_a, rep_b = SPACES[space]
    z = unit_vector(entry.phi_basis[0])
    if rep_b is None:
        return z, None
    w_basis = fixed_subspace(rep_build(rep_b).apply(entry.element))
    return z, unit_vector(w_basis[0])

