"""
Sphere Regions
The regions V1, V2 (and V0 as what is left) of the unit sphere Y in C^3, the
unitary matrix P, membership predicates, the disjointness certificate and the
invariance certificate together with the conjugation identities it rests on.

    V1 = { a^k z : |z2|^2 + |z3|^2 <= eps }      V2 = P V1
    P  = (1/sqrt 3) [[1, w, 1], [1, 1, w], [w, 1, 1]],   w = exp(2 pi i / 3)

P is stored without its 1/sqrt(3) factor (P_TILDE) and exact points carry a
squared scale, so every predicate works with rational squared moduli only.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import isqrt

import numpy as np

from cyclo_matrix import UMatrix
from cyclotomic import OMEGA, ONE, ArithmeticInconsistency, CycloNumber, root_of_unity
from representations import PHI_A, PHI_B
from verification_report import CheckResult

LOGGER = logging.getLogger(__name__)

DEFAULT_EPSILON = Fraction(49, 625)
EPSILON_BOUND = Fraction(1, 9)

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"

# Boundary tolerance for float predicates.
NUMERIC_TOLERANCE = 1e-12
SPHERE_TOLERANCE = 1e-9

P_TILDE = UMatrix([[ONE, OMEGA, ONE], [ONE, ONE, OMEGA], [OMEGA, ONE, ONE]])
P_SCALE_SQ = Fraction(1, 3)
P_NUMERIC = P_TILDE.embed() / np.sqrt(3)

ANCHOR_REGIONS = "V₁ = {aᵏ·𝐳 ∈ Y | 0 ≤ k ≤ 2, |z₂|² + |z₃|² ≤ ε}"
ANCHOR_DISJOINT = "|z_q|² ≥ ⅓(|z′_k|² − |z′_i|² − |z′_j|²) ≥ ⅓ − ε"
ANCHOR_CONJUGATION = "Note that Pφ(a)P⁻¹ = φ(a) and Pφ(b)P⁻¹ = φ(a²b)"
ANCHOR_INVARIANCE = "Hence φ(a)𝐰 = P^{i−1}φ(a^{k+1})𝐳 is in V_i"


def validate_epsilon(eps):
    """
    Parse eps and enforce 0 < eps < 1/9.

    Args:
        eps: Fraction, int or a 'p/q' string

    Returns:
        Fraction
    """
    try:
        value = Fraction(eps)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"epsilon {eps!r} is not an exact rational") from exc
    if not 0 < value < EPSILON_BOUND:
        raise ValueError(f"epsilon must satisfy 0 < eps < 1/9, got {value}")
    return value


@dataclass(frozen=True)
class RegionSpec:
    """eps together with P; P is unitary once its squared scale 1/3 is applied."""

    epsilon: Fraction = DEFAULT_EPSILON
    p_matrix: UMatrix = P_TILDE
    p_scale_sq: Fraction = P_SCALE_SQ

    def __post_init__(self):
        object.__setattr__(self, "epsilon", validate_epsilon(self.epsilon))

    def p_is_unitary(self):
        return (self.p_matrix * self.p_matrix.adjoint() * self.p_scale_sq).is_identity()


@dataclass(frozen=True)
class SpherePointExact:
    """
    The point sqrt(scale_sq) * coords of the unit sphere in C^3.

    Only squared moduli are ever needed, so sqrt(scale_sq) stays formal.
    """

    coords: tuple
    scale_sq: Fraction = Fraction(1)

    def __post_init__(self):
        coords = tuple(CycloNumber.coerce(v) for v in self.coords)
        if len(coords) != 3:
            raise ValueError(f"Sphere points have three coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "scale_sq", Fraction(self.scale_sq))
        if sum(self.moduli_sq()) != 1:
            raise ValueError(f"Point {self} is not on the unit sphere (norm^2 {sum(self.moduli_sq())})")

    def moduli_sq(self):
        """Exact |z_q|^2 for q = 1, 2, 3."""
        moduli = []
        for v in self.coords:
            square = v * v.conj()
            if not square.is_rational():
                raise ArithmeticInconsistency(f"|{v}|^2 is not rational")
            moduli.append(square.to_fraction() * self.scale_sq)
        return tuple(moduli)

    def transform(self, matrix, scale_sq=1):
        return SpherePointExact(matrix.apply(self.coords), self.scale_sq * Fraction(scale_sq))

    def scaled(self, value):
        """Multiply every coordinate by a unit-modulus scalar."""
        value = CycloNumber.coerce(value)
        return SpherePointExact(tuple(v * value for v in self.coords), self.scale_sq)

    def same_point(self, other):
        """Equality as points of the sphere, whatever the stored scale."""
        ratio = _rational_sqrt(other.scale_sq / self.scale_sq)
        if ratio is None:
            return False
        return all(a == b * ratio for a, b in zip(self.coords, other.coords))

    def embed(self):
        return np.array([v.embed() for v in self.coords]) * np.sqrt(float(self.scale_sq))

    def __str__(self):
        body = ", ".join(str(v) for v in self.coords)
        if self.scale_sq == 1:
            return f"({body})"
        return f"sqrt({self.scale_sq})*({body})"


def point(*coords, scale_sq=1):
    return SpherePointExact(tuple(coords), Fraction(scale_sq))


def pair_sums(moduli):
    """(|z2|^2 + |z3|^2, |z3|^2 + |z1|^2, |z1|^2 + |z2|^2), one per rotation a^k."""
    m1, m2, m3 = moduli
    return (m2 + m3, m3 + m1, m1 + m2)


def _classify(smallest, eps, tolerance=0):
    if smallest < eps - tolerance:
        return INTERIOR
    if smallest <= eps + tolerance:
        return BOUNDARY
    return OUTSIDE


def _numeric_point(z):
    z = np.asarray(z, dtype=complex)
    if z.shape != (3,):
        raise ValueError(f"Expected three complex coordinates, got shape {z.shape}")
    if abs(np.vdot(z, z).real - 1) > SPHERE_TOLERANCE:
        raise ValueError(f"Point {z} is not on the unit sphere")
    return z


def in_V1(z, eps):
    """
    interior / boundary / outside of V1.

    Exact for SpherePointExact, float with NUMERIC_TOLERANCE for a triple of
    complex numbers.
    """
    if isinstance(z, SpherePointExact):
        return _classify(min(pair_sums(z.moduli_sq())), Fraction(eps))
    z = _numeric_point(z)
    moduli = np.abs(z) ** 2
    return _classify(min(pair_sums(moduli)), float(eps), NUMERIC_TOLERANCE)


def in_V2(z, eps):
    """in_V1 of P^-1 z."""
    if isinstance(z, SpherePointExact):
        return in_V1(z.transform(P_TILDE.adjoint(), P_SCALE_SQ), eps)
    z = _numeric_point(z)
    return in_V1(P_NUMERIC.conj().T @ z, eps)


def classify(z, eps):
    """(V1 status, V2 status); V0 holds the points outside both interiors."""
    return in_V1(z, eps), in_V2(z, eps)


def numeric_in_V1_batch(points, eps):
    """Vectorised V1 status for an (n, 3) complex array."""
    moduli = np.abs(points) ** 2
    smallest = (moduli.sum(axis=1) - moduli.max(axis=1))
    eps = float(eps)
    status = np.full(len(points), OUTSIDE, dtype=object)
    status[smallest <= eps + NUMERIC_TOLERANCE] = BOUNDARY
    status[smallest < eps - NUMERIC_TOLERANCE] = INTERIOR
    return status


# ----------------------------------------------------------------------
# Exact test points

AXIS_POINTS = (point(1, 0, 0), point(0, 1, 0), point(0, 0, 1))
CENTER_POINT = point(1, 1, 1, scale_sq=Fraction(1, 3))


def _eisenstein(a, b):
    return CycloNumber.rational(a) + OMEGA * b


def _eisenstein_norm(a, b):
    return a * a - a * b + b * b


def _rational_sqrt(q):
    """Exact square root of a non-negative Fraction, or None."""
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@lru_cache(maxsize=None)
def boundary_points(eps, radius=7, limit=12):
    """
    Exact points of the boundary of V1 for a given eps.

    Searches Eisenstein integers y2, y3 = a + b*w with |a|, |b| <= radius such
    that N = |y2|^2 + |y3|^2 makes N (1 - eps) / eps a rational square y1^2;
    the point (y1, y2, y3) / sqrt(N / eps) then has pair sum exactly eps.

    Returns:
        Tuple of up to ``limit`` SpherePointExact, ordered by N and coefficients
    """
    eps = validate_epsilon(eps)
    span = range(-radius, radius + 1)
    found = []
    seen = set()
    for a2, b2, a3, b3 in product(span, repeat=4):
        norm = _eisenstein_norm(a2, b2) + _eisenstein_norm(a3, b3)
        if norm == 0:
            continue
        y1 = _rational_sqrt(norm * (1 - eps) / eps)
        if y1 is None:
            continue
        key = (norm, a2, b2, a3, b3)
        if key in seen:
            continue
        seen.add(key)
        found.append(key + (y1,))
    found.sort(key=lambda item: (item[0], abs(item[1]) + abs(item[2]) + abs(item[3]) + abs(item[4]), item[1:5]))
    points = []
    for norm, a2, b2, a3, b3, y1 in found[:limit]:
        points.append(SpherePointExact((y1, _eisenstein(a2, b2), _eisenstein(a3, b3)), eps / norm))
    LOGGER.debug("Found %d exact boundary points for eps=%s", len(points), eps)
    return tuple(points)


def structured_points(eps, region):
    """
    Exact test points attached to one region.

    region 1: axis points and boundary points of V1 with their a-rotations;
    region 2: their P-translates; region 0: the center point and its
    P-translate together with every boundary point.
    """
    v1 = []
    for base in list(AXIS_POINTS) + list(boundary_points(validate_epsilon(eps), limit=4)):
        v1 += [base, base.transform(PHI_A), base.transform(PHI_A ** 2)]
    if region == 1:
        return v1
    v2 = [p.transform(P_TILDE, P_SCALE_SQ) for p in v1]
    if region == 2:
        return v2
    if region == 0:
        center = [CENTER_POINT, CENTER_POINT.transform(P_TILDE, P_SCALE_SQ)]
        return center + [p for p in v1 + v2 if BOUNDARY in classify(p, eps)]
    raise ValueError(f"region must be 0, 1 or 2, got {region}")


# ----------------------------------------------------------------------
# Sampling

def sample_v1_points(rng, eps, n):
    """n float points of V1: pair sum uniform in [0, eps], rotated by a random a^k."""
    eps = float(eps)
    t = rng.uniform(0, eps, size=n)
    small = rng.normal(size=(n, 4))
    small /= np.linalg.norm(small, axis=1, keepdims=True)
    small *= np.sqrt(t)[:, None]
    big = np.sqrt(1 - t) * np.exp(1j * rng.uniform(0, 2 * np.pi, size=n))
    points = np.stack([big, small[:, 0] + 1j * small[:, 1], small[:, 2] + 1j * small[:, 3]], axis=1)
    shift = rng.integers(0, 3, size=n)
    index = (np.arange(3)[None, :] - shift[:, None]) % 3
    return np.take_along_axis(points, index, axis=1)


def sample_sphere_points(rng, n):
    raw = rng.normal(size=(n, 6))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    return raw[:, :3] + 1j * raw[:, 3:]


# ----------------------------------------------------------------------
# Disjointness

def _sqrt_bounds(q, digits=12):
    """Rational lower and upper bounds for sqrt(q) within 10^-digits."""
    scale = 10 ** digits
    root = isqrt(q.numerator * scale * scale // q.denominator)
    low = Fraction(root, scale)
    high = low if low * low == q else Fraction(root + 1, scale)
    return low, high


def disjointness_bound(eps):
    """
    Rational lower bound for every pair sum of P z' when z' lies in V1.

    With |z1'|^2 >= 1 - eps and |z2'| + |z3'| <= sqrt(2 eps), each coordinate
    of P z' has modulus at least (sqrt(1 - eps) - sqrt(2 eps)) / sqrt(3).
    """
    low_big, _ = _sqrt_bounds(1 - eps)
    _, high_small = _sqrt_bounds(2 * eps)
    if low_big <= high_small:
        return Fraction(0)
    return Fraction(2, 3) * (low_big - high_small) ** 2


def verify_disjointness(eps, samples=10_000, seed=0):
    """
    V1 and V2 do not meet.

    Certified by the rational bound above exceeding eps, by the structured
    exact points, and by ``samples`` seeded float points of V1 whose image
    under P must land outside V1.
    """
    eps = validate_epsilon(eps)
    bound = disjointness_bound(eps)
    literal_margin = Fraction(2, 3) - 3 * eps

    exact_overlaps = []
    structured = structured_points(eps, 1) + structured_points(eps, 2)
    for p in structured:
        v1, v2 = classify(p, eps)
        if v1 != OUTSIDE and v2 != OUTSIDE:
            exact_overlaps.append(str(p))

    rng = np.random.default_rng(seed)
    counterexamples = []
    coordinate_bound_misses = 0
    if samples:
        points = sample_v1_points(rng, eps, samples)
        images = points @ P_NUMERIC.T
        status = numeric_in_V1_batch(images, eps)
        for index in np.flatnonzero(status != OUTSIDE)[:5]:
            counterexamples.append([complex(v) for v in points[index]])
        smallest = (np.abs(images) ** 2).min(axis=1)
        coordinate_bound_misses = int(np.sum(smallest < float(Fraction(1, 3) - eps)))

    notes = []
    if coordinate_bound_misses:
        notes.append(
            f"{coordinate_bound_misses} sampled points have a coordinate of P z' with "
            f"|w_q|^2 < 1/3 - eps; the pair-sum bound 2/3 (sqrt(1-eps) - sqrt(2 eps))^2 still holds"
        )
    passed = bound > eps and not exact_overlaps and not counterexamples
    return CheckResult.from_outcome(
        f"geometry.disjointness[{eps}]",
        ANCHOR_DISJOINT,
        passed,
        {
            "epsilon": eps,
            "pair_sum_lower_bound": bound,
            "bound_margin": bound - eps,
            "literal_margin": literal_margin,
            "structured_points": len(structured),
            "exact_overlaps": exact_overlaps,
            "samples": samples,
            "seed": seed,
            "counterexamples": counterexamples,
        },
        notes,
    )


# ----------------------------------------------------------------------
# Conjugation identities and the b-twist identity

def omega_power_matrix(k):
    return UMatrix.scalar(OMEGA ** k)


def b_twist_terms(i, k):
    """The three matrix expressions that the b-twist identity equates."""
    if i not in (1, 2):
        raise ValueError(f"i must be 1 or 2, got {i}")
    p = P_TILDE ** (i - 1)
    a_k = PHI_A ** k
    first = PHI_B * p * a_k
    second = p * PHI_A ** (-2 * (i - 1)) * PHI_B * a_k
    third = p * PHI_A ** (k + i - 1) * PHI_B * omega_power_matrix(-k)
    return first, second, third


def b_twist_identity(i, k):
    first, second, third = b_twist_terms(i, k)
    return first == second == third


def conjugation_identities():
    """P phi(a) P^-1 = phi(a), P phi(b) P^-1 = phi(a^2 b) and P P* = I, exactly."""
    results = {
        "P phi(a) = phi(a) P": P_TILDE * PHI_A == PHI_A * P_TILDE,
        "P phi(b) = phi(a^2 b) P": P_TILDE * PHI_B == PHI_A ** 2 * PHI_B * P_TILDE,
        "P P* = I": RegionSpec().p_is_unitary(),
    }
    formula = {f"i={i},k={k}": b_twist_identity(i, k) for i in (1, 2) for k in range(3)}
    failing = [name for name, ok in {**results, **formula}.items() if not ok]
    return CheckResult.from_outcome(
        "geometry.conjugation",
        ANCHOR_CONJUGATION,
        not failing,
        {"identities": results, "b_twist_identity": formula, "failing": failing},
    )


# ----------------------------------------------------------------------
# Invariance

def pk_generator_matrices(k):
    """phi(a), phi(b), phi(c) for P(k), c = exp(2 pi i / 3^(k-2))."""
    if k < 3:
        raise ValueError(f"P(k) needs k >= 3, got {k}")
    return {
        "a": PHI_A,
        "b": PHI_B,
        "c": UMatrix.scalar(root_of_unity(3 ** (k - 2), 1)),
    }


def _status(z, eps, region):
    if region == 1:
        return in_V1(z, eps)
    if region == 2:
        return in_V2(z, eps)
    return classify(z, eps)


def verify_invariance(i, k, eps, samples=1_000, seed=0):
    """
    Each generator of P(k) preserves the classification of V_i.

    Exact on the structured points of the region, in floating point on
    ``samples`` seeded sphere points and region samples. The b-case is also
    backed by the b-twist identity.
    """
    eps = validate_epsilon(eps)
    if i not in (0, 1, 2):
        raise ValueError(f"i must be 0, 1 or 2, got {i}")
    generators = pk_generator_matrices(k)

    changes = []
    exact_points = structured_points(eps, i)
    for name, matrix in generators.items():
        for p in exact_points:
            before, after = _status(p, eps, i), _status(p.transform(matrix), eps, i)
            if before != after:
                changes.append(f"{name}: {p} {before} -> {after}")

    rng = np.random.default_rng(seed)
    numeric_checked = 0
    if samples:
        floats = np.concatenate([
            sample_sphere_points(rng, samples),
            sample_v1_points(rng, eps, samples),
            sample_v1_points(rng, eps, samples) @ P_NUMERIC.T,
        ])
        for name, matrix in generators.items():
            numeric = matrix.embed()
            for z in floats:
                numeric_checked += 1
                before, after = _status(z, eps, i), _status(numeric @ z, eps, i)
                if before != after:
                    changes.append(f"{name}: sampled {np.round(z, 6).tolist()} {before} -> {after}")

    regions = (1, 2) if i == 0 else (i,)
    formula = {f"i={r},k={m}": b_twist_identity(r, m) for r in regions for m in range(3)}
    passed = not changes and all(formula.values())
    return CheckResult.from_outcome(
        f"geometry.invariance.U{i}.P{k}",
        ANCHOR_INVARIANCE,
        passed,
        {
            "epsilon": eps,
            "exact_points": len(exact_points),
            "numeric_checks": numeric_checked,
            "seed": seed,
            "classification_changes": changes[:10],
            "b_twist_identity": formula,
        },
    )


def verify_scalar_invariance(eps, orders=(2, 3, 5, 9)):
    """Multiplying a point by a root of unity never changes its classification."""
    eps = validate_epsilon(eps)
    changes = []
    points = structured_points(eps, 1) + structured_points(eps, 2) + structured_points(eps, 0)
    for n in orders:
        for s in range(1, n):
            zeta = root_of_unity(n, s)
            for p in points:
                if classify(p, eps) != classify(p.scaled(zeta), eps):
                    changes.append(f"zeta_{n}^{s} * {p}")
    return CheckResult.from_outcome(
        f"geometry.scalar_invariance[{eps}]",
        ANCHOR_REGIONS,
        not changes,
        {"points": len(points), "root_orders": list(orders), "changes": changes[:10]},
    )


def region_summary(eps):
    """Exact status of the structured points of every region."""
    rows = []
    for region in (1, 2, 0):
        for p in structured_points(eps, region):
            v1, v2 = classify(p, eps)
            rows.append({"region": f"V{region}", "point": str(p), "V1": v1, "V2": v2})
    return rows


def verify_boundary_points(eps):
    """The exact boundary search finds points, and each lies on the boundary of V1."""
    eps = validate_epsilon(eps)
    points = boundary_points(eps)
    misplaced = [str(p) for p in points if in_V1(p, eps) != BOUNDARY]
    return CheckResult.from_outcome(
        f"geometry.boundary_points[{eps}]",
        ANCHOR_REGIONS,
        bool(points) and not misplaced,
        {"epsilon": eps, "found": len(points), "misplaced": misplaced,
         "examples": [str(p) for p in points[:3]]},
    )
