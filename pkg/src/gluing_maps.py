"""
Gluing Maps
The matrices Theta_1, Theta_2 that define the gluing map alpha on the
boundary, and the symbolic certificates that they lie in SU(3) and make alpha
equivariant under a, b and the circle.

Entries are ScaledPoly values sum_h s^-h p_h where s = sqrt(eps (1 - eps))
stays formal. An identity is certified by multiplying through by the top
power of s: the even and odd parts left over are sphere polynomials, and both
must reduce to zero modulo the boundary constraints.

    Theta_1 = [[1, 0, 0], [0, zb1 z2 / s, -zb1 z3 / s], [0, z1 zb3 / s, z1 zb2 / s]]
    Theta_2 = [[zb1 z2 / s, -z1 zb3 / s, 0], [zb1 z3 / s, z1 zb2 / s, 0], [0, 0, 1]]
"""

import logging
from fractions import Fraction

import numpy as np

from cyclo_matrix import UMatrix
from cyclotomic import OMEGA, ONE, ArithmeticInconsistency, CycloNumber
from representations import PHI_A, PHI_B, PSI_B, rep_build
from sphere_polynomials import EPS, LAM, LAMB, Z1, Z2, Z3, ZB1, ZB2, ZB3, SpherePoly, numeric_sphere_point
from sphere_regions import (
    P_NUMERIC,
    P_SCALE_SQ,
    P_TILDE,
    SpherePointExact,
    boundary_points,
    b_twist_identity,
    validate_epsilon,
)
from verification_report import CheckResult

LOGGER = logging.getLogger(__name__)

# s^2
SCALE_SQ = EPS - EPS * EPS

NUMERIC_TOLERANCE = 1e-10

ANCHOR_THETA = "Θ₁(𝐳) = 1/√(ε(1−ε)) [...] ∈ SU(3)"
ANCHOR_A = "First, check that α is equivariant under a"
ANCHOR_B = "Second, check that α is equivariant under b"
ANCHOR_LAMBDA = "Third, check that α is equivariant under λ ∈ S¹"
ANCHOR_STANDARD = "a unique way to write every element of ∂U₀ in the following standard form"

NORMALIZATION_NOTE = (
    "Theta normalization: 1/sqrt(eps(1-eps)) scales the z-dependent 2x2 block only; "
    "scaling the constant entry as well would leave it at modulus 1/sqrt(eps(1-eps))"
)


class ScaledPoly:
    """sum_h s^-h p_h over h >= 0, with s = sqrt(eps (1 - eps))."""

    __slots__ = ("parts",)

    def __init__(self, parts=None):
        clean = {}
        for h, p in (parts or {}).items():
            if not isinstance(p, SpherePoly):
                p = SpherePoly.constant(p)
            total = clean[h] + p if h in clean else p
            if total.is_zero():
                clean.pop(h, None)
            else:
                clean[h] = total
        self.parts = clean

    @classmethod
    def coerce(cls, value):
        if isinstance(value, ScaledPoly):
            return value
        if isinstance(value, SpherePoly):
            return cls({0: value})
        return cls({0: SpherePoly.constant(value)})

    @classmethod
    def normalized(cls, poly):
        """poly / s"""
        return cls({1: poly})

    def __add__(self, other):
        other = ScaledPoly.coerce(other)
        merged = dict(self.parts)
        for h, p in other.parts.items():
            merged[h] = merged[h] + p if h in merged else p
        return ScaledPoly(merged)

    __radd__ = __add__

    def __neg__(self):
        return ScaledPoly({h: -p for h, p in self.parts.items()})

    def __sub__(self, other):
        return self + (-ScaledPoly.coerce(other))

    def __mul__(self, other):
        if isinstance(other, (CycloNumber, int, Fraction)):
            return ScaledPoly({h: p * other for h, p in self.parts.items()})
        other = ScaledPoly.coerce(other)
        out = {}
        for h1, p1 in self.parts.items():
            for h2, p2 in other.parts.items():
                product = p1 * p2
                out[h1 + h2] = out[h1 + h2] + product if h1 + h2 in out else product
        return ScaledPoly(out)

    __rmul__ = __mul__

    def conj(self):
        return ScaledPoly({h: p.conj() for h, p in self.parts.items()})

    def substitute(self, assignment):
        return ScaledPoly({h: p.substitute(assignment) for h, p in self.parts.items()})

    def cleared(self):
        """
        (even, odd) with s^H * self = even + s * odd, H the top power present.
        """
        even, odd = SpherePoly(), SpherePoly()
        if not self.parts:
            return even, odd
        top = max(self.parts)
        for h, p in self.parts.items():
            gap = top - h
            term = p * SCALE_SQ ** (gap // 2)
            if gap % 2:
                odd = odd + term
            else:
                even = even + term
        return even, odd

    def is_zero(self):
        even, odd = self.cleared()
        return even.is_zero() and odd.is_zero()

    def evaluate(self, values):
        eps = float(values["eps"].real if isinstance(values["eps"], complex) else values["eps"])
        s = np.sqrt(eps * (1 - eps))
        return sum((p.evaluate(values) * s ** -h for h, p in self.parts.items()), 0j)

    def __str__(self):
        if not self.parts:
            return "0"
        pieces = []
        for h in sorted(self.parts):
            body = str(self.parts[h])
            pieces.append(body if h == 0 else f"s^-{h}*({body})")
        return " + ".join(pieces)

    def __repr__(self):
        return f"ScaledPoly({self})"


class PolyMatrix:
    """Square matrix of ScaledPoly entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(ScaledPoly.coerce(v) for v in row) for row in rows)

    @classmethod
    def from_umatrix(cls, M):
        return cls([[M[r, c] for c in range(M.size)] for r in range(M.size)])

    @property
    def size(self):
        return len(self.rows)

    def __getitem__(self, index):
        r, c = index
        return self.rows[r][c]

    @staticmethod
    def _coerce(other):
        if isinstance(other, PolyMatrix):
            return other
        if isinstance(other, UMatrix):
            return PolyMatrix.from_umatrix(other)
        raise TypeError(f"Cannot use {other!r} as a PolyMatrix")

    def __mul__(self, other):
        if isinstance(other, (CycloNumber, int, Fraction)):
            return PolyMatrix([[v * other for v in row] for row in self.rows])
        other = self._coerce(other)
        n = self.size
        return PolyMatrix([
            [sum((self.rows[r][t] * other.rows[t][c] for t in range(n)), ScaledPoly()) for c in range(n)]
            for r in range(n)
        ])

    def __rmul__(self, other):
        if isinstance(other, UMatrix):
            return PolyMatrix.from_umatrix(other) * self
        if isinstance(other, (CycloNumber, int, Fraction)):
            return self * other
        return NotImplemented

    def __sub__(self, other):
        other = self._coerce(other)
        return PolyMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def adjoint(self):
        return PolyMatrix([[v.conj() for v in col] for col in zip(*self.rows)])

    def substitute(self, assignment):
        return PolyMatrix([[v.substitute(assignment) for v in row] for row in self.rows])

    def det(self):
        m = self.rows
        if self.size != 3:
            raise ValueError("PolyMatrix.det is implemented for 3x3 matrices")
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def evaluate(self, values):
        return np.array([[v.evaluate(values) for v in row] for row in self.rows], dtype=complex)

    def residuals(self, other=None):
        """Entries of self - other that do not reduce to zero, as printable strings."""
        difference = self if other is None else self - other
        out = []
        for r, row in enumerate(difference.rows):
            for c, entry in enumerate(row):
                even, odd = entry.cleared()
                if not (even.is_zero() and odd.is_zero()):
                    out.append(f"({r + 1},{c + 1}): {even}" + (f" + s*({odd})" if not odd.is_zero() else ""))
        return out

    def __eq__(self, other):
        return not self.residuals(other)

    __hash__ = None

    def __str__(self):
        return "[" + "; ".join(", ".join(str(v) for v in row) for row in self.rows) + "]"


def theta_build(m):
    """Theta_m with the 1/s factor on the z-dependent 2x2 block only."""
    s_inv = ScaledPoly.normalized
    if m == 1:
        return PolyMatrix([
            [1, 0, 0],
            [0, s_inv(ZB1 * Z2), s_inv(-(ZB1 * Z3))],
            [0, s_inv(Z1 * ZB3), s_inv(Z1 * ZB2)],
        ])
    if m == 2:
        return PolyMatrix([
            [s_inv(ZB1 * Z2), s_inv(-(Z1 * ZB3)), 0],
            [s_inv(ZB1 * Z3), s_inv(Z1 * ZB2), 0],
            [0, 0, 1],
        ])
    raise ValueError(f"m must be 1 or 2, got {m}")


def corrupt_theta(m, row, col, mode="sign"):
    """
    Theta_m with one entry damaged.

    mode 'sign' negates the entry, 'zero' replaces it with 0, 'one' with 1.
    """
    theta = theta_build(m)
    rows = [list(r) for r in theta.rows]
    entry = rows[row][col]
    if mode == "sign":
        rows[row][col] = -entry
    elif mode == "zero":
        rows[row][col] = ScaledPoly()
    elif mode == "one":
        rows[row][col] = ScaledPoly.coerce(1)
    else:
        raise ValueError(f"Unknown corruption mode {mode!r}")
    return PolyMatrix(rows)


def _identity(name, left, right):
    residual = left.residuals(right)
    return {"name": name, "certified": not residual, "residual": residual}


def point_values(z, eps, lam=1.0):
    """Numeric variable assignment for a float point z."""
    z = np.asarray(z, dtype=complex)
    return {
        "z1": z[0], "z2": z[1], "z3": z[2],
        "zb1": np.conj(z[0]), "zb2": np.conj(z[1]), "zb3": np.conj(z[2]),
        "eps": float(eps), "lam": lam, "lamb": np.conj(lam),
    }


def random_boundary_points(rng, eps, n):
    """n float points with |z1|^2 = 1 - eps and |z2|^2 + |z3|^2 = eps."""
    return [numeric_sphere_point(rng, eps) for _ in range(n)]


def verify_theta_special_unitary(m, samples=100, seed=0, eps=Fraction(49, 625), theta=None):
    """
    Theta_m Theta_m* = I and det Theta_m = 1 modulo the boundary constraints,
    plus float unitarity and determinant at ``samples`` random boundary points.

    Args:
        theta: Optional replacement matrix (negative controls)
    """
    theta = theta_build(m) if theta is None else theta
    identities = [
        _identity("Theta Theta* = I", theta * theta.adjoint(), UMatrix.identity(3)),
        _identity("det Theta = 1", PolyMatrix([[theta.det()]]), PolyMatrix([[1]])),
    ]

    rng = np.random.default_rng(seed)
    worst = 0.0
    for values in random_boundary_points(rng, validate_epsilon(eps), samples):
        numeric = theta.evaluate(values)
        worst = max(
            worst,
            float(np.max(np.abs(numeric @ numeric.conj().T - np.eye(3)))),
            float(abs(np.linalg.det(numeric) - 1)),
        )
    numeric_ok = worst < NUMERIC_TOLERANCE
    failing = [item["name"] for item in identities if not item["certified"]]
    if failing:
        LOGGER.info("Theta_%d: failing identities %s", m, failing)
    return CheckResult.from_outcome(
        f"gluing.theta.SU3.m{m}",
        ANCHOR_THETA,
        not failing and numeric_ok,
        {
            "identities": identities,
            "numeric_samples": samples,
            "numeric_max_error": worst,
            "seed": seed,
        },
        [NORMALIZATION_NOTE],
    )


def b_twist(k):
    """z' = omega^-k phi(b) z as a conjugate-consistent substitution."""
    assignment = {}
    for q, (z, zb) in enumerate(((Z1, ZB1), (Z2, ZB2), (Z3, ZB3)), start=1):
        e = -k + (q - 1)
        assignment[f"z{q}"] = z * OMEGA ** e
        assignment[f"zb{q}"] = zb * OMEGA ** (-e)
    return assignment


def lambda_twist():
    assignment = {}
    for q, (z, zb) in enumerate(((Z1, ZB1), (Z2, ZB2), (Z3, ZB3)), start=1):
        assignment[f"z{q}"] = LAM * z
        assignment[f"zb{q}"] = LAMB * zb
    return assignment


D_MATRICES = {
    1: UMatrix.diagonal([ONE, OMEGA, OMEGA ** 2]),
    2: UMatrix.diagonal([OMEGA, OMEGA ** 2, ONE]),
}


def _b_chain(m, k, theta):
    psi0_b = PSI_B["psi0"]
    psi_m_b = PSI_B[f"psi{m}"]
    D = D_MATRICES[m]
    twisted = theta.substitute(b_twist(k))
    moduli = PolyMatrix([[ZB1 * Z1, 0, 0], [0, ZB2 * Z2, 0], [0, 0, ZB3 * Z3]])
    base = [
        {
            "name": f"k={k}: phi(b) P^{m - 1} phi(a^{k}) = P^{m - 1} phi(a^{k + m - 1}) phi(b) omega^-{k}",
            "certified": b_twist_identity(m, k),
            "residual": [],
        },
        _identity(f"k={k}: |z_q'|^2 = |z_q|^2", moduli.substitute(b_twist(k)), moduli),
    ]
    if m == 1:
        chain = [
            _identity(f"k={k}: Theta_1(z') = Theta_1(z) D", twisted, theta * D),
            _identity("D psi0(b) = psi1(b)", PolyMatrix.from_umatrix(D * psi0_b), psi_m_b),
            _identity("Theta_1 psi1(b) = psi1(b) Theta_1", theta * psi_m_b, psi_m_b * theta),
        ]
    else:
        chain = [
            _identity(f"k={k}: Theta_2(z') = D Theta_2(z)", twisted, D * theta),
            _identity("Theta_2 psi0(b) = psi0(b) Theta_2", theta * psi0_b, psi0_b * theta),
            _identity("D psi0(b) = psi2(b)", PolyMatrix.from_umatrix(D * psi0_b), psi_m_b),
            _identity("D Theta_2 psi0(b) = psi2(b) Theta_2", D * theta * psi0_b, psi_m_b * theta),
        ]
    composite = _identity(
        f"k={k}: Theta_{m}(z') psi0(b) = psi{m}(b) Theta_{m}(z)", twisted * psi0_b, psi_m_b * theta
    )
    return base + chain + [composite]


def verify_alpha_equivariance(g, m, k=None, theta=None):
    """
    Equivariance of alpha under g in {'a', 'b', 'lambda'} for Theta_m.

    Every line of the chain is its own sub-identity; the b-case runs for
    k = 0, 1, 2 unless k is given.
    """
    if m not in (1, 2):
        raise ValueError(f"m must be 1 or 2, got {m}")
    theta = theta_build(m) if theta is None else theta
    if g == "a":
        psi0_a = rep_build("psi0").generators["a"]
        psi_m_a = rep_build(f"psi{m}").generators["a"]
        omega_theta = theta * OMEGA
        identities = [
            _identity("Theta psi0(a) = omega Theta", theta * psi0_a, omega_theta),
            _identity(f"psi{m}(a) Theta = omega Theta", psi_m_a * theta, omega_theta),
        ]
        anchor = ANCHOR_A
    elif g == "b":
        identities = []
        for kk in (range(3) if k is None else [k]):
            identities += _b_chain(m, kk, theta)
        anchor = ANCHOR_B
    elif g in ("lambda", "lam"):
        identities = [_identity(f"Theta_{m}(lambda z) = Theta_{m}(z)", theta.substitute(lambda_twist()), theta)]
        anchor = ANCHOR_LAMBDA
    else:
        raise ValueError(f"g must be 'a', 'b' or 'lambda', got {g!r}")

    failing = [item["name"] for item in identities if not item["certified"]]
    suffix = "" if g != "b" or k is None else f".k{k}"
    return CheckResult.from_outcome(
        f"gluing.alpha.{'lambda' if g == 'lam' else g}.m{m}{suffix}",
        anchor,
        not failing,
        {"identities": identities, "failing": failing},
        [NORMALIZATION_NOTE],
    )


# ----------------------------------------------------------------------
# Standard form

def _standard_matrix(m, k):
    """P^(m-1) phi(a^k) without the 1/sqrt(3) factor."""
    return P_TILDE ** (m - 1) * PHI_A ** k


def reassemble(m, k, z):
    """P^(m-1) phi(a^k) z, exact or float."""
    if isinstance(z, SpherePointExact):
        return z.transform(_standard_matrix(m, k), P_SCALE_SQ ** (m - 1))
    numeric = np.linalg.matrix_power(P_NUMERIC, m - 1) @ np.linalg.matrix_power(PHI_A.embed(), k)
    return numeric @ np.asarray(z, dtype=complex)


def standard_form(y, eps):
    """
    The unique (m, k, z) with y = P^(m-1) phi(a^k) z and |z2|^2 + |z3|^2 = eps.

    Raises:
        ValueError: y is not on the boundary of V1 or V2
        ArithmeticInconsistency: more than one decomposition exists
    """
    exact = isinstance(y, SpherePointExact)
    eps = validate_epsilon(eps)
    matches = []
    for m in (1, 2):
        for k in range(3):
            if exact:
                inverse = PHI_A ** (-k) * P_TILDE.adjoint() ** (m - 1)
                z = y.transform(inverse, P_SCALE_SQ ** (m - 1))
                _, m2, m3 = z.moduli_sq()
                on_boundary = m2 + m3 == eps
            else:
                inverse = np.linalg.matrix_power(PHI_A.embed().conj().T, k) @ np.linalg.matrix_power(
                    P_NUMERIC.conj().T, m - 1
                )
                z = inverse @ np.asarray(y, dtype=complex)
                on_boundary = abs(abs(z[1]) ** 2 + abs(z[2]) ** 2 - float(eps)) < NUMERIC_TOLERANCE
            if on_boundary:
                matches.append((m, k, z))
    if not matches:
        raise ValueError(f"{y} is not on the boundary of V1 or V2 for eps={eps}")
    if len(matches) > 1:
        raise ArithmeticInconsistency(
            f"{y} has {len(matches)} standard forms: {[(m, k) for m, k, _ in matches]}"
        )
    return matches[0]


def verify_standard_form(eps):
    """Decompose-then-reassemble is the identity on exact boundary points and their translates."""
    eps = validate_epsilon(eps)
    failures = []
    checked = 0
    for z in boundary_points(eps, limit=4):
        for m in (1, 2):
            for k in range(3):
                y = reassemble(m, k, z)
                checked += 1
                got = standard_form(y, eps)
                if got[:2] != (m, k) or not reassemble(*got).same_point(y):
                    failures.append(f"(m={m}, k={k}) {z} -> {got[:2]}")
    return CheckResult.from_outcome(
        f"gluing.standard_form[{eps}]",
        ANCHOR_STANDARD,
        checked > 0 and not failures,
        {"points": checked, "failures": failures},
    )


# ----------------------------------------------------------------------
# Float round trips

def numeric_roundtrip(eps, samples=100, seed=0):
    """
    alpha(g . (y, w)) = g . alpha(y, w) in floating point for g in a, b, lambda,
    with y = P^(m-1) phi(a^k) z a random boundary point in standard form.
    """
    eps = validate_epsilon(eps)
    rng = np.random.default_rng(seed)
    thetas = {m: theta_build(m) for m in (1, 2)}
    psi = {name: {g: rep_build(name).generators[g].embed() for g in ("a", "b")}
           for name in ("psi0", "psi1", "psi2")}
    phi_a, phi_b = PHI_A.embed(), PHI_B.embed()
    worst = 0.0

    def alpha(y, w):
        m, k, z = standard_form(y, eps)
        return thetas[m].evaluate(point_values(z, eps)) @ w, m

    for _ in range(samples):
        values = numeric_sphere_point(rng, eps)
        z = np.array([values["z1"], values["z2"], values["z3"]])
        w = rng.normal(size=3) + 1j * rng.normal(size=3)
        w /= np.linalg.norm(w)
        m, k = int(rng.integers(1, 3)), int(rng.integers(0, 3))
        y = reassemble(m, k, z)
        image, _ = alpha(y, w)
        for name, act_y, act_w0, act_wm in (
            ("a", phi_a, psi["psi0"]["a"], psi[f"psi{m}"]["a"]),
            ("b", phi_b, psi["psi0"]["b"], psi[f"psi{m}"]["b"]),
        ):
            moved, _ = alpha(act_y @ y, act_w0 @ w)
            worst = max(worst, float(np.max(np.abs(moved - act_wm @ image))))
        lam = np.exp(2j * np.pi * rng.uniform())
        moved, _ = alpha(lam * y, w)
        worst = max(worst, float(np.max(np.abs(moved - image))))

    return CheckResult.from_outcome(
        f"gluing.numeric_roundtrip[{eps}]",
        ANCHOR_B,
        worst < NUMERIC_TOLERANCE,
        {"samples": samples, "seed": seed, "max_error": worst},
    )
