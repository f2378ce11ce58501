"""
Sphere Polynomials
Sparse polynomials over CycloNumber in the sphere coordinates z1, z2, z3,
their formal conjugates zb1, zb2, zb3, the collar parameter eps and a unit
circle symbol lam (with conjugate lamb).

Every stored polynomial is in normal form for a rewrite system that encodes
the boundary sphere |z1|^2 = 1 - eps, |z2|^2 + |z3|^2 = eps, |lam| = 1. The
three leading monomials are pairwise coprime, so the rules form a Groebner
basis and the normal form is unique whatever order the rules fire in.
"""

import logging
from fractions import Fraction
from itertools import product

import numpy as np

from cyclotomic import ONE, CycloNumber

LOGGER = logging.getLogger(__name__)

VARIABLES = ("z1", "z2", "z3", "zb1", "zb2", "zb3", "eps", "lam", "lamb")
INDEX = {name: i for i, name in enumerate(VARIABLES)}

# Formal conjugation swaps these positions.
CONJUGATE_INDEX = (3, 4, 5, 0, 1, 2, 6, 8, 7)
CONJUGATE_PAIRS = (("z1", "zb1"), ("z2", "zb2"), ("z3", "zb3"), ("lam", "lamb"))

# Lexicographic priority used to prove the rewrite system terminates.
TERM_ORDER = ("zb1", "z1", "zb3", "z3", "lam", "lamb", "zb2", "z2", "eps")

UNIT = (0,) * len(VARIABLES)


def monomial(**exponents):
    """Exponent vector from keyword exponents, e.g. monomial(zb1=1, z1=1)."""
    exps = [0] * len(VARIABLES)
    for name, e in exponents.items():
        exps[INDEX[name]] = e
    return tuple(exps)


def _divides(small, big):
    return all(s <= b for s, b in zip(small, big))


def _order_key(mono):
    return tuple(mono[INDEX[name]] for name in TERM_ORDER)


def _accumulate(target, mono, coefficient):
    total = target.get(mono)
    total = coefficient if total is None else total + coefficient
    if total.is_zero():
        target.pop(mono, None)
    else:
        target[mono] = total.compact()


class ConstraintSystem:
    """
    Ordered rewrite rules monomial -> polynomial.

    Rules fire first-match in the given order; ``normal_form`` results are
    memoized per monomial.
    """

    def __init__(self, rules):
        self.rules = tuple((tuple(lhs), dict(rhs)) for lhs, rhs in rules)
        self._cache = {}

    def reordered(self, permutation):
        return ConstraintSystem([self.rules[i] for i in permutation])

    def check_termination(self):
        """
        True when every rule's left side is lexicographically larger than each
        right-side monomial under TERM_ORDER (a well order on monomials).
        """
        return all(
            _order_key(lhs) > _order_key(mono) for lhs, rhs in self.rules for mono in rhs
        )

    def normal_form(self, mono):
        cached = self._cache.get(mono)
        if cached is not None:
            return cached
        result = {mono: ONE}
        for lhs, rhs in self.rules:
            if _divides(lhs, mono):
                rest = tuple(m - l for m, l in zip(mono, lhs))
                result = {}
                for rhs_mono, rhs_coeff in rhs.items():
                    shifted = tuple(a + b for a, b in zip(rest, rhs_mono))
                    for out_mono, out_coeff in self.normal_form(shifted).items():
                        _accumulate(result, out_mono, rhs_coeff * out_coeff)
                break
        self._cache[mono] = result
        return result

    def reduce(self, terms):
        """Normal form of a raw term map {monomial: coefficient}."""
        result = {}
        for mono, coefficient in terms.items():
            coefficient = CycloNumber.coerce(coefficient)
            if coefficient.is_zero():
                continue
            for out_mono, out_coeff in self.normal_form(tuple(mono)).items():
                _accumulate(result, out_mono, coefficient * out_coeff)
        return result


DEFAULT_CONSTRAINTS = ConstraintSystem([
    # zb1*z1 -> 1 - eps
    (monomial(zb1=1, z1=1), {UNIT: ONE, monomial(eps=1): -ONE}),
    # zb3*z3 -> eps - zb2*z2
    (monomial(zb3=1, z3=1), {monomial(eps=1): ONE, monomial(zb2=1, z2=1): -ONE}),
    # lam*lamb -> 1
    (monomial(lam=1, lamb=1), {UNIT: ONE}),
])


class SpherePoly:
    """Polynomial in reduced normal form; the zero polynomial has no terms."""

    __slots__ = ("_terms", "system")

    def __init__(self, terms=None, system=DEFAULT_CONSTRAINTS):
        self.system = system
        self._terms = system.reduce(terms or {})

    @classmethod
    def _from_reduced(cls, terms, system=DEFAULT_CONSTRAINTS):
        poly = cls.__new__(cls)
        poly.system = system
        poly._terms = terms
        return poly

    @classmethod
    def variable(cls, name):
        return cls({monomial(**{name: 1}): ONE})

    @classmethod
    def constant(cls, value):
        return cls({UNIT: CycloNumber.coerce(value)})

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def degree(self):
        return max((sum(m) for m in self._terms), default=0)

    # ------------------------------------------------------------------
    # Ring operations

    def _coerce(self, other):
        if isinstance(other, SpherePoly):
            return other
        return SpherePoly.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        merged = dict(self._terms)
        for mono, coefficient in other._terms.items():
            _accumulate(merged, mono, coefficient)
        return SpherePoly._from_reduced(merged, self.system)

    __radd__ = __add__

    def __neg__(self):
        return SpherePoly._from_reduced({m: -c for m, c in self._terms.items()}, self.system)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, SpherePoly):
            raw = {}
            for (m1, c1), (m2, c2) in product(self._terms.items(), other._terms.items()):
                mono = tuple(a + b for a, b in zip(m1, m2))
                raw[mono] = raw[mono] + c1 * c2 if mono in raw else c1 * c2
            return SpherePoly(raw, self.system)
        scale = CycloNumber.coerce(other)
        if scale.is_zero():
            return SpherePoly(system=self.system)
        return SpherePoly._from_reduced(
            {m: (c * scale).compact() for m, c in self._terms.items()}, self.system
        )

    __rmul__ = __mul__

    def __pow__(self, exponent):
        result = SpherePoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def conj(self):
        """Formal conjugate: swap each variable with its partner, conjugate coefficients."""
        terms = {}
        for mono, coefficient in self._terms.items():
            swapped = tuple(mono[CONJUGATE_INDEX[i]] for i in range(len(VARIABLES)))
            terms[swapped] = coefficient.conj()
        return SpherePoly(terms, self.system)

    def __eq__(self, other):
        if not isinstance(other, (SpherePoly, CycloNumber, int, Fraction)):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset((m, hash(c)) for m, c in self._terms.items()))

    # ------------------------------------------------------------------
    # Substitution and evaluation

    def substitute(self, assignment):
        """
        Simultaneous substitution of variables by polynomials, then reduction.

        The assignment must be conjugate-consistent: if z_i maps to p, zb_i
        must map to the formal conjugate of p (unassigned variables map to
        themselves). eps may only map to a self-conjugate polynomial.
        """
        images = {name: SpherePoly.variable(name) for name in VARIABLES}
        for name, image in assignment.items():
            if name not in INDEX:
                raise ValueError(f"Unknown variable {name!r}")
            images[name] = self._coerce(image)
        for plain, bar in CONJUGATE_PAIRS:
            if images[bar] != images[plain].conj():
                raise ValueError(
                    f"Assignment is not conjugate-consistent on ({plain}, {bar}): "
                    f"{images[plain]} vs {images[bar]}"
                )
        if images["eps"] != images["eps"].conj():
            raise ValueError("eps must map to a self-conjugate polynomial")

        powers = {}

        def power(name, e):
            key = (name, e)
            if key not in powers:
                powers[key] = images[name] ** e
            return powers[key]

        result = SpherePoly(system=self.system)
        for mono, coefficient in self._terms.items():
            term = SpherePoly.constant(coefficient)
            for name, e in zip(VARIABLES, mono):
                if e:
                    term = term * power(name, e)
            result = result + term
        return result

    def evaluate(self, values):
        """
        Complex value at numeric variable values.

        Args:
            values: dict variable name -> complex (all nine variables)
        """
        point = np.array([complex(values[name]) for name in VARIABLES])
        total = 0j
        for mono, coefficient in self._terms.items():
            total += coefficient.embed() * np.prod(point ** np.array(mono))
        return total

    def __repr__(self):
        return f"SpherePoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=_order_key, reverse=True):
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(VARIABLES, mono) if e
            ]
            coefficient = str(self._terms[mono])
            if " " in coefficient:
                coefficient = f"({coefficient})"
            if not factors:
                parts.append(coefficient)
            elif coefficient == "1":
                parts.append("*".join(factors))
            else:
                parts.append("*".join([coefficient] + factors))
        return " + ".join(parts)


Z1, Z2, Z3 = (SpherePoly.variable(n) for n in ("z1", "z2", "z3"))
ZB1, ZB2, ZB3 = (SpherePoly.variable(n) for n in ("zb1", "zb2", "zb3"))
EPS = SpherePoly.variable("eps")
LAM, LAMB = SpherePoly.variable("lam"), SpherePoly.variable("lamb")


def poly_add(p, q):
    return p + q


def poly_mul(p, q):
    return p * q


def poly_scale(p, c):
    return p * CycloNumber.coerce(c)


def substitute(p, assignment):
    return p.substitute(assignment)


def is_zero_mod_constraints(p):
    """True iff the reduced form of p is the empty polynomial."""
    if not isinstance(p, SpherePoly):
        p = SpherePoly.constant(p)
    return p.is_zero()


def numeric_sphere_point(rng, eps, lam_phase=None):
    """
    Random numeric assignment satisfying the constraint ideal at a given eps.

    Returns:
        dict variable name -> complex
    """
    eps = float(eps)
    phase = rng.uniform(0, 2 * np.pi, size=3)
    pair = rng.normal(size=4)
    pair = pair / np.linalg.norm(pair)
    z1 = np.sqrt(1 - eps) * np.exp(1j * phase[0])
    z2 = np.sqrt(eps) * complex(pair[0], pair[1])
    z3 = np.sqrt(eps) * complex(pair[2], pair[3])
    lam = np.exp(1j * (phase[2] if lam_phase is None else lam_phase))
    return {
        "z1": z1, "z2": z2, "z3": z3,
        "zb1": np.conj(z1), "zb2": np.conj(z2), "zb3": np.conj(z3),
        "eps": eps, "lam": lam, "lamb": np.conj(lam),
    }
