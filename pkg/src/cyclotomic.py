"""
Cyclotomic Numbers
Exact arithmetic in the cyclotomic fields Q(zeta_n).

Every matrix entry, character value and polynomial coefficient in the
certifier is a CycloNumber. Elements are stored as sparse polynomials in
Q[x]/(x^n - 1), so a product is a cyclic convolution of exponents; equality,
rationality and printing go through the canonical remainder modulo the n-th
cyclotomic polynomial. Operands of different orders are lifted to the lcm
order by index dilation.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np
from sympy import Poly, Symbol, cyclotomic_poly, divisors, mobius, totient

LOGGER = logging.getLogger(__name__)

_X = Symbol("x")


class CycloZeroDivisionError(ZeroDivisionError):
    """Raised when inverting an exact zero."""


class ArithmeticInconsistency(ArithmeticError):
    """Exact arithmetic produced a result that contradicts itself."""


@lru_cache(maxsize=None)
def cyclotomic_coefficients(n):
    """
    Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.

    Args:
        n: Positive integer

    Returns:
        Tuple of ints of length phi(n) + 1 (monic, so the last entry is 1)
    """
    poly = Poly(cyclotomic_poly(n, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _root_mean_trace(n, exponent):
    # Tr(zeta_d) / phi(d) = mu(d) / phi(d), with d the order of zeta_n^exponent.
    d = n // gcd(n, exponent)
    return Fraction(int(mobius(d)), int(totient(d)))


def _reduce_dense(dense, n):
    phi = cyclotomic_coefficients(n)
    degree = len(phi) - 1
    work = list(dense)
    for top in range(n - 1, degree - 1, -1):
        c = work[top]
        if c:
            shift = top - degree
            for idx, pc in enumerate(phi):
                if pc:
                    work[shift + idx] -= c * pc
    return tuple(work[:degree])


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"Cannot use {value!r} as an exact rational")


class CycloNumber:
    """
    Exact element of Q(zeta_n).

    Instances are immutable. ``terms`` maps an exponent k (0 <= k < n) to the
    rational coefficient of zeta_n^k in the x^n - 1 representation; that
    representation is not unique, the reduction modulo Phi_n is.
    """

    __slots__ = ("_order", "_terms", "_reduced")

    def __init__(self, order=1, terms=None):
        if order < 1:
            raise ValueError(f"Cyclotomic order must be positive, got {order}")
        clean = {}
        for exponent, coefficient in (terms or {}).items():
            coefficient = _as_fraction(coefficient)
            if not coefficient:
                continue
            exponent %= order
            total = clean.get(exponent, 0) + coefficient
            if total:
                clean[exponent] = total
            else:
                clean.pop(exponent, None)
        self._order = order
        self._terms = clean
        self._reduced = None

    # ------------------------------------------------------------------
    # Construction helpers

    @classmethod
    def rational(cls, value):
        return cls(1, {0: _as_fraction(value)})

    @classmethod
    def from_coeffs(cls, order, coeffs):
        """Build from a dense coefficient sequence on the power basis."""
        if len(coeffs) > order:
            raise ValueError(f"At most {order} coefficients allowed for order {order}")
        return cls(order, {k: c for k, c in enumerate(coeffs)})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, CycloNumber):
            return value
        return cls.rational(value)

    # ------------------------------------------------------------------
    # Accessors

    @property
    def order(self):
        return self._order

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def coeffs(self):
        dense = [Fraction(0)] * self._order
        for exponent, coefficient in self._terms.items():
            dense[exponent] = coefficient
        return tuple(dense)

    @property
    def is_structurally_zero(self):
        """True when no terms are stored (a cheap sufficient test for zero)."""
        return not self._terms

    def reduced(self):
        """Canonical remainder modulo Phi_n, as phi(n) rationals."""
        if self._reduced is None:
            self._reduced = _reduce_dense(self.coeffs, self._order)
        return self._reduced

    def canonical_key(self, order=None):
        """
        Hashable canonical form at a fixed order.

        Two numbers are equal iff their keys at a common order agree.
        """
        target = self._order if order is None else order
        if target % self._order:
            raise ValueError(f"Cannot express order {self._order} inside order {target}")
        return (target, self.lift(target).reduced())

    def is_zero(self):
        if not self._terms:
            return True
        return not any(self.reduced())

    def is_rational(self):
        reduced = self.reduced()
        return not any(reduced[1:])

    def to_fraction(self):
        """Exact rational value; ValueError if the number is not rational."""
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        reduced = self.reduced()
        return reduced[0] if reduced else Fraction(0)

    def mean_trace(self):
        """Trace down to Q divided by the degree; independent of the ambient field."""
        return sum(
            (c * _root_mean_trace(self._order, e) for e, c in self._terms.items()),
            Fraction(0),
        )

    def embed(self):
        """Complex floating-point value under zeta_n -> exp(2 pi i / n)."""
        if not self._terms:
            return 0j
        exponents = np.fromiter(self._terms.keys(), dtype=float)
        coefficients = np.fromiter((float(c) for c in self._terms.values()), dtype=float)
        phases = np.exp(2j * np.pi * exponents / self._order)
        return complex(np.dot(coefficients, phases))

    # ------------------------------------------------------------------
    # Field structure

    def lift(self, order):
        """The same number written in Q(zeta_order); order must be a multiple."""
        if order == self._order:
            return self
        if order % self._order:
            raise ValueError(f"Order {order} is not a multiple of {self._order}")
        factor = order // self._order
        return CycloNumber(order, {e * factor: c for e, c in self._terms.items()})

    def compact(self):
        """Equal number whose stored terms are the canonical remainder."""
        return CycloNumber(self._order, dict(enumerate(self.reduced())))

    def conj(self):
        n = self._order
        return CycloNumber(n, {(-e) % n: c for e, c in self._terms.items()})

    def galois(self, t):
        """Apply the automorphism zeta_n -> zeta_n^t (t coprime to n)."""
        n = self._order
        if gcd(t, n) != 1:
            raise ValueError(f"{t} is not a unit modulo {n}")
        return CycloNumber(n, {(e * t) % n: c for e, c in self._terms.items()})

    def inv(self):
        if self.is_zero():
            raise CycloZeroDivisionError("Inverse of an exact zero")
        n = self._order
        if len(self._terms) == 1:
            (exponent, coefficient), = self._terms.items()
            return CycloNumber(n, {(-exponent) % n: 1 / coefficient})
        # x^-1 = (product of the other conjugates) / norm
        cofactor = CycloNumber.rational(1).lift(n)
        for t in range(2, n):
            if gcd(t, n) == 1:
                cofactor = (cofactor * self.galois(t)).compact()
        norm = self * cofactor
        if not norm.is_rational():
            raise ArithmeticInconsistency(f"Norm of {self} is not rational: {norm}")
        return cofactor * (1 / norm.to_fraction())

    # ------------------------------------------------------------------
    # Operators

    def _aligned(self, other):
        other = CycloNumber.coerce(other)
        order = lcm(self._order, other._order)
        return order, self.lift(order)._terms, other.lift(order)._terms

    def __add__(self, other):
        if not isinstance(other, (CycloNumber, int, Fraction, np.integer)):
            return NotImplemented
        order, left, right = self._aligned(other)
        merged = dict(left)
        for e, c in right.items():
            merged[e] = merged.get(e, 0) + c
        return CycloNumber(order, merged)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self._order, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (CycloNumber, int, Fraction, np.integer)):
            return NotImplemented
        return self + (-CycloNumber.coerce(other))

    def __rsub__(self, other):
        return CycloNumber.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (CycloNumber, int, Fraction, np.integer)):
            return NotImplemented
        order, left, right = self._aligned(other)
        product = {}
        for e1, c1 in left.items():
            for e2, c2 in right.items():
                e = (e1 + e2) % order
                product[e] = product.get(e, 0) + c1 * c2
        return CycloNumber(order, product)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (CycloNumber, int, Fraction, np.integer)):
            return NotImplemented
        return self * CycloNumber.coerce(other).inv()

    def __rtruediv__(self, other):
        return CycloNumber.coerce(other) * self.inv()

    def __pow__(self, exponent):
        if not isinstance(exponent, (int, np.integer)):
            return NotImplemented
        exponent = int(exponent)
        base = self
        if exponent < 0:
            base, exponent = self.inv(), -exponent
        result = CycloNumber.rational(1).lift(self._order)
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, (CycloNumber, int, Fraction, np.integer)):
            return NotImplemented
        other = CycloNumber.coerce(other)
        if self._order == other._order and self._terms == other._terms:
            return True
        return (self - other).is_zero()

    def __hash__(self):
        # mean_trace is field independent, so equal numbers of different
        # orders hash alike.
        return hash(self.mean_trace())

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycloNumber({self})"

    def __str__(self):
        reduced = self.reduced()
        parts = []
        for exponent, coefficient in enumerate(reduced):
            if not coefficient:
                continue
            if exponent == 0:
                parts.append(str(coefficient))
                continue
            root = f"z{self._order}" if exponent == 1 else f"z{self._order}^{exponent}"
            if coefficient == 1:
                parts.append(root)
            elif coefficient == -1:
                parts.append(f"-{root}")
            else:
                parts.append(f"{coefficient}*{root}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


ZERO = CycloNumber()
ONE = CycloNumber.rational(1)


def root_of_unity(n, k=1):
    """
    zeta_n^k as an exact cyclotomic number.

    Args:
        n: Order of the ambient root of unity (n >= 1)
        k: Exponent, any integer

    Returns:
        CycloNumber of order n
    """
    if n < 1:
        raise ValueError(f"Root of unity order must be positive, got {n}")
    return CycloNumber(n, {k % n: 1})


def root_of_unity_angle(theta):
    """exp(2 pi i theta) for a rational angle theta (taken mod 1)."""
    theta = _as_fraction(theta) % 1
    return root_of_unity(theta.denominator, theta.numerator)


OMEGA = root_of_unity(3, 1)


def multiplicative_order(x):
    """
    Smallest m >= 1 with x^m = 1, or None when x is not a root of unity.

    A root of unity inside Q(zeta_n) has order dividing lcm(2, n).
    """
    x = CycloNumber.coerce(x)
    for m in divisors(lcm(2, x.order)):
        if x ** int(m) == ONE:
            return int(m)
    return None


def angle_of_root(x):
    """
    The rational angle theta in [0, 1) with x = exp(2 pi i theta), or None.
    """
    m = multiplicative_order(x)
    if m is None:
        return None
    for s in range(m):
        if root_of_unity(m, s) == x:
            return Fraction(s, m)
    raise ArithmeticInconsistency(f"{x} has order {m} but matches no {m}-th root")
