"""
Presented Groups
Normal-form word systems for the group families of the construction:

    Gamma    = < a, b, z in S^1 | a^3 = b^3 = [a,z] = [b,z] = 1, [a,b] = omega >
    P(k)     = < a, b, c | a^3 = b^3 = c^(3^(k-2)) = [a,c] = [b,c] = 1,
                           [a,b] = c^(3^(k-3)) >                       order 3^k
    E(p)     = < u, v, w | u^p = v^p = w^3 = [u,v] = 1,
                           [u,w] = u^-2 v^-1, [v,w] = u v^-1 >          order 3p^2
    B(k,eps) = < a, b, c | a^3 = b^3 = c^(3^(k-2)) = [b,c] = 1,
                           [a,c] = b, [a,b] = c^(eps 3^(k-3)) >        order 3^k

Gamma elements are GammaWord triples with an exact rational circle angle.
The finite families share one carrier: top^t * n1^x * n2^y with an abelian
normal subgroup N = Z/m1 x Z/m2 and a top generator of order 3 acting on N by
conjugation, tau(n) = top^-1 n top, given as an integer 2x2 matrix.
Commutators follow [x, y] = x^-1 y^-1 x y.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from sympy.combinatorics.free_groups import free_group

from verification_report import CheckResult

LOGGER = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Gamma

@dataclass(frozen=True)
class GammaWord:
    """a^i b^j z with z = exp(2 pi i theta); i, j mod 3 and theta mod 1."""

    i: int = 0
    j: int = 0
    theta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "i", self.i % 3)
        object.__setattr__(self, "j", self.j % 3)
        object.__setattr__(self, "theta", Fraction(self.theta) % 1)

    def __mul__(self, other):
        if not isinstance(other, GammaWord):
            return NotImplemented
        return GammaWord(
            self.i + other.i,
            self.j + other.j,
            self.theta + other.theta - Fraction(other.i * self.j, 3),
        )

    def inverse(self):
        return GammaWord(-self.i, -self.j, -self.theta - Fraction(self.i * self.j, 3))

    def __pow__(self, exponent):
        base = self.inverse() if exponent < 0 else self
        result = GAMMA_IDENTITY
        for _ in range(abs(exponent)):
            result = result * base
        return result

    @property
    def is_identity(self):
        return self == GAMMA_IDENTITY

    def __str__(self):
        return f"a^{self.i} b^{self.j} z({self.theta})"


GAMMA_IDENTITY = GammaWord()
GAMMA_A = GammaWord(1, 0)
GAMMA_B = GammaWord(0, 1)
GAMMA_OMEGA = GammaWord(0, 0, Fraction(1, 3))


def gamma_circle(theta):
    return GammaWord(0, 0, Fraction(theta))


def commutator(x, y):
    return x ** -1 * y ** -1 * x * y


# ----------------------------------------------------------------------
# Relations

@dataclass(frozen=True)
class Relation:
    """lhs = rhs as free-group words; name is the printed form."""

    name: str
    lhs: object
    rhs: object


def evaluate_word(word, assignment):
    """
    Evaluate a free-group word on concrete elements.

    Args:
        word: sympy FreeGroupElement
        assignment: dict generator name -> element supporting *, ** and ==
    """
    identity = next(iter(assignment.values())) ** 0
    result = identity
    for symbol, exponent in word.array_form:
        result = result * (assignment[str(symbol)] ** int(exponent))
    return result


def verify_relations(assignment, relations, check_id="relations", anchor=""):
    """
    Evaluate every relation exactly under a generator assignment.

    Returns:
        CheckResult whose witness lists the failing relations (empty when the
        assignment defines a homomorphism)
    """
    failing = []
    for relation in relations:
        if evaluate_word(relation.lhs, assignment) != evaluate_word(relation.rhs, assignment):
            failing.append(relation.name)
    if failing:
        LOGGER.info("%s: %d relation(s) fail: %s", check_id, len(failing), failing)
    return CheckResult.from_outcome(
        check_id,
        anchor,
        not failing,
        {"relations_checked": len(relations), "failing": failing},
    )


_GAMMA_FREE, _GA, _GB, _GZ, _GOMEGA = free_group("a b z omega")

GAMMA_RELATIONS = (
    Relation("a^3 = 1", _GA ** 3, _GAMMA_FREE.identity),
    Relation("b^3 = 1", _GB ** 3, _GAMMA_FREE.identity),
    Relation("[a,z] = 1", commutator(_GA, _GZ), _GAMMA_FREE.identity),
    Relation("[b,z] = 1", commutator(_GB, _GZ), _GAMMA_FREE.identity),
    Relation("[a,b] = omega", commutator(_GA, _GB), _GOMEGA),
)


def gamma_assignment(theta):
    """Gamma generators with z at the circle angle theta and omega at 1/3."""
    return {"a": GAMMA_A, "b": GAMMA_B, "z": gamma_circle(theta), "omega": GAMMA_OMEGA}


# ----------------------------------------------------------------------
# Finite families

class GroupElement:
    """Element top^t n1^x n2^y of a PresentedGroup."""

    __slots__ = ("group", "exps")

    def __init__(self, group, exps):
        self.group = group
        self.exps = group.normalize(exps)

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group is not self.group and other.group.name != self.group.name:
            raise ValueError(f"Cannot multiply elements of {self.group.name} and {other.group.name}")
        return GroupElement(self.group, self.group.multiply_exps(self.exps, other.exps))

    def inverse(self):
        return GroupElement(self.group, self.group.inverse_exps(self.exps))

    def __pow__(self, exponent):
        base = self.inverse() if exponent < 0 else self
        exponent = abs(exponent)
        result = self.group.identity
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    @property
    def is_identity(self):
        return not any(self.exps)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group.name == other.group.name and self.exps == other.exps

    def __hash__(self):
        return hash((self.group.name, self.exps))

    def __lt__(self, other):
        return self.exps < other.exps

    def __repr__(self):
        return f"{self.group.name}[{self}]"

    def __str__(self):
        return " ".join(f"{g}^{e}" for g, e in zip(self.group.generator_names, self.exps))


class PresentedGroup:
    """
    Finite group top^t n1^x n2^y with (t1, n1)(t2, n2) = (t1 + t2, tau^t2(n1) + n2).

    Args:
        name: Display name, e.g. 'P(4)'
        family: 'P', 'E' or 'B'
        params: Family parameters, e.g. (4,) or (4, -1)
        generator_names: (top, n1, n2)
        moduli: (m1, m2) orders of the abelian generators
        twist: 2x2 integer matrix of tau acting on column vectors (n1, n2)
        relations: Relation list in the generators
        anchor: Quote naming the presentation
    """

    TOP_ORDER = 3

    def __init__(self, name, family, params, generator_names, moduli, twist, relations, anchor):
        self.name = name
        self.family = family
        self.params = tuple(params)
        self.generator_names = tuple(generator_names)
        self.moduli = tuple(moduli)
        self.twist = tuple(tuple(row) for row in twist)
        self.relations = tuple(relations)
        self.anchor = anchor
        self._elements = None
        self._validate_twist()
        self.identity = GroupElement(self, (0, 0, 0))

    def _validate_twist(self):
        m1, m2 = self.moduli
        (t00, t01), (t10, t11) = self.twist
        # tau must be well defined on Z/m1 x Z/m2 ...
        if (t01 * m2) % m1 or (t10 * m1) % m2:
            raise ValueError(f"{self.name}: twist {self.twist} is not defined modulo {self.moduli}")
        # ... and have order dividing 3.
        for n in ((1, 0), (0, 1)):
            if self.apply_twist(n, 3) != n:
                raise ValueError(f"{self.name}: twist {self.twist} does not have order dividing 3")

    def normalize(self, exps):
        t, x, y = exps
        return (t % self.TOP_ORDER, x % self.moduli[0], y % self.moduli[1])

    def apply_twist(self, n, times=1):
        (t00, t01), (t10, t11) = self.twist
        x, y = n
        for _ in range(times % self.TOP_ORDER):
            x, y = (t00 * x + t01 * y) % self.moduli[0], (t10 * x + t11 * y) % self.moduli[1]
        return x, y

    def multiply_exps(self, left, right):
        t1, x1, y1 = left
        t2, x2, y2 = right
        x, y = self.apply_twist((x1, y1), t2)
        return ((t1 + t2) % 3, (x + x2) % self.moduli[0], (y + y2) % self.moduli[1])

    def inverse_exps(self, exps):
        t, x, y = exps
        x, y = self.apply_twist((x, y), -t)
        return ((-t) % 3, (-x) % self.moduli[0], (-y) % self.moduli[1])

    @property
    def order(self):
        return self.TOP_ORDER * self.moduli[0] * self.moduli[1]

    @property
    def generators(self):
        top, n1, n2 = self.generator_names
        return {
            top: GroupElement(self, (1, 0, 0)),
            n1: GroupElement(self, (0, 1, 0)),
            n2: GroupElement(self, (0, 0, 1)),
        }

    @property
    def generator_orders(self):
        top, n1, n2 = self.generator_names
        return {top: self.TOP_ORDER, n1: self.moduli[0], n2: self.moduli[1]}

    def element(self, t, x, y):
        return GroupElement(self, (t, x, y))

    def elements(self):
        """All elements in lexicographic exponent order."""
        if self._elements is None:
            self._elements = [
                GroupElement(self, exps)
                for exps in product(range(3), range(self.moduli[0]), range(self.moduli[1]))
            ]
        return list(self._elements)

    def contains(self, element):
        return isinstance(element, GroupElement) and element.group.name == self.name

    def verify_own_relations(self):
        return verify_relations(
            self.generators, self.relations, f"groups.relations.{self.name}", self.anchor
        )

    def __eq__(self, other):
        return isinstance(other, PresentedGroup) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"PresentedGroup({self.name}, order={self.order})"


def _identity_relation(name, word, free):
    return Relation(f"{name} = 1", word, free.identity)


def p_group(k):
    """P(k), the subgroup of Gamma generated by a, b and c = exp(2 pi i / 3^(k-2))."""
    if k < 3:
        raise ValueError(f"P(k) needs k >= 3, got {k}")
    F, a, b, c = free_group("a b c")
    m = 3 ** (k - 2)
    e = 3 ** (k - 3)
    relations = [
        _identity_relation("a^3", a ** 3, F),
        _identity_relation("b^3", b ** 3, F),
        _identity_relation(f"c^{m}", c ** m, F),
        _identity_relation("[a,c]", commutator(a, c), F),
        _identity_relation("[b,c]", commutator(b, c), F),
        Relation(f"[a,b] = c^{e}", commutator(a, b), c ** e),
    ]
    return PresentedGroup(
        f"P({k})", "P", (k,), ("a", "b", "c"), (3, m), ((1, 0), (-e, 1)), relations,
        "a³=b³=c^{3^{k−2}}",
    )


def e_group(p):
    """E(p) = (Z/p x Z/p) x| Z/3 with w acting by (x, y) -> (-x + y, -x)."""
    F, u, v, w = free_group("u v w")
    relations = [
        _identity_relation(f"u^{p}", u ** p, F),
        _identity_relation(f"v^{p}", v ** p, F),
        _identity_relation("w^3", w ** 3, F),
        _identity_relation("[u,v]", commutator(u, v), F),
        Relation("[u,w] = u^-2 v^-1", commutator(u, w), u ** -2 * v ** -1),
        Relation("[v,w] = u v^-1", commutator(v, w), u * v ** -1),
    ]
    return PresentedGroup(
        f"E({p})", "E", (p,), ("w", "u", "v"), (p, p), ((-1, 1), (-1, 0)), relations,
        "u^p=v^p=w³",
    )


def b_group(k, sign):
    """B(k, eps): like P(k) but [a,c] = b and [a,b] = c^(eps 3^(k-3))."""
    if k < 4:
        raise ValueError(f"B(k,eps) needs k >= 4, got {k}")
    if sign not in (1, -1):
        raise ValueError(f"B(k,eps) needs eps = +1 or -1, got {sign}")
    F, a, b, c = free_group("a b c")
    m = 3 ** (k - 2)
    e = sign * 3 ** (k - 3)
    relations = [
        _identity_relation("a^3", a ** 3, F),
        _identity_relation("b^3", b ** 3, F),
        _identity_relation(f"c^{m}", c ** m, F),
        _identity_relation("[b,c]", commutator(b, c), F),
        Relation("[a,c] = b", commutator(a, c), b),
        Relation(f"[a,b] = c^{e}", commutator(a, b), c ** e),
    ]
    return PresentedGroup(
        f"B({k},{sign})", "B", (k, sign), ("a", "b", "c"), (3, m), ((1, -1), (-e, 1)),
        relations, "[a,c] = b",
    )


def build_group(family, *params):
    """Factory by family letter: build_group('P', 4), build_group('B', 4, -1)."""
    family = family.upper()
    if family == "P":
        return p_group(*params)
    if family == "E":
        return e_group(*params)
    if family == "B":
        return b_group(*params)
    raise ValueError(f"Unknown group family {family!r}")


def pk_embed(k, element):
    """
    The inclusion P(k) -> Gamma, c -> exp(2 pi i / 3^(k-2)).

    Args:
        k: Integer >= 3
        element: GroupElement of P(k)

    Returns:
        GammaWord
    """
    if k < 3:
        raise ValueError(f"P(k) needs k >= 3, got {k}")
    if not isinstance(element, GroupElement) or element.group.name != f"P({k})":
        raise ValueError(f"{element!r} is not an element of P({k})")
    t, j, l = element.exps
    return GammaWord(t, j, Fraction(l, 3 ** (k - 2)))


def a_set_kind(word):
    """'A1' for b^j z (j != 0), 'A2' for a^i b^-i z (i != 0), otherwise None."""
    if word.i == 0 and word.j != 0:
        return "A1"
    if word.i != 0 and (word.i + word.j) % 3 == 0:
        return "A2"
    return None
