"""
Finite Groups
Matrix groups generated by closure, plus the brute-force structure
computations shared by matrix groups and presented groups: element orders,
conjugacy classes, centers, elementary abelian rank, associativity checks and
isomorphism checks.

The generic routines only need hashable elements with *, ** and ==, and a
group object exposing ``elements()``, ``identity`` and ``order``.
"""

import logging
from collections import deque
from functools import reduce
from itertools import product
from math import lcm

import numpy as np
from sympy.combinatorics.named_groups import AlternatingGroup

from cyclo_matrix import UMatrix
from cyclotomic import root_of_unity
from presented_groups import verify_relations

LOGGER = logging.getLogger(__name__)

DEFAULT_CLOSURE_BOUND = 5000


class ClosureBoundExceeded(RuntimeError):
    """Closure enumeration produced more elements than allowed."""


class MatrixElement:
    """An element of a FiniteMatrixGroup: its matrix, canonical key and word."""

    __slots__ = ("group", "matrix", "key", "word")

    def __init__(self, group, matrix, key, word):
        self.group = group
        self.matrix = matrix
        self.key = key
        self.word = word

    def __mul__(self, other):
        if not isinstance(other, MatrixElement):
            return NotImplemented
        return self.group.lookup(self.matrix * other.matrix)

    def inverse(self):
        return self.group.lookup(self.matrix.adjoint())

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
        return self is self.group.identity or self.key == self.group.identity.key

    def __eq__(self, other):
        if not isinstance(other, MatrixElement):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"{self.group.name}[{self.word}]"

    def __str__(self):
        return self.word


class FiniteMatrixGroup:
    """
    Finite group of exact unitary matrices.

    Elements are keyed by their canonical form at a common cyclotomic order,
    so equality and lookup never depend on how a matrix was computed.
    """

    def __init__(self, name, dimension, field_order):
        self.name = name
        self.dimension = dimension
        self.field_order = field_order
        self._by_key = {}
        self.generators = {}
        identity = UMatrix.identity(dimension)
        self.identity = self._insert(identity, "1")

    def _key(self, matrix):
        return matrix.canonical_key(self.field_order)

    def _insert(self, matrix, word):
        element = MatrixElement(self, matrix, self._key(matrix), word)
        self._by_key[element.key] = element
        return element

    def lookup(self, matrix):
        element = self._by_key.get(self._key(matrix))
        if element is None:
            raise KeyError(f"Matrix {matrix} is not an element of {self.name}")
        return element

    def contains(self, matrix):
        return self._key(matrix) in self._by_key

    def word(self, matrix):
        return self.lookup(matrix).word

    @property
    def order(self):
        return len(self._by_key)

    def elements(self):
        return list(self._by_key.values())

    def __repr__(self):
        return f"FiniteMatrixGroup({self.name}, order={self.order})"


def group_closure(generators, bound=DEFAULT_CLOSURE_BOUND, name="G"):
    """
    Breadth-first closure of a set of exact unitary matrices.

    Args:
        generators: dict name -> UMatrix (or a sequence, named g0, g1, ...)
        bound: Abort once more than this many elements are found
        name: Name of the resulting group

    Returns:
        FiniteMatrixGroup whose elements carry shortest generator words
    """
    if not isinstance(generators, dict):
        generators = {f"g{i}": g for i, g in enumerate(generators)}
    if not generators:
        raise ValueError("group_closure needs at least one generator")
    dimensions = {g.size for g in generators.values()}
    if len(dimensions) != 1:
        raise ValueError(f"Generators have mixed sizes {sorted(dimensions)}")
    for gen_name, matrix in generators.items():
        if not matrix.is_unitary():
            raise ValueError(f"Generator {gen_name} is not unitary: {matrix}")

    field_order = reduce(lcm, (g.field_order for g in generators.values()), 1)
    group = FiniteMatrixGroup(name, dimensions.pop(), field_order)
    queue = deque([group.identity])
    while queue:
        current = queue.popleft()
        for gen_name, matrix in generators.items():
            product_matrix = current.matrix * matrix
            key = group._key(product_matrix)
            if key in group._by_key:
                continue
            word = gen_name if current.word == "1" else f"{current.word}*{gen_name}"
            queue.append(group._insert(product_matrix, word))
            if group.order > bound:
                raise ClosureBoundExceeded(
                    f"Closure of {sorted(generators)} in {name} passed {bound} elements "
                    f"(last word {word}); the generated group may be infinite"
                )
    group.generators = {n: group.lookup(m) for n, m in generators.items()}
    LOGGER.debug("Closure %s: %d elements over Q(zeta_%d)", name, group.order, field_order)
    return group


def cyclic_matrix_group(n):
    """Z/n as the 1x1 matrices zeta_n^k."""
    return group_closure({"g": UMatrix([[root_of_unity(n, 1)]])}, name=f"Z/{n}")


def permutation_matrix(perm):
    """Matrix of a sympy Permutation acting on basis vectors."""
    return UMatrix.permutation(list(perm.array_form))


def alternating_group_a4():
    """A4 as the even 4x4 permutation matrices, closed from sympy's A4 generators."""
    generators = AlternatingGroup(4).generators
    named = {f"s{i}": permutation_matrix(g) for i, g in enumerate(generators)}
    return group_closure(named, name="A4")


# ----------------------------------------------------------------------
# Generic structure computations

def element_order(x):
    identity = x ** 0
    power, n = x, 1
    while power != identity:
        power = power * x
        n += 1
    return n


def subgroup_closure(elements):
    """Subgroup generated by elements of a finite group (hashable, with *)."""
    elements = list(elements)
    if not elements:
        return set()
    identity = elements[0] ** 0
    found = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in elements:
                y = x * g
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return found


def conjugacy_classes(G):
    """Conjugacy classes as a list of frozensets, in first-seen element order."""
    remaining = list(G.elements())
    seen = set()
    classes = []
    for x in remaining:
        if x in seen:
            continue
        cls = frozenset(g.inverse() * x * g for g in remaining)
        seen |= cls
        classes.append(cls)
    return classes


def center(G):
    elements = G.elements()
    return [z for z in elements if all(z * g == g * z for g in elements)]


def exponent(G):
    return reduce(lcm, (element_order(x) for x in G.elements()), 1)


def elementary_abelian_rank(G, p):
    """
    Largest r with (Z/p)^r a subgroup of G, by exhaustive search.

    Level r holds every elementary abelian subgroup of order p^r (as a frozenset,
    with a generating list); level r+1 adjoins an order-p element that commutes
    with the generators and lies outside the subgroup.
    """
    identity = G.identity
    order_p = [x for x in G.elements() if x != identity and x ** p == identity]
    if not order_p:
        return 0

    def span(subgroup, x):
        powers = [x ** i for i in range(p)]
        return frozenset(s * q for s in subgroup for q in powers)

    level = {}
    for x in order_p:
        cyclic = span(frozenset([identity]), x)
        level.setdefault(cyclic, [x])
    rank = 1
    while True:
        next_level = {}
        for subgroup, gens in level.items():
            for x in order_p:
                if x in subgroup or any(x * g != g * x for g in gens):
                    continue
                bigger = span(subgroup, x)
                next_level.setdefault(bigger, gens + [x])
        if not next_level:
            return rank
        LOGGER.debug("%s: %d elementary abelian subgroups of order %d^%d",
                     getattr(G, "name", G), len(next_level), p, rank + 1)
        level = next_level
        rank += 1


def check_associativity(G, exhaustive_limit=200, samples=10_000, seed=0):
    """
    Associativity of G's multiplication law.

    Exhaustive over all triples when |G| <= exhaustive_limit, otherwise on
    ``samples`` seeded random triples.

    Returns:
        (number of triples checked, list of failing triples)
    """
    elements = G.elements()
    if len(elements) <= exhaustive_limit:
        triples = product(elements, repeat=3)
    else:
        rng = np.random.default_rng(seed)
        picks = rng.integers(0, len(elements), size=(samples, 3))
        triples = ((elements[i], elements[j], elements[k]) for i, j, k in picks)
    checked = 0
    failures = []
    for x, y, z in triples:
        checked += 1
        if (x * y) * z != x * (y * z):
            failures.append((x, y, z))
    return checked, failures


def iso_check(mapping, G, H):
    """
    Whether a generator assignment G -> H extends to an isomorphism.

    Args:
        mapping: dict generator name of G -> element of H
        G: PresentedGroup (its relations are checked)
        H: finite group with elements(), identity and order

    Returns:
        True iff |G| = |H|, every relation of G holds on the images, and the
        images generate all of H
    """
    if G.order != H.order:
        return False
    if set(mapping) != set(G.generator_names):
        raise ValueError(f"Mapping must assign exactly {G.generator_names}")
    if not verify_relations(mapping, G.relations).certified:
        return False
    return len(subgroup_closure(mapping.values())) == H.order


def find_isomorphism(G, H):
    """
    First generator assignment G -> H passing iso_check, or None.

    Candidate images of each generator are restricted to elements whose order
    divides the generator's order in G.
    """
    if G.order != H.order:
        return None
    names = list(G.generator_names)
    orders = G.generator_orders
    candidates = [
        [h for h in H.elements() if h ** orders[name] == H.identity] for name in names
    ]
    for images in product(*candidates):
        mapping = dict(zip(names, images))
        if iso_check(mapping, G, H):
            return mapping
    return None


def group_profile(G, p=3):
    """
    Structural summary of a finite group.

    Returns:
        dict with order, exponent, center size, number of conjugacy classes,
        elementary abelian p-rank and a histogram of element orders
    """
    histogram = {}
    for x in G.elements():
        n = element_order(x)
        histogram[n] = histogram.get(n, 0) + 1
    return {
        "group": getattr(G, "name", str(G)),
        "order": G.order,
        "exponent": exponent(G),
        "center": len(center(G)),
        "classes": len(conjugacy_classes(G)),
        f"rank_{p}": elementary_abelian_rank(G, p),
        "order_histogram": dict(sorted(histogram.items())),
    }
