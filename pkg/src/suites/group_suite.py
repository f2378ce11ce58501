import itertools
import logging
import os
import sys
from fractions import Fraction
from functools import partial

import numpy as np

# Add parent directory to path to import sibling modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from finite_groups import (
    alternating_group_a4,
    check_associativity,
    cyclic_matrix_group,
    elementary_abelian_rank,
    find_isomorphism,
    group_closure,
    iso_check,
)
from presented_groups import (
    GAMMA_RELATIONS,
    GammaWord,
    b_group,
    e_group,
    gamma_assignment,
    p_group,
    pk_embed,
    verify_relations,
)
from representations import e3_model, rep_build
from verification_report import CheckResult, run_timed

LOGGER = logging.getLogger(__name__)

ANCHOR_GAMMA = "[a,b]= ω"
ANCHOR_ISO = "a ↦ w, b ↦ vu"
ANCHOR_RANK = "classification of p-groups of rank 2"
ANCHOR_A4 = "E(2) is isomorphic to the alternating group A₄"


def p3_to_e3(E):
    """The isomorphism P(3) -> E(3): a -> w, b -> vu, c -> v^-1 u."""
    u, v, w = E.generators["u"], E.generators["v"], E.generators["w"]
    return {"a": w, "b": v * u, "c": v.inverse() * u}


def expected_ranks(p):
    """Elementary abelian ranks of E(p): 2 at p, and 1 at 3 unless p = 3."""
    return {3: 2} if p == 3 else {p: 2, 3: 1}


class GroupSuite:
    """
    Group-theory certificates.
    Role: Check every presentation against its enumerated normal form.
    Covers orders, relations, associativity of the multiplication law, the
    P(k) -> Gamma inclusion, the P(3) ~ E(3) and E(2) ~ A4 isomorphisms,
    elementary abelian ranks and the matrix models of E(p).
    """

    name = "groups"

    def __init__(self, config):
        self.config = config

    def _groups(self):
        groups = [p_group(k) for k in self.config.k_values]
        groups += [e_group(p) for p in self.config.primes]
        groups += [b_group(k, sign) for k, sign in self.config.b_family]
        return groups

    # ------------------------------------------------------------------
    # Individual checks

    def check_order(self, G):
        enumerated = len(G.elements())
        if G.family == "E":
            expected = 3 * G.params[0] ** 2
        else:
            expected = 3 ** G.params[0]
        return CheckResult.from_outcome(
            f"groups.order.{G.name}",
            G.anchor,
            enumerated == G.order == expected,
            {"presented": G.order, "enumerated": enumerated, "expected": expected},
        )

    def check_associativity(self, G):
        checked, failures = check_associativity(
            G,
            self.config.associativity_exhaustive_limit,
            self.config.associativity_samples,
            self.config.seed,
        )
        return CheckResult.from_outcome(
            f"groups.associativity.{G.name}",
            G.anchor,
            not failures,
            {"triples": checked, "failures": [[str(x) for x in t] for t in failures[:5]]},
        )

    def check_gamma_law(self):
        """Gamma relations at several circle points, and associativity of the word law."""
        failing = []
        for theta in (Fraction(0), Fraction(1, 3), Fraction(1, 9), Fraction(2, 7)):
            result = verify_relations(gamma_assignment(theta), GAMMA_RELATIONS)
            failing += [f"z={theta}: {r}" for r in result.witness["failing"]]

        rng = np.random.default_rng(self.config.seed)
        words = [
            GammaWord(int(i), int(j), Fraction(int(t), 81))
            for i, j, t in rng.integers(0, 81, size=(300, 3))
        ]
        non_associative = [
            (str(x), str(y), str(z))
            for x, y, z in zip(words[::3], words[1::3], words[2::3])
            if (x * y) * z != x * (y * z)
        ]
        return CheckResult.from_outcome(
            "groups.gamma.law",
            ANCHOR_GAMMA,
            not failing and not non_associative,
            {"failing_relations": failing, "triples": len(words) // 3,
             "non_associative": non_associative[:5]},
        )

    def _embed_pairs(self, elements):
        """Every ordered pair when small enough, otherwise seeded samples."""
        n = len(elements)
        if n * n <= self.config.embed_exhaustive_pairs:
            return list(itertools.product(elements, repeat=2)), True
        rng = np.random.default_rng(self.config.seed)
        indices = rng.integers(0, n, size=(self.config.embed_samples, 2))
        return [(elements[i], elements[j]) for i, j in indices], False

    def check_pk_embed(self, k):
        """P(k) -> Gamma is injective and multiplicative."""
        G = p_group(k)
        elements = G.elements()
        images = {pk_embed(k, g) for g in elements}
        pairs, exhaustive = self._embed_pairs(elements)
        broken = [
            (str(x), str(y))
            for x, y in pairs
            if pk_embed(k, x * y) != pk_embed(k, x) * pk_embed(k, y)
        ]
        return CheckResult.from_outcome(
            f"groups.pk_embed.P{k}",
            ANCHOR_GAMMA,
            len(images) == G.order and not broken,
            {"distinct_images": len(images), "order": G.order, "pairs": len(pairs),
             "exhaustive": exhaustive, "not_multiplicative": broken[:5]},
        )

    def check_p3_e3(self):
        P3, E3 = p_group(3), e_group(3)
        passed = iso_check(p3_to_e3(E3), P3, E3)
        return CheckResult.from_outcome(
            "groups.iso.P3_E3",
            ANCHOR_ISO,
            passed,
            {"mapping": {k: str(v) for k, v in p3_to_e3(E3).items()}},
        )

    def check_e2_a4(self):
        mapping = find_isomorphism(e_group(2), alternating_group_a4())
        return CheckResult.from_outcome(
            "groups.iso.E2_A4",
            ANCHOR_A4,
            mapping is not None,
            {"mapping": {k: v.word for k, v in mapping.items()} if mapping else None},
        )

    def check_p3_not_cyclic(self):
        """Control: P(3) is not isomorphic to Z/27."""
        mapping = find_isomorphism(p_group(3), cyclic_matrix_group(27))
        return CheckResult.from_outcome(
            "groups.iso.P3_not_Z27",
            ANCHOR_ISO,
            mapping is None,
            {"mapping_found": mapping is not None},
        )

    def check_rank(self, G, p, expected):
        rank = elementary_abelian_rank(G, p)
        return CheckResult.from_outcome(
            f"groups.rank.{G.name}.p{p}",
            ANCHOR_RANK,
            rank == expected,
            {"rank": rank, "expected": expected},
        )

    def check_e_matrix_model(self, p):
        """
        The normal form of E(p) agrees with its matrix model: relations hold on
        the generator matrices, the closure has order 3p^2 and the normal-form
        map onto it is a bijection.
        """
        G = e_group(p)
        rep = e3_model() if p == 3 else rep_build("rho_E", p)
        relations = verify_relations(
            {name: rep.apply(g) for name, g in G.generators.items()}, G.relations
        )
        closure = group_closure(
            {name: rep.apply(g) for name, g in G.generators.items()},
            bound=self.config.closure_bound,
            name=rep.name,
        )
        images = {rep.apply(g).canonical_key(closure.field_order) for g in G.elements()}
        return CheckResult.from_outcome(
            f"groups.matrix_model.{G.name}",
            G.anchor,
            relations.certified and closure.order == G.order == len(images),
            {"failing_relations": relations.witness["failing"], "closure_order": closure.order,
             "distinct_images": len(images), "order": G.order},
        )

    # ------------------------------------------------------------------

    def checks(self):
        checks = []
        for G in self._groups():
            checks += [
                partial(self.check_order, G),
                G.verify_own_relations,
                partial(self.check_associativity, G),
            ]
        checks.append(self.check_gamma_law)
        checks += [partial(self.check_pk_embed, k) for k in self.config.k_values]
        checks += [self.check_p3_e3, self.check_e2_a4, self.check_p3_not_cyclic]
        checks += [partial(self.check_rank, p_group(k), 3, 2) for k in self.config.k_values]
        if (4, -1) in self.config.b_family:
            checks.append(partial(self.check_rank, b_group(4, -1), 3, 2))
        for p in self.config.primes:
            for q, expected in expected_ranks(p).items():
                checks.append(partial(self.check_rank, e_group(p), q, expected))
            checks.append(partial(self.check_e_matrix_model, p))
        return checks

    def run(self):
        LOGGER.info("🧮 Group suite: %d presented groups...", len(self._groups()))
        return [run_timed(check, self.config.record_timing) for check in self.checks()]
