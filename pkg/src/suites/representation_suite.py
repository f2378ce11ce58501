import logging
import os
import sys
from functools import partial

# Add parent directory to path to import sibling modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from presented_groups import p_group
from representations import (
    ANCHORS,
    build_all_tables,
    det_check,
    factors_through_quotient,
    rep_build,
    verify_faithful,
    verify_irreducible,
    verify_real_orthogonal,
    verify_rep_relations,
)
from verification_report import CheckResult, run_timed

LOGGER = logging.getLogger(__name__)

PSI_NAMES = ("psi0", "psi1", "psi2")


class RepresentationSuite:
    """
    Representation certificates.
    Role: Every matrix table is a homomorphism with the claimed properties.
    Relations and unitarity per table, determinants, faithfulness through
    closure orders, irreducibility through character norms.
    """

    name = "representations"

    def __init__(self, config):
        self.config = config

    def _finite_tables(self):
        """(table, group) pairs for the tables that are not defined on Gamma."""
        tables = [rep_build(name) for name in ("rho_P3", "rho_B4", "rho_E2")]
        tables += [rep_build("rho_E", p) for p in self.config.primes if p != 3]
        return [(rep, rep.source_group()) for rep in tables]

    def check_quotient(self):
        """psi0, psi1, psi2 kill the centre <c> of P(3); phi does not."""
        G = p_group(3)
        c = G.generators["c"]
        central = [c, c ** 2]
        through = {name: factors_through_quotient(rep_build(name), central) for name in PSI_NAMES}
        phi_through = factors_through_quotient(rep_build("phi"), central)
        return CheckResult.from_outcome(
            "representations.quotient.P(3)",
            ANCHORS["psi0"],
            all(through.values()) and not phi_through,
            {"psi_factor_through_P3/<c>": through, "phi_factors": phi_through},
        )

    def checks(self):
        primes = tuple(p for p in self.config.primes if p != 3)
        checks = [
            partial(verify_rep_relations, rep, self.config.k_values)
            for rep in build_all_tables(primes)
        ]

        phi = rep_build("phi")
        checks.append(partial(det_check, phi, p_group(3)))
        for k in self.config.k_values:
            checks.append(partial(verify_faithful, phi, p_group(k), self.config.closure_bound))
            checks.append(partial(verify_irreducible, phi, p_group(k)))
        for name in PSI_NAMES:
            checks.append(partial(verify_irreducible, rep_build(name), p_group(3), False))
        checks.append(self.check_quotient)

        for rep, G in self._finite_tables():
            checks += [
                partial(det_check, rep, G),
                partial(verify_faithful, rep, G, self.config.closure_bound),
                partial(verify_irreducible, rep, G),
            ]
        checks.append(partial(verify_real_orthogonal, rep_build("rho_E2")))
        return checks

    def run(self):
        LOGGER.info("🔢 Representation suite: checking matrix tables...")
        return [run_timed(check, self.config.record_timing) for check in self.checks()]
