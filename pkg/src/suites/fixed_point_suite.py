import logging
import os
import sys
from functools import partial

# Add parent directory to path to import sibling modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fixed_point_census import (
    census_check,
    conjugation_check,
    oracle_check,
    verify_circle_candidates,
    verify_free_on_U,
)
from verification_report import run_timed

LOGGER = logging.getLogger(__name__)

# float cross-checks stay on the small groups
ORACLE_MAX_K = 4


class FixedPointSuite:
    """
    Fixed-point certificates.
    Role: Find every element of P(k) with a fixed point on Y, X0, X1, X2
    and show that none of them has one on U0, U1, U2.
    """

    name = "fixedpoints"

    def __init__(self, config):
        self.config = config

    def census_checks(self):
        checks = []
        for k in self.config.k_values:
            checks += [partial(census_check, space, k, self.config.n_jobs)
                       for space in ("Y", "X0", "X1", "X2")]
            checks.append(partial(conjugation_check, k))
            if k <= ORACLE_MAX_K:
                checks += [partial(oracle_check, space, k) for space in ("Y", "X0", "X1", "X2")]
        checks.append(verify_circle_candidates)
        return checks

    def freeness_checks(self):
        return [
            partial(verify_free_on_U, i, k, self.config.epsilon, self.config.n_jobs)
            for k in self.config.k_values
            for i in (0, 1, 2)
        ]

    def checks(self):
        return self.census_checks() + self.freeness_checks()

    def run(self):
        LOGGER.info("📍 Fixed-point suite: P(k) for k in %s...", list(self.config.k_values))
        return [run_timed(check, self.config.record_timing) for check in self.checks()]
