import logging
import os
import sys
from functools import partial

# Add parent directory to path to import sibling modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from sphere_regions import (
    conjugation_identities,
    verify_boundary_points,
    verify_disjointness,
    verify_invariance,
    verify_scalar_invariance,
)
from verification_report import run_timed

LOGGER = logging.getLogger(__name__)


class GeometrySuite:
    """
    Region certificates on Y = S^5.
    Role: V1 and V2 are disjoint and every region is preserved by P(k).
    """

    name = "geometry"

    def __init__(self, config):
        self.config = config

    def disjointness_checks(self):
        epsilons = dict.fromkeys(self.config.disjointness_epsilons + (self.config.epsilon,))
        return [
            partial(verify_disjointness, eps, self.config.disjointness_samples, self.config.seed)
            for eps in epsilons
        ]

    def invariance_checks(self):
        checks = [conjugation_identities]
        checks += [
            partial(verify_invariance, i, k, self.config.epsilon,
                    self.config.invariance_samples, self.config.seed)
            for k in self.config.k_values
            for i in (0, 1, 2)
        ]
        checks.append(partial(verify_scalar_invariance, self.config.epsilon))
        return checks

    def checks(self):
        return (
            [partial(verify_boundary_points, self.config.epsilon)]
            + self.disjointness_checks()
            + self.invariance_checks()
        )

    def run(self):
        LOGGER.info("🌐 Geometry suite: eps = %s...", self.config.epsilon)
        return [run_timed(check, self.config.record_timing) for check in self.checks()]
