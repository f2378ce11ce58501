import logging
import os
import sys
from functools import partial

# Add parent directory to path to import sibling modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gluing_maps import (
    numeric_roundtrip,
    verify_alpha_equivariance,
    verify_standard_form,
    verify_theta_special_unitary,
)
from verification_report import run_timed

LOGGER = logging.getLogger(__name__)


class GluingSuite:
    """
    Gluing certificates.
    Role: Theta_1 and Theta_2 land in SU(3) on the boundary of U0 and the
    gluing map alpha commutes with a, b and the circle.
    """

    name = "gluing"

    def __init__(self, config):
        self.config = config

    def checks(self):
        config = self.config
        checks = [
            partial(verify_theta_special_unitary, m, config.gluing_samples, config.seed, config.epsilon)
            for m in (1, 2)
        ]
        checks += [partial(verify_alpha_equivariance, g, m) for g in ("a", "b", "lambda") for m in (1, 2)]
        checks.append(partial(verify_standard_form, config.epsilon))
        checks.append(partial(numeric_roundtrip, config.epsilon, config.gluing_samples, config.seed))
        return checks

    def run(self):
        LOGGER.info("🧵 Gluing suite: Theta_1, Theta_2 and the equivariance of alpha...")
        return [run_timed(check, self.config.record_timing) for check in self.checks()]
