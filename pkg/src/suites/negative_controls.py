import logging
import os
import sys
from fractions import Fraction

# Add parent directory to path to import sibling modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cyclo_matrix import UMatrix
from finite_groups import iso_check
from gluing_maps import ANCHOR_THETA, corrupt_theta, theta_build, verify_theta_special_unitary
from presented_groups import GAMMA_RELATIONS, e_group, p_group, verify_relations
from representations import ANCHORS, PHI_A, PHI_B, OMEGA_I
from sphere_regions import validate_epsilon
from suites.group_suite import ANCHOR_ISO, p3_to_e3
from verification_report import CheckResult, run_timed

LOGGER = logging.getLogger(__name__)

CONTROL_SAMPLES = 5


def swapped_phi_b():
    """phi(b) with its first two diagonal entries exchanged."""
    entries = [PHI_B[q, q] for q in range(3)]
    return UMatrix.diagonal([entries[1], entries[0], entries[2]])


class NegativeControlSuite:
    """
    Negative controls.
    Role: Feed deliberately broken inputs to the checkers; each control is
    certified when the checker rejects its input.
    """

    name = "negative-controls"

    def __init__(self, config):
        self.config = config

    def control_corrupted_b(self):
        b = swapped_phi_b()
        gamma = verify_relations(
            {"a": PHI_A, "b": b, "z": UMatrix.identity(3), "omega": OMEGA_I}, GAMMA_RELATIONS
        )
        p3 = verify_relations({"a": PHI_A, "b": b, "c": OMEGA_I}, p_group(3).relations)
        return CheckResult.from_outcome(
            "negative.relations.corrupted_b",
            ANCHORS["phi"],
            not gamma.certified and not p3.certified,
            {"corrupted_b": str(b), "gamma_failing": gamma.witness["failing"],
             "P3_failing": p3.witness["failing"]},
        )

    def control_corrupted_theta(self, m):
        """Every single-entry corruption of Theta_m is caught by the SU(3) check."""
        undetected = []
        tried = 0
        example_residual = None
        theta = theta_build(m)
        for row in range(3):
            for col in range(3):
                modes = ("one",) if theta[row, col].is_zero() else ("sign", "zero")
                for mode in modes:
                    tried += 1
                    result = verify_theta_special_unitary(
                        m, CONTROL_SAMPLES, self.config.seed, self.config.epsilon,
                        corrupt_theta(m, row, col, mode),
                    )
                    if result.certified:
                        undetected.append(f"({row},{col}) {mode}")
                    elif example_residual is None:
                        failing = [i for i in result.witness["identities"] if not i["certified"]]
                        if failing:
                            example_residual = {"corruption": f"({row},{col}) {mode}", **failing[0]}
        return CheckResult.from_outcome(
            f"negative.theta.m{m}",
            ANCHOR_THETA,
            not undetected,
            {"corruptions": tried, "undetected": undetected, "example": example_residual},
        )

    def control_perturbed_iso(self):
        P3, E3 = p_group(3), e_group(3)
        mapping = dict(p3_to_e3(E3), c=E3.identity)
        return CheckResult.from_outcome(
            "negative.iso.P3_E3_perturbed",
            ANCHOR_ISO,
            not iso_check(mapping, P3, E3),
            {"mapping": {k: str(v) for k, v in mapping.items()}},
        )

    def control_epsilon_range(self):
        """Collar widths outside (0, 1/9) are refused."""
        accepted = []
        for eps in (Fraction(1, 4), Fraction(1, 9), Fraction(0)):
            try:
                validate_epsilon(eps)
                accepted.append(str(eps))
            except ValueError:
                pass
        return CheckResult.from_outcome(
            "negative.epsilon_range",
            "V₁ ∩ V₂ = ∅",
            not accepted,
            {"accepted": accepted},
        )

    def checks(self):
        return [
            self.control_corrupted_b,
            lambda: self.control_corrupted_theta(1),
            lambda: self.control_corrupted_theta(2),
            self.control_perturbed_iso,
            self.control_epsilon_range,
        ]

    def run(self):
        LOGGER.info("🧪 Negative controls: corrupted inputs must be rejected...")
        return [run_timed(check, self.config.record_timing) for check in self.checks()]
