import logging
import os
import sys

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gluing_maps import NORMALIZATION_NOTE
from suites.fixed_point_suite import FixedPointSuite
from suites.geometry_suite import GeometrySuite
from suites.gluing_suite import GluingSuite
from suites.group_suite import GroupSuite
from suites.negative_controls import NegativeControlSuite
from suites.representation_suite import RepresentationSuite
from verification_report import Report, run_timed

LOGGER = logging.getLogger(__name__)

SUITES = {
    "groups": GroupSuite,
    "representations": RepresentationSuite,
    "fixedpoints": FixedPointSuite,
    "geometry": GeometrySuite,
    "gluing": GluingSuite,
    "negative-controls": NegativeControlSuite,
}
# negative controls stay out of the certification run
ALL_SUITES = ("groups", "representations", "fixedpoints", "geometry", "gluing")
SUITE_NAMES = ("theorem-a",) + tuple(SUITES) + ("all",)

CENSUS_NOTE = (
    "For k >= 4 the X0 census is compared with the elements of (A1 u A2) n P(k) "
    "whose circle part lies in mu_3; the remaining elements of A1 u A2 act freely."
)


class SuiteOrchestrator:
    """
    Coordinator for the certification suites.
    Manages the run order and assembles one Report per invocation:
    - theorem-a: disjointness, invariance, freeness, then the gluing map
    - groups / representations / fixedpoints / geometry / gluing: one suite
    - all: every certification suite (negative controls excluded)
    """

    def __init__(self, config):
        self.config = config

    def _theorem_a_checks(self):
        geometry = GeometrySuite(self.config)
        fixed_points = FixedPointSuite(self.config)
        return (
            geometry.disjointness_checks()
            + geometry.invariance_checks()
            + fixed_points.freeness_checks()
            + GluingSuite(self.config).checks()
        )

    def _notes(self, name):
        notes = []
        if name in ("theorem-a", "gluing", "all"):
            notes.append(NORMALIZATION_NOTE)
        if name in ("fixedpoints", "all") and any(k >= 4 for k in self.config.k_values):
            notes.append(CENSUS_NOTE)
        return notes

    def run(self, name):
        """
        Run one suite and collect its checks.

        Args:
            name: One of SUITE_NAMES

        Returns:
            Report with checks ordered by check id
        """
        if name not in SUITE_NAMES:
            raise ValueError(f"Unknown suite {name!r}; expected one of {SUITE_NAMES}")
        report = Report(suite=name, config=self.config.report_snapshot(), notes=self._notes(name))

        if name == "theorem-a":
            LOGGER.info("🏁 Theorem suite: disjointness, invariance, freeness, gluing...")
            results = [run_timed(c, self.config.record_timing) for c in self._theorem_a_checks()]
        elif name == "all":
            results = []
            for suite_name in ALL_SUITES:
                results += SUITES[suite_name](self.config).run()
        else:
            results = SUITES[name](self.config).run()

        for result in results:
            report.add(result)
        counts = report.counts()
        LOGGER.info("Suite %s: %s (%d certified, %d failed)",
                    name, report.status, counts["certified"], counts["failed"])
        return report


def run_suite(name, config):
    return SuiteOrchestrator(config).run(name)
