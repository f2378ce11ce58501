# Suite Package
# This file enables the suites folder to be used as a Python package.

from .fixed_point_suite import FixedPointSuite
from .geometry_suite import GeometrySuite
from .gluing_suite import GluingSuite
from .group_suite import GroupSuite
from .negative_controls import NegativeControlSuite
from .orchestrator import SUITE_NAMES, SuiteOrchestrator, run_suite
from .representation_suite import RepresentationSuite

__all__ = [
    'FixedPointSuite',
    'GeometrySuite',
    'GluingSuite',
    'GroupSuite',
    'NegativeControlSuite',
    'RepresentationSuite',
    'SuiteOrchestrator',
    'SUITE_NAMES',
    'run_suite',
]
