import os
import sys
from fractions import Fraction

import numpy as np
import pytest

# Make the flat src/ modules importable the way the CLI sees them
SRC_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src")
if SRC_DIR not in sys.path:
    sys.path.insert(0, SRC_DIR)

from presented_groups import b_group, e_group, p_group  # noqa: E402
from verification_config import VerificationConfig  # noqa: E402


@pytest.fixture
def eps():
    return Fraction(49, 625)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture(scope="session")
def p3():
    return p_group(3)


@pytest.fixture(scope="session")
def p4():
    return p_group(4)


@pytest.fixture(scope="session")
def e3():
    return e_group(3)


@pytest.fixture(scope="session")
def b4():
    return b_group(4, -1)


@pytest.fixture
def light_config():
    """Small sample counts so suites finish quickly."""
    return VerificationConfig(
        k_values=(3, 4),
        primes=(3, 5),
        b_family=((4, -1),),
        disjointness_samples=200,
        invariance_samples=10,
        gluing_samples=5,
        associativity_samples=500,
    ).validate()
