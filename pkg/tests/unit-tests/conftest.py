# SPDX-License-Identifier: Apache-2.0

"""Shared fixtures."""

from fractions import Fraction

from hypothesis import HealthCheck, settings
import pytest

from threshold_lab import generate
from threshold_lab.familyt import MinimalFamily

# Exact arithmetic makes single examples slow; no deadline.
settings.register_profile(
    'threshold-lab', deadline=None, max_examples=50,
    suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile('threshold-lab')

COARSE_TOL = Fraction(1, 2**16)

@pytest.fixture
def pairs3():
    """The triangle family <{1,2},{2,3},{1,3}>."""

    return generate.k_uniform(3, 2)

@pytest.fixture
def singletons3():
    """The family <{1},{2},{3}>."""

    return generate.singletons(3)

@pytest.fixture
def pair():
    """The family <{1,2}>."""

    return MinimalFamily(2, [[1, 2]])

@pytest.fixture
def write_file(tmp_path):
    """Write text to a file under the test directory and return its path."""

    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return write
