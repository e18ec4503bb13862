import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from fullgroup.examples import example1_system, example2_system  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def sturm():
    return example2_system("sqrt(2)-1")


@pytest.fixture(scope="session")
def sturm2():
    return example2_system("sqrt(2)/5")


@pytest.fixture(scope="session")
def sub1():
    return example1_system()
