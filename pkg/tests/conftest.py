import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ringres.body import preset
from ringres.potential import PotentialModel
from ringres.reproduce import Context

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def ctx():
    return Context()


@pytest.fixture(scope="session", params=["AS", "HA"])
def model(request):
    return PotentialModel(preset(request.param))


@pytest.fixture(scope="session")
def as_model():
    return PotentialModel(preset("AS"))


@pytest.fixture(scope="session")
def ha_model():
    return PotentialModel(preset("HA"))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


@pytest.fixture
def record_check():
    def record(check):
        print(check.line())
        ACCEPTANCE_LINES.append(check.line())
        return check

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
