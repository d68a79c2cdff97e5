from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("ltcrit", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ltcrit")

_acceptance = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_acceptance] = []


@pytest.fixture
def acceptance_log(request) -> list:
    return request.config.stash[_acceptance]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_acceptance, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
