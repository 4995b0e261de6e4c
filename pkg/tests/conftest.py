import os

import pytest

from ufcheck.library import bundled_manifest_path, check_library

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="session")
def bundled_report():
    report = check_library(bundled_manifest_path())
    assert not report.diagnostics, [d.render() for d in report.diagnostics]
    return report


@pytest.fixture(scope="session")
def bundled_env(bundled_report):
    return bundled_report.env


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)
