from __future__ import annotations

import sys

import pytest
from hypothesis import HealthCheck, settings

# Property tests are exact and reproducible: a fixed derandomized profile
# replaces hypothesis' random seeding and example database.
settings.register_profile(
    "fixed",
    derandomize=True,
    database=None,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("fixed")


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    """Keep the on-disk group cache out of the user's environment."""
    monkeypatch.delenv("BEAUVILLE_CACHE_DIR", raising=False)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
