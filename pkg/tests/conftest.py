import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion as passed when the test body finishes."""
    marker = request.node.get_closest_marker("criterion")
    name = marker.args[0] if marker else request.node.name
    _CRITERIA[name] = (False, "did not finish")
    details = {}
    yield details
    _CRITERIA[name] = (True, details.get("summary", ""))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split()[1].rstrip(":"))):
        ok, summary = _CRITERIA[name]
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if summary:
            line += f"  ({summary})"
        terminalreporter.write_line(line)
