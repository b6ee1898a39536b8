import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def record(request):
    """Append one acceptance summary line; printed after the run."""
    return request.config.acceptance_lines.append


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
