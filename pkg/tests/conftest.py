import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from matroidkit import catalog  # noqa: E402


@pytest.fixture
def get():
    return catalog.get


# criterion number -> (passed, seconds, note); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, seconds, note = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({seconds:.1f}s) {note}")
