import functools

import pytest

from kautzlab.families import build
from kautzlab.words import FamilySpec

# collected by test_acceptance.py, printed once at the end of the run
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@functools.lru_cache(maxsize=None)
def built(text: str):
    """Cached build of a spec given as text, e.g. ``"CK,3,3"``."""
    return build(FamilySpec.parse(text))


@pytest.fixture
def graph():
    return built


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
