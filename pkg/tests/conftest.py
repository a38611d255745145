import pytest
from hypothesis import settings
from hypothesis import strategies as st

from permineq.perm import Perm

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    def _record(number, text, ok):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def perms(draw, min_size=0, max_size=8):
    n = draw(st.integers(min_size, max_size))
    return Perm(draw(st.permutations(range(1, n + 1))))
