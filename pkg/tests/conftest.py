from fractions import Fraction

import pytest
from hypothesis import settings

from seriesconv import GenConfig, generate_member

# exact radical arithmetic has heavy-tailed runtimes
settings.register_profile("seriesconv", deadline=None)
settings.load_profile("seriesconv")

WORKED_EXAMPLE = "(sqrt(n+1)*root(3,n-7)+2)/(n^(2/5)-17)"

# members whose subdominant terms are already small at the start of the
# oracle grid
TIGHT = dict(min_degree_gap=Fraction(1, 2), dominance_from=10**4)

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def member_population():
    """10^4 default-config members, seeds 0..9999."""
    return [generate_member(GenConfig(seed=s)) for s in range(10_000)]


@pytest.fixture
def acceptance_report():
    def record(criterion: str, passed: bool, detail: str) -> None:
        _acceptance_lines.append(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
