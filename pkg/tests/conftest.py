import functools

import pytest

from qqrcodes import build, weight_distribution


@functools.lru_cache(maxsize=None)
def brute(p, family="qqr"):
    return weight_distribution(build(p, family))


@pytest.fixture(scope="session")
def dist():
    """Cached brute-force distributions: dist(p, family)."""
    return brute


def pytest_terminal_summary(terminalreporter):
    from oracles import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
