import functools
import sys

import pytest

from weyl_strata.weyl import DiagramAut, build_group


@functools.lru_cache(maxsize=None)
def group(name):
    return build_group(name)


@pytest.fixture(scope="session")
def G():
    """Cached group lookup: ``G("A2")``."""
    return group


def ident(W):
    return DiagramAut.identity(W.n)


def flip(W):
    return DiagramAut(tuple(reversed(range(W.n))))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
