from functools import lru_cache

import pytest

from lieaffine import rootsys, weyl


@lru_cache(maxsize=None)
def root_system(name: str) -> rootsys.RootSystem:
    return rootsys.build(rootsys.CartanType.parse(name))


@lru_cache(maxsize=4)
def weyl_group(name: str) -> weyl.WeylGroup:
    return weyl.generate(root_system(name))


@pytest.fixture
def rs():
    return root_system


@pytest.fixture
def group():
    return weyl_group


def pytest_addoption(parser):
    parser.addoption("--e7", action="store_true", default=False, help="enumerate W(E7) in acceptance criterion 4")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
