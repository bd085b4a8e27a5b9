from __future__ import annotations

import sys

import pytest

from brauerfold.action import MonoidAction
from brauerfold.admissible import Admissibility
from brauerfold.g2core import G2Monoid
from brauerfold.roots import root_system, triality
from brauerfold.weyl import WeylGroup


@pytest.fixture(scope="session")
def d4():
    return root_system("D4")


@pytest.fixture(scope="session")
def a4():
    return root_system("A4")


@pytest.fixture(scope="session")
def g2():
    return root_system("G2")


@pytest.fixture(scope="session")
def adm_d4(d4):
    return Admissibility(d4)


@pytest.fixture(scope="session")
def adm_a4(a4):
    return Admissibility(a4)


@pytest.fixture(scope="session")
def act_d4(d4, adm_d4):
    return MonoidAction(d4, adm_d4)


@pytest.fixture(scope="session")
def act_a4(a4, adm_a4):
    return MonoidAction(a4, adm_a4)


@pytest.fixture(scope="session")
def w_g2(g2):
    return WeylGroup(g2)


@pytest.fixture(scope="session")
def monoid():
    return G2Monoid()


@pytest.fixture(scope="session")
def fold():
    return triality()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", {})
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number].line())
