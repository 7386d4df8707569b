import re
import sys
from pathlib import Path

import pytest

from twistwidth.core import make_set_system
from twistwidth.formats import parse_ribbon_graph_file, parse_set_system_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
DATA = Path(__file__).resolve().parent / "data"

R4_FAMILY = [[], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def d_b():
    return parse_set_system_file(FIXTURES / "d_b.json")


@pytest.fixture
def d_r():
    return parse_set_system_file(FIXTURES / "d_r.json")


@pytest.fixture
def d_r4fam():
    return make_set_system(4, R4_FAMILY)


@pytest.fixture
def d_0():
    return make_set_system(0, [[]])


def ribbon_fixture(name):
    return parse_ribbon_graph_file(FIXTURES / f"{name}.json")


@pytest.fixture
def r4():
    return ribbon_fixture("r4")


@pytest.fixture
def l0():
    return ribbon_fixture("l0")


@pytest.fixture
def l1():
    return ribbon_fixture("l1")


@pytest.fixture
def t2():
    return ribbon_fixture("t2")


@pytest.fixture
def isolated():
    return ribbon_fixture("isolated")


# acceptance summary ------------------------------------------------------------

_CRITERIA: dict[int, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.failed:
        if _CRITERIA.get(n) != "FAIL":
            _CRITERIA[n] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    module = sys.modules.get("test_acceptance")
    verdicts = getattr(module, "VERDICTS", {})
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"{_CRITERIA[n]} {verdicts.get(n, f'criterion {n}')}")
