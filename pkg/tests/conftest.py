import sys
from pathlib import Path

import pytest

from at2ag.tree import node

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

GRA = "Get Root Access"
EBO = "Exploit Buffer Overflow"
EA = "Exploit Administrator"
DEPLOY = "Deploy .rhhost file"
REMOTE = "Remote login"
INVENT = "Invent Need For Root Access"
BEFRIEND = "Befriend Administrator"
PHONE = "Get Phone Number"
INVITE = "Invite to Social Function"

# the four attack vectors drawn in the running example graph
FIG1_TRACES = frozenset(
    {
        (REMOTE, EBO, GRA),
        (DEPLOY, EBO, GRA),
        (INVENT, PHONE, INVITE, BEFRIEND, EA, GRA),
        (PHONE, INVITE, BEFRIEND, INVENT, EA, GRA),
    }
)


def make_fig1():
    return node(
        GRA,
        "OR",
        node(EBO, "OR", DEPLOY, REMOTE),
        node(EA, "AND", INVENT, node(BEFRIEND, "SAND", PHONE, INVITE)),
    )


@pytest.fixture
def fig1():
    return make_fig1()


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
