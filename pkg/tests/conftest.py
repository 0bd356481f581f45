import pytest

from gldist import LineSpec, Universe, parse_multisegment, parse_rep

U = Universe.of(
    LineSpec("one", 1, None, 1, 0),
    LineSpec("rho2", 2, None, 1, 0),
    LineSpec("sigma", 2, None, 1, 0),
    LineSpec("s", 2, None, 1, 0),
    LineSpec("pi3", 3, "pi3b"),
    LineSpec("pi3b", 3, "pi3"),
)

THETA = "[1/2,3/2]@s + [-1/2,7/2]@s + [-3/2,-1/2]@s + [-5/2,5/2]@s + [-7/2,1/2]@s"


def M(text):
    return parse_multisegment(text, U)


def R(text):
    return parse_rep(text, U)


@pytest.fixture
def u():
    return U


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
