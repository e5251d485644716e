import json
import os
from fractions import Fraction

import pytest

from delzant import io
from delzant.polytope import HalfSpace, Polytope

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

ACCEPTANCE: dict = {}


def fixture_path(name):
    return os.path.join(FIXTURES, f"{name}.json")


def load(name):
    return io.read_any(fixture_path(name))


def run_cli(capsys, *args):
    """Run the delzant CLI in-process; returns (exit code, parsed report)."""
    from delzant.cli import main

    capsys.readouterr()
    try:
        main([str(a) for a in args])
        code = 0
    except SystemExit as exc:
        code = exc.code or 0
    out = capsys.readouterr().out
    return code, json.loads(out)


def poly(dim, rows):
    """rows of (u_1, ..., u_n, offset)."""
    return Polytope.from_halfspaces(dim, [HalfSpace(tuple(r[:-1]), Fraction(r[-1])) for r in rows])


def box(x0, x1, y0, y1):
    return poly(2, [(1, 0, x0), (-1, 0, -x1), (0, 1, y0), (0, -1, -y1)])


def pt(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.fixture
def square():
    return load("square")


@pytest.fixture
def simplex():
    return load("simplex")


@pytest.fixture
def trapezoid():
    return load("trapezoid")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
