from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from spectral_floer.complex import FloerComplex, Orbit
from spectral_floer.novikov import Direction, GammaGroup, NovikovElement

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

DATA = Path(__file__).resolve().parents[1] / "src" / "spectral_floer" / "data"


def down(group, *terms):
    return NovikovElement(group, Direction.DOWN, {tuple(e): Fraction(c) for e, c in terms})


def up(group, *terms):
    return NovikovElement(group, Direction.UP, {tuple(e): Fraction(c) for e, c in terms})


@pytest.fixture
def g1():
    return GammaGroup([1], [0])


@pytest.fixture
def three(g1):
    """x (action 2), y (action 1), z (action 5/2, one degree up), dz = x - y."""
    orbits = [Orbit("x", 2, 0), Orbit("y", 1, 0), Orbit("z", Fraction(5, 2), 1)]
    return FloerComplex(g1, orbits, {"z": {"x": down(g1, ((0,), 1)), "y": down(g1, ((0,), -1))}},
                        box=1, name="three")


@pytest.fixture
def data_dir():
    return DATA


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
