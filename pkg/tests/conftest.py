"""Shared fixtures: corpus quivers and their fringed algebras."""

from pathlib import Path

import pytest

from config import CORPUS_DIR
from core.fringe import fringe
from core.quiver_loader import load_quiver, parse_quiver

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / CORPUS_DIR

FINITE_CORPUS = ["a2", "a3", "sq33", "grid_2_4", "gls"]
ALL_CORPUS = FINITE_CORPUS + ["ex22"]

# Loop x0 at 2 squaring to zero, x1: 2 -> 1
LOOP2 = """algebra loop2
vertices: 1 2
arrow x0: 2 -> 2
arrow x1: 2 -> 1
relations:
x0 x0
"""


def corpus_file(name):
    return CORPUS / f"{name}.quiver"


def load(name):
    return load_quiver(corpus_file(name), verbose=False)


@pytest.fixture
def a2():
    return load("a2")


@pytest.fixture
def a3():
    return load("a3")


@pytest.fixture
def ex22():
    return load("ex22")


@pytest.fixture
def sq33():
    return load("sq33")


@pytest.fixture
def grid():
    return load("grid_2_4")


@pytest.fixture
def gls():
    return load("gls")


@pytest.fixture
def loop2():
    return parse_quiver(LOOP2)


@pytest.fixture
def fa2(a2):
    return fringe(a2)


@pytest.fixture(params=ALL_CORPUS)
def any_quiver(request):
    return load(request.param)


@pytest.fixture(params=FINITE_CORPUS)
def finite_quiver(request):
    return load(request.param)


@pytest.fixture
def corpus():
    """Loader for corpus quivers by name."""
    return load
