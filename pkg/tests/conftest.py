from pathlib import Path

import pytest

from leavitt.quiver import parse_quiver

QUIVER_DIR = Path(__file__).resolve().parent.parent / "quivers"


def load(name):
    return parse_quiver((QUIVER_DIR / f"{name}.quiver").read_text())


@pytest.fixture(scope="session")
def one_loop():
    return load("one_loop")


@pytest.fixture(scope="session")
def two_loop():
    return load("two_loop")


@pytest.fixture(scope="session")
def two_cycle():
    return load("two_cycle")


@pytest.fixture(scope="session")
def branch3():
    return load("branch3")


@pytest.fixture(scope="session")
def battery(one_loop, two_loop, two_cycle, branch3):
    return [one_loop, two_loop, two_cycle, branch3]
