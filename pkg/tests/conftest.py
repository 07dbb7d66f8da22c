import pathlib

import pytest

from tautilt import parse_algebra

ALGEBRA_DIR = pathlib.Path(__file__).resolve().parents[1] / "algebras"


def load(name):
    return parse_algebra((ALGEBRA_DIR / f"{name}.json").read_text())


@pytest.fixture(scope="session")
def a1():
    return load("a1")


@pytest.fixture(scope="session")
def a2():
    return load("a2")


@pytest.fixture(scope="session")
def a3():
    return load("a3")


@pytest.fixture(scope="session")
def d4():
    return load("d4")


@pytest.fixture(scope="session")
def kronecker():
    return load("kronecker")


@pytest.fixture(scope="session")
def loop():
    return load("loop")


@pytest.fixture(scope="session")
def square():
    return load("square")
