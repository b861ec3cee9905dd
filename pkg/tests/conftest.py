"""
Shared fixtures for the test suite
"""
import pytest

from diagram_spaces.core.ambient import Ambient
from diagram_spaces.core.config import DEFAULT_FIXTURES_DIR
from diagram_spaces.core.fincat import CategoryI, CategoryJ
from diagram_spaces.core.fixtures import FixtureLoader


@pytest.fixture
def corpus():
    return FixtureLoader(DEFAULT_FIXTURES_DIR)


@pytest.fixture
def cat_I2():
    return CategoryI(2)


@pytest.fixture
def cat_I3():
    return CategoryI(3)


@pytest.fixture
def cat_J1():
    return CategoryJ(1)


@pytest.fixture
def cat_J2():
    return CategoryJ(2)


@pytest.fixture
def finsets():
    return Ambient.finite_sets()
