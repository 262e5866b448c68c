# conftest.py

import pytest

from catalog import load_fixture
from config import MinbraidConfig
from enumeration import enumerate_catalog


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run long reproduction checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long reproduction checks, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope='session')
def fixture_rows():
    """The bundled table of published minimum braids."""
    return load_fixture()


@pytest.fixture(scope='session')
def small_catalog(fixture_rows):
    """Catalog enumerated through 6 braid crossings."""
    return enumerate_catalog(6, fixture=fixture_rows)


@pytest.fixture
def tmp_config(tmp_path):
    config = MinbraidConfig(tmp_path)
    config.create_directories()
    return config


@pytest.fixture(scope='session')
def nine_crossing_catalog(fixture_rows):
    """Catalog enumerated through 9 braid crossings (slow tests only)."""
    return enumerate_catalog(9, fixture=fixture_rows)
