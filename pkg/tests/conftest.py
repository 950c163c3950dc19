import functools

import pytest

from hyperlrc import conway_field, curve_make


@functools.lru_cache(maxsize=None)
def field(p, m):
    return conway_field(p, m)


@functools.lru_cache(maxsize=None)
def curve(p, m, f):
    return curve_make(field(p, m), f)


# (p, m, f) for the curves the constructions run on
TEST_CURVES = [(3, 2, "x5+x3+2x"), (5, 2, "x5+x"), (5, 2, "x6+x3+2")]


@pytest.fixture(scope="session")
def f9():
    return field(3, 2)


@pytest.fixture(scope="session")
def f25():
    return field(5, 2)


@pytest.fixture(scope="session")
def c9():
    return curve(3, 2, "x5+x3+2x")


@pytest.fixture(scope="session")
def c25():
    return curve(5, 2, "x5+x")


@pytest.fixture(scope="session")
def c25_sextic():
    return curve(5, 2, "x6+x3+2")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running reproduction")
