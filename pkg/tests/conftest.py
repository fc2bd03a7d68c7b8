import logging

import pytest

from polymix.catalog import lookup
from polymix.rotation import RotationSystem


def pytest_configure() -> None:
    logger = logging.getLogger("polymix")
    handler = logging.StreamHandler()
    formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)
    logger.debug("pytest configured")


@pytest.fixture(scope="session")
def realized():
    """
    Realize catalog entries by name, once per session.
    """
    cache: dict[str, RotationSystem] = {}

    def get(name: str) -> RotationSystem:
        if name not in cache:
            cache[name] = RotationSystem.from_presentation(lookup(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def torus_1_2(realized) -> RotationSystem:
    """The chiral torus map {3,6}_(1,2), order 42."""
    return realized("{3,6}(1,2)")


@pytest.fixture(scope="session")
def tetrahedron(realized) -> RotationSystem:
    return realized("{3,3}")
