from fractions import Fraction

import pytest


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption("--runslow", action="store_true", default=False, help="run acceptance-scale tests")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def half() -> tuple[Fraction, Fraction]:
    return (Fraction(1, 2), Fraction(1, 2))


@pytest.fixture
def mixed() -> tuple[Fraction, Fraction, Fraction]:
    return (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))

