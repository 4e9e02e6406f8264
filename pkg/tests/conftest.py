import pytest

from csadim import build_table


@pytest.fixture(scope="session")
def table28():
    return build_table(28)


@pytest.fixture(scope="session")
def table600():
    return build_table(600)
