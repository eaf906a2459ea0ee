import pytest

from misere import GameStore


@pytest.fixture
def store():
    return GameStore()


@pytest.fixture(scope="session")
def shared_store():
    # one store for the expensive suites so outcome memos accumulate
    return GameStore()
