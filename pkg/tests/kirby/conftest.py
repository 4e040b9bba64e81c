import pytest

from tests.kirby import load_diagram


@pytest.fixture
def load():
    return load_diagram
