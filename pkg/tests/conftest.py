from pathlib import Path

import pytest

from toricgkm.io import load_pair

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def load():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_pair(FIXTURES / f"{name}.json")
        return cache[name]

    return get
