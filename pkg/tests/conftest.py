import pytest

from milfib.arrangement import build_lattice, named_arrangement

NAMES = ("braid", "pappus-dual", "ex-3-1-iii", "ceva3", "hesse")


@pytest.fixture(scope="session")
def arrangements():
    return {name: named_arrangement(name) for name in NAMES}


@pytest.fixture(scope="session")
def lattices(arrangements):
    return {name: build_lattice(arr) for name, arr in arrangements.items()}
