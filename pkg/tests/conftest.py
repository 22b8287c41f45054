import pytest

from gbdkit import catalog_names, make_diagram

NAMES = [n for n in catalog_names() if n != "banded"]


@pytest.fixture(scope="session")
def handles():
    return {name: make_diagram(name) for name in NAMES}


@pytest.fixture(params=NAMES)
def each_diagram(request, handles):
    return handles[request.param]
