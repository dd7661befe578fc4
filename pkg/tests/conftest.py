import pytest

from polylink import catalog as cat


@pytest.fixture(scope="session")
def simplex():
    return cat.generate("simplex")


@pytest.fixture(scope="session")
def cube():
    return cat.generate("cube")


@pytest.fixture(scope="session")
def octahedron():
    return cat.generate("antiprism:3")


@pytest.fixture(scope="session")
def a4():
    return cat.generate("antiprism:4")


@pytest.fixture(scope="session")
def a5():
    return cat.generate("antiprism:5")


@pytest.fixture(scope="session")
def dodecahedron():
    return cat.generate("dodecahedron")


@pytest.fixture(scope="session")
def permutohedron():
    return cat.generate("permutohedron")


@pytest.fixture(scope="session")
def p8():
    return cat.generate("P8")
