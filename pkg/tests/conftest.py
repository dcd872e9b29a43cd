import pytest

from zetafix import load_fixture

FIXED_POINT_NAMES = (
    "klein_bottle_ex1",
    "heisenberg_ex3",
    "torus_cat_map",
    "identity_torus",
    "klein_type_3_5",
    "klein_type_3_0",
    "quarter_rotation",
)


@pytest.fixture(scope="session")
def ex1():
    return load_fixture("klein_bottle_ex1")


@pytest.fixture(scope="session")
def ex3():
    return load_fixture("heisenberg_ex3")


@pytest.fixture(scope="session")
def cat():
    return load_fixture("torus_cat_map")


@pytest.fixture(scope="session")
def identity_torus():
    return load_fixture("identity_torus")


@pytest.fixture(scope="session")
def halfturn():
    return load_fixture("halfturn_coincidence")


@pytest.fixture(scope="session")
def quarter():
    return load_fixture("quarter_rotation")
