import pytest

from starmerge import Boundary, LatticeSpec, build_lattice


@pytest.fixture(scope="session")
def lattice_d1():
    return build_lattice(LatticeSpec(1))


@pytest.fixture(scope="session")
def lattice_d2():
    return build_lattice(LatticeSpec(2))


@pytest.fixture(scope="session")
def lattice_d3():
    return build_lattice(LatticeSpec(3))


@pytest.fixture(scope="session")
def lattice_d2_open():
    return build_lattice(LatticeSpec(2, Boundary.OPEN))
