from pathlib import Path

import pytest

from relhom.quiveralg import dual_numbers, kronecker, linear_quiver, semisimple

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def a2():
    return linear_quiver(2, 5)


@pytest.fixture(scope="session")
def a3():
    return linear_quiver(3, 7)


@pytest.fixture(scope="session")
def kron():
    return kronecker(5)


@pytest.fixture(scope="session")
def dual():
    return dual_numbers(5)


@pytest.fixture(scope="session")
def ss2():
    return semisimple(2, 5)
