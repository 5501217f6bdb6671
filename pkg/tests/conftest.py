import pytest

from acaikit import preset
from acaikit._backend import warm_up


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile the jitted kernels up front so timed tests measure the
    # algorithms, not the first-call compilation
    warm_up()


@pytest.fixture
def pnpnpn():
    return preset("pnpnpn-table1")


@pytest.fixture
def ppnnpn():
    return preset("ppnnpn-table1")
