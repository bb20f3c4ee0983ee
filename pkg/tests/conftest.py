import pytest

from ehsobs import default_scenario, nofault_scenario, noisy_scenario, run_scenario


@pytest.fixture(scope="session")
def fault_scenario():
    return default_scenario()


@pytest.fixture(scope="session")
def fault_trace(fault_scenario):
    """ASTW run of the shipped default (two-stage leakage) scenario."""
    return run_scenario(fault_scenario)


@pytest.fixture(scope="session")
def stw_trace(fault_scenario):
    return run_scenario(fault_scenario, observer_kind="stw")


@pytest.fixture(scope="session")
def fosmo_trace(fault_scenario):
    return run_scenario(fault_scenario, observer_kind="fosmo")


@pytest.fixture(scope="session")
def nofault_trace():
    return run_scenario(nofault_scenario())


@pytest.fixture(scope="session")
def noisy_trace():
    return run_scenario(noisy_scenario())
