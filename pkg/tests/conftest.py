import pytest
from hypothesis import HealthCheck, settings

from presheaf_workbench import PresheafContext, preset_cube, preset_simplex, yoneda

settings.register_profile(
    "workbench", deadline=None, derandomize=True, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("workbench")


@pytest.fixture(scope="session")
def s1():
    return preset_simplex(1)


@pytest.fixture(scope="session")
def s2():
    return preset_simplex(2)


@pytest.fixture(scope="session")
def c1():
    return preset_cube(1)


@pytest.fixture(scope="session")
def ctx1(s1):
    return PresheafContext(s1, yoneda(s1, "[1]"))


@pytest.fixture(scope="session")
def ctx2(s2):
    return PresheafContext(s2, yoneda(s2, "[1]"))


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
