import pytest

from twoslit import PacketParams, SlitGeometry, TwoParticleSystem, diffracted_state

# published parameter set: b = 0.1 um, x0 = 0.4 um, tau_s = tau_d = 0.2 um^2, sigma = 1 / um
B, X0, TAU_S, TAU_D, SIGMA = 0.1, 0.4, 0.2, 0.2, 1.0

_ACCEPTANCE_LINES = []


def make_system(sigma_bar, sigma=SIGMA, b=B, x0=X0, tau_s=TAU_S, tau_d=TAU_D):
    g = SlitGeometry(b, x0)
    return TwoParticleSystem(
        diffracted_state(PacketParams(sigma, tau_s, tau_d), g),
        diffracted_state(PacketParams(sigma_bar, tau_s, tau_d), g),
    )


@pytest.fixture
def geometry():
    return SlitGeometry(B, X0)


@pytest.fixture
def packet():
    return PacketParams(SIGMA, TAU_S, TAU_D)


@pytest.fixture(scope="session")
def fig1_system():
    return make_system(2.0)


@pytest.fixture(scope="session")
def fig2_system():
    return make_system(4.0)


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
