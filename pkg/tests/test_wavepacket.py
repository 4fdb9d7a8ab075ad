import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from twoslit import InvalidParameterError, PacketParams
from twoslit import oracle
from twoslit.wavepacket import (
    free_evolution_coefficients,
    free_packet,
    mode_amplitude,
    packet_width_sq,
)

sigmas = st.floats(0.2, 5.0)
taus = st.floats(0.0, 1.0)


def test_mode_amplitude_peak():
    assert mode_amplitude(0.0, 1.0) == pytest.approx((4 * np.pi) ** 0.25, rel=1e-15)
    assert mode_amplitude(0.0, 1.0) == pytest.approx(1.88279, abs=1e-5)


def test_mode_amplitude_even():
    assert mode_amplitude(1.0, 1.0) == mode_amplitude(-1.0, 1.0)


def test_mode_amplitude_norm_is_two_pi():
    val, _ = quad(lambda k: mode_amplitude(k, 1.0) ** 2, -12.0, 12.0, epsabs=1e-13, epsrel=1e-13)
    assert val == pytest.approx(2 * np.pi, abs=1e-10)


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
def test_mode_amplitude_rejects_bad_sigma(bad):
    with pytest.raises(InvalidParameterError):
        mode_amplitude(0.0, bad)


def test_free_evolution_at_zero_time():
    fe = free_evolution_coefficients(0.0, 1.0)
    assert fe.c == pytest.approx(np.pi**-0.25, rel=1e-15)
    assert abs(fe.c) == pytest.approx(0.75113, abs=1e-5)
    assert fe.mu == 2.0


def test_free_evolution_mu():
    assert free_evolution_coefficients(0.2, 1.0).mu == pytest.approx(2.08, rel=1e-15)


@settings(max_examples=50, deadline=None)
@given(sigmas, taus)
def test_free_evolution_norm_identity(sigma, tau):
    fe = free_evolution_coefficients(tau, sigma)
    assert fe.mu >= 2.0
    assert abs(fe.c) ** 2 * np.sqrt(np.pi * fe.mu / (2 * sigma**2)) == pytest.approx(1.0, abs=1e-12)


def test_free_evolution_principal_branch():
    c = free_evolution_coefficients(0.7, 1.3).c
    assert -np.pi / 4 < np.angle(c) <= 0


@pytest.mark.parametrize("tau", [-0.1, float("inf")])
def test_free_evolution_rejects_bad_tau(tau):
    with pytest.raises(InvalidParameterError):
        free_evolution_coefficients(tau, 1.0)


def test_free_packet_peak():
    assert free_packet(0.0, 0.0, 1.0) == pytest.approx(np.pi**-0.25)


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
def test_free_packet_matches_fourier_synthesis():
    # oracle: scipy quadrature of the plane-wave superposition
    xs = np.linspace(-5, 5, 21)
    tau, sigma = 0.2, 1.0

    def synth(x):
        re = quad(lambda k: mode_amplitude(k, sigma) * np.cos(k * x - 0.5 * k * k * tau), -12, 12,
                  epsabs=1e-15, epsrel=1e-11, limit=200)[0]
        im = quad(lambda k: mode_amplitude(k, sigma) * np.sin(k * x - 0.5 * k * k * tau), -12, 12,
                  epsabs=1e-15, epsrel=1e-11, limit=200)[0]
        return (re + 1j * im) / (2 * np.pi)

    expected = np.array([synth(x) for x in xs])
    got = free_packet(xs, tau, sigma)
    # values down to ~1e-6 of the peak on this range: pointwise relative is meaningful here
    assert np.max(np.abs(got / expected - 1)) < 1e-8


def test_free_packet_norm():
    assert oracle.free_packet_norm(0.2, 1.0) == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=25, deadline=None)
@given(sigmas, taus, st.floats(-6, 6))
def test_parity(sigma, tau, x):
    assert free_packet(x, tau, sigma) == free_packet(-x, tau, sigma)


@pytest.mark.parametrize("sigma,tau", [(0.3, 0.0), (1.0, 0.2), (2.0, 0.2), (4.0, 0.5), (0.5, 3.0)])
def test_norm_conservation(sigma, tau):
    assert oracle.free_packet_norm(tau, sigma) == pytest.approx(1.0, abs=1e-10)


def test_spreading_is_monotone():
    taus_ = np.linspace(0, 2, 9)
    widths = [oracle.free_packet_second_moment(t, 1.5) for t in taus_]
    assert np.all(np.diff(widths) >= 0)
    assert widths == pytest.approx([packet_width_sq(t, 1.5) for t in taus_], rel=1e-9)


def test_packet_params_validation():
    PacketParams(1.0, 0.0, 0.2)
    with pytest.raises(InvalidParameterError):
        PacketParams(0.0, 0.2, 0.2)
    with pytest.raises(InvalidParameterError):
        PacketParams(1.0, -0.2, 0.2)
    with pytest.raises(InvalidParameterError):
        PacketParams(1.0, 0.2, 0.0)
    with pytest.raises(InvalidParameterError):
        PacketParams(1.0, 0.2, 1e-12)
