import dataclasses
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoslit import (
    InvalidParameterError,
    NonNormalizableStateError,
    PacketParams,
    Slit,
    SlitGeometry,
    diffracted_state,
    propagator_kernel,
    single_particle_norm,
    slit_amplitude,
    slit_beam_coefficients,
)
from twoslit import oracle


def exact_coefficients(sigma, b, x0, tau_s, tau_d):
    """D, F, G, H, alpha, beta, gamma, delta in exact rational arithmetic."""
    s, b, x0, ts, td = (Fraction(v) for v in (sigma, b, x0, tau_s, tau_d))
    mu = 2 * (1 + s**4 * ts**2)
    D = 1 / (2 * b * b) + s * s / mu
    F = -(s**4) * ts / mu - 1 / (2 * td)
    G = x0 / (b * b)
    H = 1 / td
    den = D * D + F * F
    return dict(
        d_coef=D, f_coef=F, g_coef=G, h_coef=H,
        alpha=D * H * H / (4 * den), beta=F * H * H / (4 * den),
        gamma=D * G * H / (2 * den), delta=G * H * F / (2 * den),
    )


FIG1 = ("1", "0.1", "0.4", "0.2", "0.2")


@pytest.fixture
def coeffs(packet, geometry):
    return slit_beam_coefficients(packet, geometry, Slit.A)


def test_kernel_modulus():
    for x, xs in [(0.0, 0.0), (1.3, -0.7), (-2.0, 5.0)]:
        assert abs(propagator_kernel(x, xs, 0.2)) == pytest.approx((0.4 * np.pi) ** -0.5, rel=1e-14)
    assert abs(propagator_kernel(0.0, 0.0, 0.2)) == pytest.approx(0.89206, abs=1e-5)


def test_kernel_symmetry_and_phase():
    assert propagator_kernel(0.3, -1.1, 0.2) == propagator_kernel(-1.1, 0.3, 0.2)
    assert np.angle(propagator_kernel(0.5, 0.5, 0.2)) == pytest.approx(-np.pi / 4, abs=1e-15)


@pytest.mark.parametrize("tau_d", [0.0, -1.0])
def test_kernel_rejects_bad_time(tau_d):
    with pytest.raises(InvalidParameterError):
        propagator_kernel(0.0, 0.0, tau_d)


def test_published_coefficients(coeffs):
    exact = exact_coefficients(*FIG1)
    for name, value in exact.items():
        assert getattr(coeffs, name) == pytest.approx(float(value), rel=1e-13), name
    # hand values: D = 50 + 1/2.08, F = -0.2/2.08 - 2.5
    assert coeffs.d_coef == pytest.approx(50.48077, abs=1e-5)
    assert coeffs.f_coef == pytest.approx(-2.59615, abs=1e-5)
    assert coeffs.g_coef == pytest.approx(40.0)
    assert coeffs.h_coef == pytest.approx(5.0)
    assert coeffs.alpha == pytest.approx(0.123483, abs=1e-6)
    assert coeffs.beta == pytest.approx(-0.0063506, abs=1e-7)
    assert coeffs.gamma == pytest.approx(1.9757268, abs=1e-7)
    assert coeffs.delta == pytest.approx(-0.1016088, abs=1e-7)


def test_slit_b_flips_linear_terms(packet, geometry, coeffs):
    cb = slit_beam_coefficients(packet, geometry, Slit.B)
    assert (cb.alpha, cb.beta) == (coeffs.alpha, coeffs.beta)
    assert (cb.gamma, cb.delta, cb.g_coef) == (-coeffs.gamma, -coeffs.delta, -coeffs.g_coef)
    assert cb.prefactor == coeffs.prefactor
    assert coeffs.for_slit(Slit.B) == cb


def test_amplitude_at_origin(coeffs):
    assert slit_amplitude(0.0, coeffs, Slit.A) == coeffs.prefactor
    assert slit_amplitude(0.0, coeffs, Slit.B) == coeffs.prefactor


def test_amplitude_from_either_slits_coefficients(packet, geometry, coeffs):
    cb = slit_beam_coefficients(packet, geometry, Slit.B)
    x = np.linspace(-3, 3, 13)
    for slit in Slit:
        np.testing.assert_allclose(slit_amplitude(x, cb, slit), slit_amplitude(x, coeffs, slit), rtol=1e-14)


def test_beam_a_peaks_behind_slit_a(coeffs):
    x = np.linspace(-2, 2, 400001)
    peak = x[np.argmax(np.abs(slit_amplitude(x, coeffs, Slit.A)))]
    assert peak == pytest.approx(-coeffs.delta / (2 * coeffs.alpha), abs=2e-5)
    assert peak == pytest.approx(0.4114, abs=1e-4)


def test_closed_form_matches_slit_integral(packet, geometry, coeffs):
    xs = np.linspace(-2, 2, 21)
    for slit in Slit:
        quad = np.array([oracle.slit_amplitude_by_quadrature(x, packet, geometry, slit) for x in xs])
        closed = slit_amplitude(xs, coeffs, slit)
        np.testing.assert_allclose(np.abs(closed), np.abs(quad), rtol=1e-6)
        np.testing.assert_allclose(closed, quad, rtol=1e-6)


def test_single_particle_norm_by_quadrature(packet, geometry):
    state = diffracted_state(packet, geometry)
    assert state.norm > 0 and np.isfinite(state.norm)
    assert oracle.state_norm_sq(state) == pytest.approx(1.0, abs=1e-8)


def test_norm_is_even_in_linear_terms(coeffs):
    flipped = dataclasses.replace(coeffs, gamma=-coeffs.gamma, delta=-coeffs.delta)
    assert single_particle_norm(flipped) == single_particle_norm(coeffs)


def test_norm_rejects_non_normalizable(coeffs):
    with pytest.raises(NonNormalizableStateError):
        single_particle_norm(dataclasses.replace(coeffs, alpha=0.0))


def test_norm_cancels_prefactor_convention(packet, geometry, coeffs):
    # any constant error in the prefactor drops out of the normalized state
    x = np.linspace(-3, 3, 31)
    state = diffracted_state(packet, geometry)
    scaled = dataclasses.replace(coeffs, prefactor=coeffs.prefactor * (2.5 - 1.0j))
    alt = dataclasses.replace(state, coeffs=scaled, norm=single_particle_norm(scaled))
    np.testing.assert_allclose(np.abs(alt(x)), np.abs(state(x)), rtol=1e-13)


def test_diffracted_intensity_fringes(packet, geometry):
    state = diffracted_state(packet, geometry)
    x = np.linspace(-4, 4, 161)
    np.testing.assert_allclose(np.abs(state(x)) ** 2, state.intensity(x), rtol=1e-12)
    np.testing.assert_allclose(state.intensity(x), state.intensity(-x), rtol=1e-13)
    assert np.pi / state.coeffs.gamma == pytest.approx(1.590, abs=1e-3)


def test_geometry_validation():
    with pytest.raises(InvalidParameterError):
        SlitGeometry(0.0, 0.4)
    with pytest.raises(InvalidParameterError):
        SlitGeometry(1e-10, 0.4)
    with pytest.raises(InvalidParameterError):
        SlitGeometry(0.1, 0.0)
    with pytest.warns(UserWarning):
        SlitGeometry(0.5, 0.4)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        SlitGeometry(0.1, 0.4)


params = st.builds(
    PacketParams, sigma=st.floats(0.2, 5.0), tau_s=st.floats(0.0, 1.0), tau_d=st.floats(0.05, 1.0)
)
geometries = st.builds(SlitGeometry, b=st.floats(0.05, 0.3), x0=st.floats(0.35, 1.0))


@settings(max_examples=60, deadline=None)
@given(params, geometries)
def test_coefficient_invariants(p, g):
    c = slit_beam_coefficients(p, g, Slit.A)
    assert c.d_coef > 0 and c.alpha > 0
    assert c.alpha * c.f_coef == pytest.approx(c.beta * c.d_coef, rel=1e-12)
    assert c.gamma * c.f_coef == pytest.approx(c.delta * c.d_coef, rel=1e-12)
    assert np.sign(c.beta) == np.sign(c.f_coef)
    assert np.sign(c.delta) == np.sign(c.g_coef * c.f_coef)
    assert np.sign(c.gamma) == np.sign(c.g_coef)


@settings(max_examples=40, deadline=None)
@given(params, geometries, st.floats(-5, 5))
def test_slit_exchange_is_mirror(p, g, x):
    c = slit_beam_coefficients(p, g, Slit.A)
    assert abs(slit_amplitude(x, c, Slit.A)) == pytest.approx(abs(slit_amplitude(-x, c, Slit.B)), rel=1e-12)
