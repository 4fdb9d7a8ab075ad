"""
Multi-mode Gaussian packet and its free evolution up to the slit plane.

Units are fixed at the API boundary: lengths in um, wavenumbers in 1/um and
times in reduced form tau = hbar*t/m (um^2), so neither hbar nor the mass
appear anywhere.

The initial state is a superposition of plane waves with amplitude

    f(k) = (4 pi)^(1/4) sigma^(-1/2) exp(-k^2 / 2 sigma^2)

synthesized as psi(x, tau) = (2 pi)^-1 int dk f(k) exp(i(k x - k^2 tau / 2)),
which evaluates to

    psi(x, tau) = C(tau) exp((-sigma^2 x^2 + i sigma^4 x^2 tau) / mu(tau))
    C(tau)      = pi^(-1/4) (1/sigma + i sigma tau)^(-1/2)
    mu(tau)     = 2 (1 + sigma^4 tau^2)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

# Below this, exponents of the slit closed form overflow double precision.
MIN_SCALE = 1e-9


def _check_sigma(sigma):
    if not np.isfinite(sigma) or sigma <= 0:
        raise InvalidParameterError("sigma must be positive, got %r" % (sigma,))


def _check_tau(tau, name="tau"):
    if not np.isfinite(tau) or tau < 0:
        raise InvalidParameterError("%s must be non-negative, got %r" % (name, tau))


@dataclass(frozen=True)
class PacketParams:
    """One particle's physical description.

    Parameters
    ----------
    sigma : float
        Width of the mode distribution f(k) (1/um).
    tau_s : float
        Reduced flight time from source to slit plane, hbar t_s / m (um^2).
    tau_d : float
        Reduced flight time from slit plane to detector, hbar (t - t_s) / m (um^2).
    """

    sigma: float
    tau_s: float
    tau_d: float

    def __post_init__(self):
        _check_sigma(self.sigma)
        _check_tau(self.tau_s, "tau_s")
        if not np.isfinite(self.tau_d) or self.tau_d < MIN_SCALE:
            raise InvalidParameterError(
                "tau_d must be positive (>= %g), got %r" % (MIN_SCALE, self.tau_d)
            )


@dataclass(frozen=True)
class FreeEvolutionCoefficients:
    """Envelope prefactor ``c`` (um^-1/2) and spreading factor ``mu`` of a free packet."""

    c: complex
    mu: float


def mode_amplitude(k, sigma):
    """Gaussian mode distribution f(k) with zero mean wavenumber.

    Normalized so that int |f(k)|^2 dk = 2 pi.
    """
    _check_sigma(sigma)
    k = np.asarray(k, dtype=float)
    return (4.0 * np.pi) ** 0.25 / np.sqrt(sigma) * np.exp(-(k**2) / (2.0 * sigma**2))


def free_evolution_coefficients(tau, sigma):
    _check_sigma(sigma)
    _check_tau(tau)
    # principal branch; radicand has positive real part
    c = np.pi ** -0.25 / np.sqrt(complex(1.0 / sigma, sigma * tau))
    mu = 2.0 * (1.0 + sigma**4 * tau**2)
    return FreeEvolutionCoefficients(c=complex(c), mu=float(mu))


def free_packet(x, tau, sigma):
    """Closed-form free packet psi(x, tau) (um^-1/2), vectorized over ``x``."""
    fe = free_evolution_coefficients(tau, sigma)
    x = np.asarray(x, dtype=float)
    x2 = x * x
    return fe.c * np.exp((-(sigma**2) * x2 + 1j * sigma**4 * tau * x2) / fe.mu)


def packet_width_sq(tau, sigma):
    """Second moment <x^2> of |free_packet|^2, i.e. mu / (4 sigma^2)."""
    fe = free_evolution_coefficients(tau, sigma)
    return fe.mu / (4.0 * sigma**2)
