"""
Post-slit single-particle beams in the Gaussian-slit approximation.

A hard aperture is replaced by the transmission weight
exp(-(x_s - x_c)^2 / 2 b^2) and the propagation integral over the slit
coordinate is extended to the whole axis, which makes it a Gaussian integral.
Each slit then emits a beam

    psi_A(x) = Cc exp(i x^2 / 2 tau_d) exp(-(alpha - i beta) x^2) exp(-(delta + i gamma) x)

with the coefficients of :class:`BeamCoefficients`. Slit A is centred at
+x0 and slit B at -x0; swapping slits flips the sign of G and therefore of
gamma and delta.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, NonNormalizableStateError
from .wavepacket import MIN_SCALE, PacketParams, free_evolution_coefficients


class Slit(str, enum.Enum):
    A = "A"
    B = "B"

    @property
    def side(self):
        """+1 for the slit at +x0, -1 for the slit at -x0."""
        return 1 if self is Slit.A else -1


@dataclass(frozen=True)
class SlitGeometry:
    """Two Gaussian slits of half-width ``b`` centred at +x0 (A) and -x0 (B), in um."""

    b: float
    x0: float

    def __post_init__(self):
        if not np.isfinite(self.b) or self.b < MIN_SCALE:
            raise InvalidParameterError("b must be positive (>= %g), got %r" % (MIN_SCALE, self.b))
        if not np.isfinite(self.x0) or self.x0 <= 0:
            raise InvalidParameterError("x0 must be positive, got %r" % (self.x0,))
        if self.x0 <= self.b:
            warnings.warn(
                "slit offset x0=%g does not exceed slit half-width b=%g; the slits overlap"
                % (self.x0, self.b),
                stacklevel=2,
            )

    def center(self, slit):
        return Slit(slit).side * self.x0


@dataclass(frozen=True)
class BeamCoefficients:
    """Complex-amplitude parameters of one particle's beam through one slit.

    ``d_coef``, ``f_coef``, ``h_coef``, ``alpha`` and ``beta`` are in um^-2,
    ``g_coef``, ``gamma`` and ``delta`` in um^-1 and ``prefactor`` in um^-1/2.
    """

    d_coef: float
    f_coef: float
    g_coef: float
    h_coef: float
    alpha: float
    beta: float
    gamma: float
    delta: float
    prefactor: complex
    slit: Slit = Slit.A

    def for_slit(self, slit):
        """Coefficients of the mirror beam (G -> -G)."""
        slit = Slit(slit)
        if slit is self.slit:
            return self
        return BeamCoefficients(
            d_coef=self.d_coef,
            f_coef=self.f_coef,
            g_coef=-self.g_coef,
            h_coef=self.h_coef,
            alpha=self.alpha,
            beta=self.beta,
            gamma=-self.gamma,
            delta=-self.delta,
            prefactor=self.prefactor,
            slit=slit,
        )


@dataclass(frozen=True)
class DiffractedState:
    """Normalized single-particle state N (psi_A + psi_B) behind the slits."""

    coeffs: BeamCoefficients
    norm: float
    params: PacketParams = None
    geometry: SlitGeometry = None

    def beam(self, x, slit, phase=True):
        """Normalized contribution N psi_slit(x) of one slit."""
        return self.norm * slit_amplitude(x, self.coeffs, slit, phase=phase)

    def __call__(self, x, phase=True):
        return self.beam(x, Slit.A, phase) + self.beam(x, Slit.B, phase)

    def intensity(self, x):
        """|psi(x)|^2 from the fringe form exp(-2 alpha x^2)(2 cosh 2 delta x + 2 cos 2 gamma x)."""
        c = self.coeffs
        x = np.asarray(x, dtype=float)
        scale = self.norm**2 * abs(c.prefactor) ** 2
        return scale * np.exp(-2.0 * c.alpha * x * x) * (
            2.0 * np.cosh(2.0 * c.delta * x) + 2.0 * np.cos(2.0 * c.gamma * x)
        )


def propagator_kernel(x, x_s, tau_d):
    """Free-particle kernel K(x, t; x_s, t_s) in reduced time (um^-1).

    (1 / (2 pi i tau_d))^(1/2) exp(i (x - x_s)^2 / (2 tau_d)), principal branch.
    """
    if not np.isfinite(tau_d) or tau_d <= 0:
        raise InvalidParameterError("tau_d must be positive, got %r" % (tau_d,))
    x = np.asarray(x, dtype=float)
    x_s = np.asarray(x_s, dtype=float)
    amp = np.sqrt(1.0 / (2j * np.pi * tau_d))
    return amp * np.exp(1j * (x - x_s) ** 2 / (2.0 * tau_d))


def slit_beam_coefficients(p, g, slit=Slit.A):
    """Closed-form beam coefficients for packet ``p`` through ``slit`` of geometry ``g``."""
    slit = Slit(slit)
    tau_s, tau_d, sigma, b = p.tau_s, p.tau_d, p.sigma, g.b
    fe = free_evolution_coefficients(tau_s, sigma)

    d = 1.0 / (2.0 * b * b) + sigma**2 / fe.mu
    f = -(sigma**4) * tau_s / fe.mu - 1.0 / (2.0 * tau_d)
    gc = slit.side * g.x0 / (b * b)
    h = 1.0 / tau_d
    den = d * d + f * f

    alpha = d * h * h / (4.0 * den)
    beta = f * h * h / (4.0 * den)
    gamma = d * gc * h / (2.0 * den)
    delta = gc * h * f / (2.0 * den)

    prefactor = (
        fe.c
        * np.sqrt(1.0 / (2j * tau_d * complex(d, f)))
        # both exponentials merged: each alone can overflow for narrow slits
        * np.exp(-(g.x0**2) / (2.0 * b * b) + gc * gc * complex(d, -f) / (4.0 * den))
    )
    return BeamCoefficients(
        d_coef=float(d),
        f_coef=float(f),
        g_coef=float(gc),
        h_coef=float(h),
        alpha=float(alpha),
        beta=float(beta),
        gamma=float(gamma),
        delta=float(delta),
        prefactor=complex(prefactor),
        slit=slit,
    )


def slit_amplitude(x, c, slit, phase=True):
    """Amplitude of the beam through ``slit`` (um^-1/2), vectorized over ``x``.

    ``c`` may hold the coefficients of either slit; the beam of the other
    slit is obtained by flipping the linear term. ``phase=False`` drops the
    quadratic phase exp(i x^2 / 2 tau_d), which is common to every beam and
    cancels in all densities and overlaps.
    """
    slit = Slit(slit)
    x = np.asarray(x, dtype=float)
    s = 1.0 if slit is c.slit else -1.0
    lin = s * complex(c.delta, c.gamma)
    expo = -complex(c.alpha, -c.beta) * x * x - lin * x
    if phase:
        expo = expo + 0.5j * c.h_coef * x * x
    return c.prefactor * np.exp(expo)


def single_particle_norm(c):
    """Normalization N of N (psi_A + psi_B); even in gamma and delta."""
    if not c.alpha > 0:
        raise NonNormalizableStateError("alpha must be positive, got %r" % (c.alpha,))
    a = c.alpha
    # factor exp(delta^2/2a) out to avoid overflow for wide beams
    lead = c.delta**2 / (2.0 * a)
    s = 1.0 + np.exp(-(c.gamma**2) / (2.0 * a) - lead)
    return float(
        (a / (2.0 * np.pi)) ** 0.25 / abs(c.prefactor) * np.exp(-0.5 * lead) / np.sqrt(s)
    )


def diffracted_state(p, g):
    """Normalized state of particle ``p`` after the two slits of ``g``."""
    c = slit_beam_coefficients(p, g, Slit.A)
    return DiffractedState(coeffs=c, norm=single_particle_norm(c), params=p, geometry=g)
