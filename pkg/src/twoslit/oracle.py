"""
Brute-force quadrature used to check the closed forms.

Nothing here uses the closed-form algebra of the beams, overlaps or
densities: the slit integral is evaluated from the kernel, the slit weight
and the free packet; overlaps and normalizations integrate amplitudes
pointwise. Closed-form coefficients are used only to place truncation
windows.

The integrator is a globally adaptive 15-point Gauss-Kronrod rule with
bisection. Integrands must accept a 1-d float array and return an array of
the same shape (complex allowed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InvalidParameterError
from .slit import Slit, propagator_kernel
from .twoparticle import Statistics, joint_density
from .wavepacket import free_packet, mode_amplitude

# Kronrod abscissae on [0, 1]; odd indices (1, 3, 5, 7) are the 7-point Gauss nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])          # 15 nodes, ascending
_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WG15 = np.zeros(15)
_WG15[[1, 3, 5]] = _WG[:3]
_WG15[7] = _WG[3]
_WG15[[9, 11, 13]] = _WG[2::-1]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits of the adaptive quadrature.

    ``truncation_threshold`` is the envelope level (relative to its peak)
    beyond which an infinite-range integrand is dropped.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    truncation_threshold: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise InvalidParameterError("tolerances must be positive")
        if not 0 < self.truncation_threshold < 1:
            raise InvalidParameterError("truncation_threshold must lie in (0, 1)")
        if self.max_subdivisions < 1:
            raise InvalidParameterError("max_subdivisions must be >= 1")

    @property
    def log_threshold(self):
        return -math.log(self.truncation_threshold)


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    intervals: int


def _gk15(f, a, b):
    """Apply the rule to every interval [a_i, b_i]; returns (kronrod, |kronrod - gauss|)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel())).reshape(x.shape)
    k = (fx * _WK).sum(axis=1) * half
    g = (fx * _WG15).sum(axis=1) * half
    return k, np.abs(k - g)


def integrate_1d(f, interval, spec=DEFAULT_SPEC, initial_pieces=8):
    """Adaptive integral of ``f`` over ``interval``.

    At each pass every interval whose error exceeds its length-proportional
    share of the tolerance is bisected. Interval sums are taken in
    ascending-abscissa order with :func:`math.fsum` so results are
    reproducible bit for bit.

    Raises
    ------
    ConvergenceError
        If ``spec.max_subdivisions`` is exhausted before the error estimate
        drops below ``max(abs_tol, rel_tol * |value|)``.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if lo == hi:
        return QuadResult(0.0, 0.0, 0)
    sign = 1.0
    if hi < lo:
        lo, hi, sign = hi, lo, -1.0
    length = hi - lo
    n0 = max(1, min(initial_pieces, spec.max_subdivisions))
    edges = np.linspace(lo, hi, n0 + 1)
    done_v, done_e, done_a = [], [], []
    a, b = edges[:-1], edges[1:]
    vals, errs = _gk15(f, a, b)
    count = n0
    while True:
        total = _fsum_c(np.concatenate(done_v + [vals]), np.concatenate(done_a + [a]))
        err = math.fsum(np.concatenate(done_e + [errs]))
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if err <= tol:
            return QuadResult(sign * total, err, count)
        share = tol * (b - a) / length
        bad = errs > share
        if not bad.any():
            bad = errs == errs.max()
        if count + int(bad.sum()) > spec.max_subdivisions:
            raise ConvergenceError(sign * total, err)
        done_v.append(vals[~bad])
        done_e.append(errs[~bad])
        done_a.append(a[~bad])
        ab, bb = a[bad], b[bad]
        m = 0.5 * (ab + bb)
        a = np.concatenate([ab, m])
        b = np.concatenate([m, bb])
        vals, errs = _gk15(f, a, b)
        count += int(bad.sum())


def _fsum_c(values, keys):
    order = np.argsort(keys, kind="stable")
    v = np.asarray(values)[order]
    if np.iscomplexobj(v):
        return complex(math.fsum(v.real), math.fsum(v.imag))
    return math.fsum(v)


def quad(f, interval, spec=DEFAULT_SPEC):
    """Shorthand for ``integrate_1d(...).value``."""
    return integrate_1d(f, interval, spec).value


def envelope_radius(quad_coef, lin_coef, spec=DEFAULT_SPEC):
    """Half-width R beyond which exp(-a u^2 + |l| |u|) is below threshold x its peak."""
    a, l = float(quad_coef), abs(float(lin_coef))
    return l / (2.0 * a) + math.sqrt(spec.log_threshold / a)


# ---------------------------------------------------------------- free packet


def fourier_synthesis(x, tau, sigma, spec=DEFAULT_SPEC, k_cut=12.0):
    """(2 pi)^-1 int f(k) exp(i(k x - k^2 tau / 2)) dk over |k| <= k_cut * sigma."""
    kmax = k_cut * sigma

    def integrand(k):
        return mode_amplitude(k, sigma) * np.exp(1j * (k * x - 0.5 * k * k * tau))

    return quad(integrand, (-kmax, kmax), spec) / (2.0 * np.pi)


def free_packet_norm(tau, sigma, spec=DEFAULT_SPEC):
    """int |psi(x, tau)|^2 dx of the closed-form free packet."""
    mu = 2.0 * (1.0 + sigma**4 * tau**2)
    r = envelope_radius(2.0 * sigma**2 / mu, 0.0, spec)
    return quad(lambda x: np.abs(free_packet(x, tau, sigma)) ** 2, (-r, r), spec).real


def free_packet_second_moment(tau, sigma, spec=DEFAULT_SPEC):
    mu = 2.0 * (1.0 + sigma**4 * tau**2)
    r = envelope_radius(2.0 * sigma**2 / mu, 0.0, spec)
    return quad(lambda x: x * x * np.abs(free_packet(x, tau, sigma)) ** 2, (-r, r), spec).real


# ---------------------------------------------------------------- slit integral


def slit_amplitude_by_quadrature(x, p, g, slit, spec=DEFAULT_SPEC):
    """Direct integral over the slit coordinate of weight x kernel x free packet.

    int dx_s exp(-(x_s - x_c)^2 / 2 b^2) K(x, x_s) psi(x_s, tau_s), truncated
    where the Gaussian slit weight falls below the threshold. Includes the
    quadratic phase exp(i x^2 / 2 tau_d), like the closed form.
    """
    xc = Slit(slit).side * g.x0
    r = g.b * math.sqrt(2.0 * spec.log_threshold)

    def integrand(xs):
        w = np.exp(-((xs - xc) ** 2) / (2.0 * g.b**2))
        return w * propagator_kernel(x, xs, p.tau_d) * free_packet(xs, p.tau_s, p.sigma)

    return quad(integrand, (xc - r, xc + r), spec)


# ---------------------------------------------------------------- states


def _state_radius(state, spec, power=2):
    c = state.coeffs
    return envelope_radius(power * c.alpha, power * c.delta, spec)


def state_norm_sq(state, spec=DEFAULT_SPEC):
    """int |psi(x)|^2 dx of a diffracted state, from its amplitudes."""
    r = _state_radius(state, spec)
    return quad(lambda x: np.abs(state(x)) ** 2, (-r, r), spec).real


def overlap_by_quadrature(sa, sb, spec=DEFAULT_SPEC):
    """<sa|sb> = int sa*(x) sb(x) dx."""
    r = max(_state_radius(sa, spec), _state_radius(sb, spec))
    return complex(quad(lambda x: np.conj(sa(x)) * sb(x), (-r, r), spec))


def density_normalization_2d(sys, stat, spec=DEFAULT_SPEC):
    """Iterated quadrature of the joint density over the plane."""
    stat = Statistics(stat)
    r = max(_state_radius(sys.psi, spec), _state_radius(sys.phi, spec))
    inner_spec = QuadratureSpec(
        abs_tol=spec.abs_tol * 1e-2,
        rel_tol=spec.rel_tol,
        truncation_threshold=spec.truncation_threshold,
        max_subdivisions=spec.max_subdivisions,
    )

    def marginal(xs):
        return np.array(
            [quad(lambda y: joint_density(x, y, sys, stat), (-r, r), inner_spec).real for x in xs]
        )

    return quad(marginal, (-r, r), spec).real
