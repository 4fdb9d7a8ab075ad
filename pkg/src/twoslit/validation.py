"""
Cross-checks of every closed form against the brute-force oracle.

Each check returns one or more :class:`CheckResult`; ``run_all`` collects
them in a fixed order so the report is reproducible.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import oracle
from .errors import DegenerateFermionStateError
from .slit import Slit, SlitGeometry, diffracted_state, slit_amplitude, slit_beam_coefficients
from .twoparticle import (
    ALL_STATISTICS,
    Statistics,
    TwoParticleSystem,
    detection_pattern,
    distinguishable_density,
    exchange_sum,
    fixed_detector_pattern,
    initial_overlap,
    joint_density,
    joint_density_expanded,
    overlap_exponent_terms,
)
from .wavepacket import PacketParams, free_packet

# (sigma_bar, initial |<psi|phi>|^2 as quoted, final as quoted), with sigma = 1
QUOTED_OVERLAPS = ((0.1, 0.2, 0.99), (0.5, 0.48, 0.99), (2.0, 0.47, 0.99), (4.0, 0.12, 0.39))


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float = float("nan")
    tolerance: float = float("nan")
    detail: str = ""
    expected_error: bool = False

    def line(self):
        if self.expected_error:
            status = "EXPECTED-ERROR"
        else:
            status = "PASS" if self.passed else "FAIL"
        s = "%-14s %-44s" % (status, self.name)
        if np.isfinite(self.measured):
            s += " err=%.3e tol=%.1e" % (self.measured, self.tolerance)
        if self.detail:
            s += "  " + self.detail
        return s


def _particles(cfg):
    return (
        ("psi", PacketParams(cfg.sigma, cfg.tau_s, cfg.tau_d)),
        ("phi", PacketParams(cfg.sigma_bar, cfg.tau_s, cfg.tau_d)),
    )


def check_fourier(cfg, spec=oracle.DEFAULT_SPEC, tol=1e-8):
    """Closed-form free packet vs. Fourier synthesis, error relative to the packet peak."""
    xs = np.linspace(-5.0, 5.0, 41)
    out = []
    for tau in (0.0, cfg.tau_s):
        for sigma in sorted({cfg.sigma, cfg.sigma_bar}):
            closed = free_packet(xs, tau, sigma)
            synth = np.array([oracle.fourier_synthesis(x, tau, sigma, spec) for x in xs])
            err = float(np.max(np.abs(closed - synth)) / np.max(np.abs(closed)))
            out.append(CheckResult("fourier tau=%g sigma=%g" % (tau, sigma), err < tol, err, tol))
    return out


def check_free_norm(cfg, spec=oracle.DEFAULT_SPEC, tol=1e-10):
    out = []
    for sigma in sorted({cfg.sigma, cfg.sigma_bar}):
        err = abs(oracle.free_packet_norm(cfg.tau_s, sigma, spec) - 1.0)
        out.append(CheckResult("free-packet norm sigma=%g" % sigma, err < tol, err, tol))
    return out


def check_slit_closed_form(cfg, spec=oracle.DEFAULT_SPEC, tol=1e-6, coeff_transform=None):
    """Beam closed form vs. direct slit integral at 21 points in [-2, 2].

    Compares moduli (relative) and phases relative to the x = 0 sample, and
    reports the residual constant ratio closed/quadrature in the detail.
    ``coeff_transform`` lets tests perturb the coefficients.
    """
    g = SlitGeometry(cfg.b, cfg.x0)
    xs = np.linspace(-2.0, 2.0, 21)
    out = []
    for label, p in _particles(cfg):
        for slit in Slit:
            c = slit_beam_coefficients(p, g, slit)
            if coeff_transform is not None:
                c = coeff_transform(c)
            closed = slit_amplitude(xs, c, slit)
            quad = np.array([oracle.slit_amplitude_by_quadrature(x, p, g, slit, spec) for x in xs])
            mod_err = float(np.max(np.abs(np.abs(closed) / np.abs(quad) - 1.0)))
            ref = 10  # x = 0
            rel_c = closed * np.conj(closed[ref])
            rel_q = quad * np.conj(quad[ref])
            phase_err = float(np.max(np.abs(np.angle(rel_c * np.conj(rel_q)))))
            err = max(mod_err, phase_err)
            ratio = complex(np.mean(closed / quad))
            out.append(
                CheckResult(
                    "slit closed form %s slit %s" % (label, slit.value),
                    err < tol,
                    err,
                    tol,
                    "const ratio |r|-1=%.1e arg r=%.1e" % (abs(ratio) - 1.0, cmath.phase(ratio)),
                )
            )
    return out


def check_single_norm(cfg, spec=oracle.DEFAULT_SPEC, tol=1e-8):
    g = SlitGeometry(cfg.b, cfg.x0)
    out = []
    for label, p in _particles(cfg):
        err = abs(oracle.state_norm_sq(diffracted_state(p, g), spec) - 1.0)
        out.append(CheckResult("single-particle norm %s" % label, err < tol, err, tol))
    return out


def _system(cfg):
    g = SlitGeometry(cfg.b, cfg.x0)
    (_, p), (_, q) = _particles(cfg)
    return TwoParticleSystem(diffracted_state(p, g), diffracted_state(q, g))


def check_overlap(cfg, spec=oracle.DEFAULT_SPEC, tol=1e-8):
    sys = _system(cfg)
    quad = oracle.overlap_by_quadrature(sys.psi, sys.phi, spec)
    err = abs(sys.overlap - quad)
    terms, _ = overlap_exponent_terms(sys.psi, sys.phi)
    tscale = max(abs(t) for t in terms)
    pair_err = max(abs(terms[0] - terms[3]), abs(terms[1] - terms[2])) / tscale
    return [
        CheckResult(
            "overlap closed form vs quadrature",
            err < tol,
            err,
            tol,
            "|<psi|phi>|^2=%.10f (quadrature %.10f)" % (sys.overlap_sq, abs(quad) ** 2),
        ),
        CheckResult("overlap terms pairwise equal", pair_err < 1e-12, pair_err, 1e-12),
    ]


def _identical_stats(sys):
    """Statistics for which a state exists, plus expected-error results for the rest."""
    ok, skipped = [], []
    for stat in ALL_STATISTICS:
        try:
            sys.joint_norm(stat)
        except DegenerateFermionStateError as exc:
            skipped.append(
                CheckResult("%s state" % stat.value, True, detail=str(exc), expected_error=True)
            )
        else:
            ok.append(stat)
    return ok, skipped


def expansion_error(x, y, sys, stat):
    """Error of the direct+exchange assembly vs. direct |Psi|^2.

    Scaled by the sum of magnitudes of the assembled terms, the conditioning
    bound of that sum.
    """
    a = joint_density_expanded(x, y, sys, stat)
    b = joint_density(x, y, sys, stat)
    p_dis = distinguishable_density(x, y, sys)
    if stat is Statistics.DISTINGUISHABLE:
        scale = p_dis
    else:
        scale = 2.0 * sys.joint_norm(stat) ** 2 * (p_dis + np.abs(exchange_sum(x, y, sys)))
    return float(np.max(np.abs(a - b) / scale))


def check_expansion(cfg, tol=1e-12, n_points=50, seed=12345):
    sys = _system(cfg)
    rng = np.random.default_rng(seed)
    x = rng.uniform(cfg.y_min, cfg.y_max, n_points)
    y = rng.uniform(cfg.y_min, cfg.y_max, n_points)
    stats, out = _identical_stats(sys)
    for stat in stats:
        err = expansion_error(x, y, sys, stat)
        out.append(CheckResult("exchange assembly vs |Psi|^2 %s" % stat.value, err < tol, err, tol))
    return out


def fixed_pattern_error(y, sys, stat):
    """Error of the x = 0 closed forms vs. the general density, scaled like expansion_error."""
    fast = fixed_detector_pattern(y, sys, [stat]).density[stat]
    general = detection_pattern(0.0, y, sys, [stat]).density[stat]
    p_dis = distinguishable_density(0.0, y, sys)
    if stat is Statistics.DISTINGUISHABLE:
        scale = p_dis
    else:
        scale = 2.0 * sys.joint_norm(stat) ** 2 * (p_dis + np.abs(exchange_sum(0.0, y, sys)))
    return float(np.max(np.abs(fast - general) / scale))


def check_fixed_pattern(cfg, tol=1e-12):
    sys = _system(cfg)
    y = cfg.y_grid()
    stats, out = _identical_stats(sys)
    for stat in stats:
        err = fixed_pattern_error(y, sys, stat)
        out.append(CheckResult("x=0 closed form vs general %s" % stat.value, err < tol, err, tol))
    return out


def check_density_norm(cfg, spec=oracle.DEFAULT_SPEC, tol=1e-6):
    sys = _system(cfg)
    stats, out = _identical_stats(sys)
    for stat in stats:
        err = abs(oracle.density_normalization_2d(sys, stat, spec) - 1.0)
        out.append(CheckResult("2d density norm %s" % stat.value, err < tol, err, tol))
    return out


def overlap_table(cfg):
    """Rows (sigma_bar, formula initial, quoted initial, final, quoted final) at sigma = 1."""
    g = SlitGeometry(cfg.b, cfg.x0)
    p = PacketParams(1.0, cfg.tau_s, cfg.tau_d)
    rows = []
    for sb, init_q, final_q in QUOTED_OVERLAPS:
        sys = TwoParticleSystem(diffracted_state(p, g), diffracted_state(PacketParams(sb, cfg.tau_s, cfg.tau_d), g))
        rows.append((sb, initial_overlap(1.0, sb), init_q, sys.overlap_sq, final_q))
    return rows


CHECKS = (
    check_fourier,
    check_free_norm,
    check_slit_closed_form,
    check_single_norm,
    check_overlap,
    check_expansion,
    check_fixed_pattern,
    check_density_norm,
)


def run_all(cfg):
    results = []
    for check in CHECKS:
        results.extend(check(cfg))
    return results
