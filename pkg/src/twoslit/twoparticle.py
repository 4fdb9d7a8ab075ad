"""
Two-particle states behind the double slit and their joint detection densities.

Particle 1 is in the diffracted state psi (mode width sigma), particle 2 in
phi (mode width sigma_bar). Distinguishable pairs are in the product state;
identical pairs are (anti)symmetrized,

    Psi(x, y) = N_Psi (psi(x) phi(y) +/- psi(y) phi(x)),
    N_Psi     = (2 +/- 2 |<psi|phi>|^2)^(-1/2),

with the upper sign for bosons. Densities are in um^-2.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError, DegenerateFermionStateError, InvalidParameterError
from .slit import DiffractedState, Slit, diffracted_state
from .wavepacket import PacketParams

FERMION_DEGENERACY_TOL = 1e-12
NEGATIVE_ROUNDOFF_TOL = 1e-14
# cancellation in direct +/- exchange assembly: roundoff scales with the summed magnitudes
NEGATIVE_ROUNDOFF_REL = 1e-12


class Statistics(str, enum.Enum):
    DISTINGUISHABLE = "distinguishable"
    BOSON = "boson"
    FERMION = "fermion"

    @property
    def sign(self):
        """Exchange sign: +1 bosons, -1 fermions, 0 for distinguishable pairs."""
        return {"distinguishable": 0, "boson": 1, "fermion": -1}[self.value]

    @property
    def column(self):
        return {"distinguishable": "P_dist", "boson": "P_boson", "fermion": "P_fermion"}[
            self.value
        ]

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        aliases = {"dist": cls.DISTINGUISHABLE, "bos": cls.BOSON, "ferm": cls.FERMION}
        key = str(name).strip().lower()
        for alias, stat in aliases.items():
            if key == stat.value or key == alias or key == stat.column.lower():
                return stat
        raise InvalidParameterError("unknown statistics %r" % (name,))


ALL_STATISTICS = (Statistics.DISTINGUISHABLE, Statistics.BOSON, Statistics.FERMION)


def overlap_exponent_terms(psi, phi):
    """The four exponentials of the closed-form overlap and the quadratic coefficient.

    Returns ``(terms, a)`` where ``a = (alpha + alpha_bar) + i (beta - beta_bar)``
    and ``terms`` lists the AA-, BA-, AB- and BB-type exponentials in that order.
    Terms 1 and 4 (and 2 and 3) are equal because their squared arguments are.
    """
    c, cb = psi.coeffs.for_slit(Slit.A), phi.coeffs.for_slit(Slit.A)
    a = complex(c.alpha + cb.alpha, c.beta - cb.beta)
    d, db, g, gb = c.delta, cb.delta, c.gamma, cb.gamma
    args = (
        complex(d + db, -(g - gb)),
        complex(d - db, -(g + gb)),
        complex(db - d, g + gb),
        complex(-(d + db), g - gb),
    )
    return [np.exp(z * z / (4.0 * a)) for z in args], a


def pair_overlap(psi, phi):
    """Closed-form overlap <psi|phi> = int psi*(x) phi(x) dx of two diffracted states."""
    terms, a = overlap_exponent_terms(psi, phi)
    scale = np.conj(psi.coeffs.prefactor) * phi.coeffs.prefactor * psi.norm * phi.norm
    return complex(scale * np.sqrt(np.pi / a) * sum(terms))


def initial_overlap(sigma, sigma_bar):
    """|<psi|phi>|^2 of the two free packets before the slits, 2 s sb / (s^2 + sb^2)."""
    if not (sigma > 0 and sigma_bar > 0):
        raise InvalidParameterError("mode widths must be positive")
    return 2.0 * sigma * sigma_bar / (sigma**2 + sigma_bar**2)


def joint_norm(overlap_sq, stat):
    """Joint normalization N_Psi for the given statistics."""
    stat = Statistics(stat)
    o = float(overlap_sq)
    if not (-FERMION_DEGENERACY_TOL <= o <= 1.0 + FERMION_DEGENERACY_TOL):
        raise InvalidParameterError("overlap_sq must lie in [0, 1], got %r" % (o,))
    o = min(max(o, 0.0), 1.0)
    if stat is Statistics.DISTINGUISHABLE:
        return 1.0
    if stat is Statistics.FERMION and 1.0 - o < FERMION_DEGENERACY_TOL:
        raise DegenerateFermionStateError(o)
    return 1.0 / np.sqrt(2.0 + 2.0 * stat.sign * o)


@dataclass(frozen=True)
class TwoParticleSystem:
    """A pair of normalized diffracted states and their overlap."""

    psi: DiffractedState
    phi: DiffractedState
    overlap: complex = field(default=None)

    def __post_init__(self):
        if self.overlap is None:
            object.__setattr__(self, "overlap", pair_overlap(self.psi, self.phi))

    @property
    def overlap_sq(self):
        return abs(self.overlap) ** 2

    def joint_norm(self, stat):
        return joint_norm(self.overlap_sq, stat)

    def swapped(self):
        """Same pair with the particle labels exchanged."""
        return TwoParticleSystem(self.phi, self.psi, np.conj(self.overlap))


def two_particle_system(p_psi, p_phi, geometry):
    """Build the system for two packets sent through the same pair of slits."""
    return TwoParticleSystem(diffracted_state(p_psi, geometry), diffracted_state(p_phi, geometry))


def width_pair(sigma, sigma_bar, geometry, tau_s, tau_d):
    """Convenience wrapper: both particles share flight times, differ in mode width."""
    return two_particle_system(
        PacketParams(sigma, tau_s, tau_d), PacketParams(sigma_bar, tau_s, tau_d), geometry
    )


def _clamp(p, scale=0.0):
    """Zero roundoff negatives; anything below -max(1e-14, 1e-12 * scale) is an error."""
    p = np.asarray(p, dtype=float)
    floor = np.maximum(NEGATIVE_ROUNDOFF_TOL, NEGATIVE_ROUNDOFF_REL * np.asarray(scale))
    if np.any(p < -floor):
        raise ConsistencyError("negative joint density %.3e" % np.min(p))
    return np.where(p < 0.0, 0.0, p)


def joint_density(x, y, sys, stat):
    """Joint detection density P(x, y) by direct expansion of the pair amplitude.

    Broadcasts over ``x`` and ``y``.
    """
    stat = Statistics(stat)
    n = sys.joint_norm(stat)
    px, py = sys.psi(x), sys.psi(y)
    fx, fy = sys.phi(x), sys.phi(y)
    direct, swapped = px * fy, py * fx
    if stat is Statistics.DISTINGUISHABLE:
        return 0.5 * np.abs(direct) ** 2 + 0.5 * np.abs(swapped) ** 2
    return n * n * np.abs(direct + stat.sign * swapped) ** 2


def exchange_sum(x, y, sys):
    """Sum over slit labels of Re(psi*_i1(x) phi*_i2(y) psi_i3(y) phi_i4(x)); sixteen terms."""
    psi, phi = sys.psi, sys.phi
    total = 0.0
    for i1, i2, i3, i4 in itertools.product(Slit, repeat=4):
        total = total + np.real(
            np.conj(psi.beam(x, i1)) * np.conj(phi.beam(y, i2)) * psi.beam(y, i3) * phi.beam(x, i4)
        )
    return total


def distinguishable_density(x, y, sys):
    return 0.5 * np.abs(sys.psi(x) * sys.phi(y)) ** 2 + 0.5 * np.abs(sys.psi(y) * sys.phi(x)) ** 2


def joint_density_expanded(x, y, sys, stat):
    """Joint density assembled as direct plus exchange terms.

    2 N^2 P_dis +/- 2 N^2 * exchange_sum; equals :func:`joint_density`.
    """
    stat = Statistics(stat)
    p_dis = distinguishable_density(x, y, sys)
    if stat is Statistics.DISTINGUISHABLE:
        return p_dis
    n2 = sys.joint_norm(stat) ** 2
    exch = exchange_sum(x, y, sys)
    return _clamp(2.0 * n2 * p_dis + stat.sign * 2.0 * n2 * exch, 2.0 * n2 * (p_dis + np.abs(exch)))


@dataclass(frozen=True)
class DetectionPattern:
    """Joint density P(x_fixed, y) sampled on ``y_grid``, keyed by statistics."""

    x_fixed: float
    y_grid: np.ndarray
    density: dict

    @property
    def statistics(self):
        return tuple(self.density)


def _as_stats(stats):
    if isinstance(stats, (str, Statistics)):
        return (Statistics.parse(stats),)
    return tuple(Statistics.parse(s) for s in stats)


def fixed_detector_pattern(y_grid, sys, stats=ALL_STATISTICS):
    """Pattern with one detector at x = 0, from the specialised x = 0 closed forms."""
    stats = _as_stats(stats)
    y = np.asarray(y_grid, dtype=float)
    c, cb = sys.psi.coeffs.for_slit(Slit.A), sys.phi.coeffs.for_slit(Slit.A)
    al, be, ga, de = c.alpha, c.beta, c.gamma, c.delta
    alb, beb, gab, deb = cb.alpha, cb.beta, cb.gamma, cb.delta
    scale = (
        abs(c.prefactor) ** 2 * abs(cb.prefactor) ** 2 * sys.psi.norm**2 * sys.phi.norm**2
    )

    ea, eab = np.exp(-2.0 * al * y * y), np.exp(-2.0 * alb * y * y)
    p_dis = scale * (
        2.0 * ea * (np.exp(-2.0 * de * y) + np.exp(2.0 * de * y))
        + 2.0 * eab * (np.exp(-2.0 * deb * y) + np.exp(2.0 * deb * y))
        + 4.0 * ea * np.cos(2.0 * ga * y)
        + 4.0 * eab * np.cos(2.0 * gab * y)
    )

    q = (be - beb) * y * y
    exch = (
        scale
        * np.exp(-(al + alb) * y * y)
        * (
            4.0 * np.exp(-(de + deb) * y) * np.cos(q + (gab - ga) * y)
            + 4.0 * np.exp((de + deb) * y) * np.cos(q - (gab - ga) * y)
            + 4.0 * np.exp((de - deb) * y) * np.cos(q + (gab + ga) * y)
            + 4.0 * np.exp(-(de - deb) * y) * np.cos(q - (gab + ga) * y)
        )
    )

    density = {}
    for stat in stats:
        if stat is Statistics.DISTINGUISHABLE:
            density[stat] = p_dis
        else:
            n2 = sys.joint_norm(stat) ** 2
            density[stat] = _clamp(
                2.0 * n2 * p_dis + stat.sign * 2.0 * n2 * exch, 2.0 * n2 * (p_dis + np.abs(exch))
            )
    return DetectionPattern(x_fixed=0.0, y_grid=y, density=density)


def detection_pattern(x_fixed, y_grid, sys, stats=ALL_STATISTICS):
    """Pattern with one detector at ``x_fixed`` by direct expansion (any x_fixed)."""
    stats = _as_stats(stats)
    y = np.asarray(y_grid, dtype=float)
    density = {stat: joint_density(float(x_fixed), y, sys, stat) for stat in stats}
    return DetectionPattern(x_fixed=float(x_fixed), y_grid=y, density=density)
