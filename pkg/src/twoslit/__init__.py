"""Two-particle two-slit coincidence patterns in the Gaussian-slit approximation."""

from .errors import (
    ConsistencyError,
    ConvergenceError,
    DegenerateFermionStateError,
    InvalidParameterError,
    NonNormalizableStateError,
    TwoSlitError,
)
from .slit import (
    BeamCoefficients,
    DiffractedState,
    Slit,
    SlitGeometry,
    diffracted_state,
    propagator_kernel,
    single_particle_norm,
    slit_amplitude,
    slit_beam_coefficients,
)
from .twoparticle import (
    ALL_STATISTICS,
    DetectionPattern,
    Statistics,
    TwoParticleSystem,
    detection_pattern,
    fixed_detector_pattern,
    initial_overlap,
    joint_density,
    joint_density_expanded,
    joint_norm,
    pair_overlap,
    two_particle_system,
)
from .wavepacket import (
    FreeEvolutionCoefficients,
    PacketParams,
    free_evolution_coefficients,
    free_packet,
    mode_amplitude,
)

__version__ = "0.1.0"
