"""Exception types raised by the simulator."""


class TwoSlitError(Exception):
    """Base class for all simulator errors."""


class InvalidParameterError(TwoSlitError, ValueError):
    """A physical or numerical parameter is outside its admissible range."""


class NonNormalizableStateError(TwoSlitError, ValueError):
    """The post-slit beam has no finite L2 norm (alpha <= 0)."""


class DegenerateFermionStateError(TwoSlitError, ArithmeticError):
    """Antisymmetrized state of two (almost) identical orbitals.

    The joint normalization 1/sqrt(2 - 2|<psi|phi>|^2) is 0/0 in the limit.
    """

    def __init__(self, overlap_sq):
        self.overlap_sq = float(overlap_sq)
        super().__init__(
            "fermion state is degenerate: |<psi|phi>|^2 = %.17g "
            "(1 - |<psi|phi>|^2 = %.3e)" % (self.overlap_sq, 1.0 - self.overlap_sq)
        )


class ConsistencyError(TwoSlitError, ArithmeticError):
    """An internal cross-check produced an impossible value."""


class ConvergenceError(TwoSlitError, RuntimeError):
    """Adaptive quadrature ran out of subdivisions.

    Carries the best available estimate and its error bound.
    """

    def __init__(self, estimate, error, message="quadrature did not converge"):
        self.estimate = estimate
        self.error = error
        super().__init__("%s (estimate=%r, error=%.3e)" % (message, estimate, error))
