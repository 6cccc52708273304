"""Exception types shared by all modules."""


class AdiaScatterError(Exception):
    """Base class for all errors raised by this package."""


class SpectralSingularityError(AdiaScatterError):
    """|M22| fell below tolerance: T = 1/M22 has a pole at this wavenumber."""


class ZeroTransmissionError(AdiaScatterError):
    """Transfer matrix requested for amplitudes with T = 0."""


class BranchAmbiguityError(AdiaScatterError):
    """1 - 2w(tau) passed through 0 and continuity cannot pick the root."""


class DegenerateSpectrumError(AdiaScatterError):
    """|n(tau)| below tolerance: the two-level eigensystem is degenerate."""


class NonDifferentiableError(AdiaScatterError):
    """Derivative of the potential requested at a jump discontinuity."""


class StepUnderflowError(AdiaScatterError):
    """ODE integrator step size collapsed (stiff or singular region)."""


class ToleranceNotMetError(AdiaScatterError):
    """Integrator finished without meeting the requested tolerance."""


class TruncationTooSmallError(AdiaScatterError):
    """Enlarging the truncation radius still changes the transfer matrix."""


class QuadratureFailureError(AdiaScatterError):
    """Adaptive quadrature did not converge to the requested tolerance."""


class UnsupportedOrderError(AdiaScatterError):
    """Correction order not available for the requested method/potential."""


class MalformedFileError(AdiaScatterError):
    """Sampled-potential file violates the documented format."""


class ConfigError(AdiaScatterError):
    """Invalid run configuration (CLI exit code 2)."""
