"""Transfer matrices of complex 1D scattering potentials.

Exact two-level evolution, the semiclassical (adiabatic) zeroth order, and
arbitrary-order adiabatic-series corrections, with cross-validation between
the three routes.
"""

from .controls import Controls, DEFAULT_CONTROLS
from .core import (Amplitudes, IDENTITY, NMAT, SIGMA1, SIGMA2, SIGMA3,
                   amplitudes_from_transfer, det2, mat2, mat2_mul, max_abs,
                   transfer_from_amplitudes, u0, u0_inv)
from .corrections import (CorrectionTerm, SeriesResult, a1_exp_pot_closed_form,
                          a_ell_ibp, a_ell_nested, correction_terms_volterra,
                          exp_pot_first_order_amplitudes, h_tilde,
                          h_tilde_general, transfer_matrix_order_n,
                          u_tilde_term_volterra, volterra_u_tilde_terms)
from .errors import (AdiaScatterError, BranchAmbiguityError, ConfigError,
                     DegenerateSpectrumError, MalformedFileError,
                     NonDifferentiableError, QuadratureFailureError,
                     SpectralSingularityError, StepUnderflowError,
                     ToleranceNotMetError, TruncationTooSmallError,
                     UnsupportedOrderError, ZeroTransmissionError)
from .exact import (EvolutionResult, TransferResult, evolve, expm_step,
                    oracle_rectangular_barrier, transfer_matrix_exact)
from .hamiltonian import EigenSystem, ScatteringContext
from .potentials import (ExpIndexProfile, FreePotential, GaussianPotential,
                         Potential, RectangularBarrier, SampledPotential,
                         load_sampled, make_potential)
from .semiclassical import (PhaseCache, adiabatic_evolution, build_phase_cache,
                            eta, geometric_phase_factor,
                            transfer_matrix_semiclassical)

__version__ = "0.1.0"
