"""2x2 complex matrix algebra, free evolution, and M <-> amplitudes.

A "Mat2" is simply a (2, 2) complex128 numpy array.  The transfer matrix
convention is

    M = [[T - Rl*Rr/T, Rr/T],
         [-Rl/T,       1/T ]],

relating plane-wave coefficients on the left of the potential to those on
the right; det M = 1 identically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpectralSingularityError, ZeroTransmissionError

IDENTITY = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
# N = i*sigma2 + sigma3; the coupling matrix of the two-level system.
NMAT = np.array([[1.0, 1.0], [-1.0, -1.0]], dtype=complex)

DEFAULT_SINGULARITY_TOL = 1e-12


def mat2(m11: complex, m12: complex, m21: complex, m22: complex) -> np.ndarray:
    """Build a 2x2 complex matrix from its entries."""
    return np.array([[m11, m12], [m21, m22]], dtype=complex)


def mat2_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of two 2x2 complex matrices."""
    return a @ b


def det2(m: np.ndarray) -> complex:
    """Determinant by direct expansion (no LU roundoff)."""
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def max_abs(m: np.ndarray) -> float:
    """Matrix norm used for error reporting: max absolute entry."""
    return float(np.max(np.abs(m)))


def u0(tau: float) -> np.ndarray:
    """Free evolution operator exp(i*tau*sigma3) = diag(e^{i tau}, e^{-i tau})."""
    phase = np.exp(1j * tau)
    return np.array([[phase, 0.0], [0.0, 1.0 / phase]], dtype=complex)


def u0_inv(tau: float) -> np.ndarray:
    """Inverse of the free evolution operator."""
    return u0(-tau)


@dataclass(frozen=True)
class Amplitudes:
    """Transmission and left/right reflection amplitudes at one wavenumber."""

    T: complex
    Rl: complex
    Rr: complex

    @property
    def abs_T2(self) -> float:
        return float(abs(self.T) ** 2)

    @property
    def abs_Rl2(self) -> float:
        return float(abs(self.Rl) ** 2)

    @property
    def abs_Rr2(self) -> float:
        return float(abs(self.Rr) ** 2)


def amplitudes_from_transfer(m: np.ndarray,
                             singularity_tol: float = DEFAULT_SINGULARITY_TOL) -> Amplitudes:
    """Extract (T, Rl, Rr) from a transfer matrix.

    Raises SpectralSingularityError when |M22| < singularity_tol, which
    signals a pole of T (zero-width resonance of a complex potential).
    """
    m22 = m[1, 1]
    if abs(m22) < singularity_tol:
        raise SpectralSingularityError(
            f"|M22| = {abs(m22):.3e} below tolerance {singularity_tol:.1e}")
    return Amplitudes(T=1.0 / m22, Rl=-m[1, 0] / m22, Rr=m[0, 1] / m22)


def transfer_from_amplitudes(a: Amplitudes) -> np.ndarray:
    """Assemble the transfer matrix from amplitudes; det = 1 by construction."""
    if a.T == 0:
        raise ZeroTransmissionError("T = 0 has no transfer matrix")
    return mat2(a.T - a.Rl * a.Rr / a.T, a.Rr / a.T, -a.Rl / a.T, 1.0 / a.T)
