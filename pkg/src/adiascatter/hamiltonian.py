"""The two-level Hamiltonian, branch-continuous refractive index, and
biorthonormal eigensystem at fixed wavenumber.

The scattering problem at wavenumber k > 0 is encoded in

    H(tau) = -sigma3 + w(tau) * N,      w(tau) = v(tau/k) / (2 k^2),

with tau = k x.  Its eigenvalues are +-n(tau) with n = sqrt(1 - 2w); the
square root is continued along tau starting from n = 1 in the free region
left of the support (the root closer to the previous value is chosen at
each step of a fine precomputed walk, so the cut of the principal branch
introduces no spurious sign flips for complex v).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .controls import Controls, DEFAULT_CONTROLS
from .core import NMAT, SIGMA3
from .errors import (BranchAmbiguityError, DegenerateSpectrumError,
                     NonDifferentiableError)
from .potentials import Potential


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues and biorthonormal right/left eigenvectors at one tau."""

    E_plus: complex
    E_minus: complex
    Psi_plus: np.ndarray
    Psi_minus: np.ndarray
    Phi_plus: np.ndarray
    Phi_minus: np.ndarray


class ScatteringContext:
    """Wavenumber + potential with cached branch tracking for n(tau).

    A context is single-writer while the branch walk is being built; after
    that every method is read-only and safe to call concurrently.  Contexts
    for different k are independent.

    `support_scale` widens truncated supports (used when checking that the
    truncation radius of an infinite-range potential is large enough).
    `use_index_profile=False` forces n to be recovered from v through the
    square root even when the potential carries an analytic index profile
    (used to validate the branch tracking itself).
    """

    def __init__(self, k: float, potential: Potential,
                 controls: Controls = DEFAULT_CONTROLS,
                 support_scale: float = 1.0,
                 use_index_profile: bool = True):
        if not (k > 0) or not math.isfinite(k):
            raise ValueError("wavenumber k must be positive and finite")
        self.k = float(k)
        self.potential = potential
        self.controls = controls
        self.support_scale = float(support_scale)
        x_minus, x_plus = potential.support(self.k, scale=support_scale)
        self.tau_minus = self.k * x_minus
        self.tau_plus = self.k * x_plus
        self._use_index = use_index_profile and potential.index(0.0) is not None
        # jump locations of v (and hence of n), in tau units, support edges included
        self.jumps_tau = tuple(sorted(self.k * b for b in potential.breakpoints
                                      if x_minus <= b <= x_plus))
        self._walk: Optional[tuple] = None  # (taus, signs, log_offsets, first_ambiguous)

    # -- basic fields -------------------------------------------------------

    def w(self, tau):
        """w(tau) = v(tau/k) / (2 k^2); accepts scalars or arrays."""
        v = self.potential.evaluate(np.asarray(tau, dtype=float) / self.k, k=self.k)
        return v / (2.0 * self.k ** 2)

    def hamiltonian(self, tau: float) -> np.ndarray:
        """H(tau) = -sigma3 + w(tau) N; traceless for any w."""
        return -SIGMA3 + self.w(tau) * NMAT

    # -- branch-continuous refractive index ---------------------------------

    def _inside(self, tau):
        return (tau >= self.tau_minus) & (tau <= self.tau_plus)

    def _build_walk(self) -> tuple:
        if self._walk is not None:
            return self._walk
        m = max(self.controls.branch_samples, 9)
        taus = np.linspace(self.tau_minus, self.tau_plus, m)
        # nudge points that coincide with interior jumps: sample just right of them
        principal = np.sqrt(1.0 - 2.0 * np.asarray(self.w(taus), dtype=complex))
        signs = np.ones(m)
        first_ambiguous = -1
        prev = 1.0 + 0j  # free region to the left
        margin = self.controls.branch_margin
        for j in range(m):
            p = principal[j]
            d_plus = abs(p - prev)
            d_minus = abs(p + prev)
            scale = max(abs(p), abs(prev), 1e-300)
            if abs(d_plus - d_minus) < margin * scale and first_ambiguous < 0:
                first_ambiguous = j
            if d_minus < d_plus:
                signs[j] = -1.0
            if abs(p) > 1e-300:
                prev = signs[j] * p
        n_walk = signs * principal
        # continuous branch of ln n along the walk (2*pi winding offsets)
        raw_angle = np.angle(n_walk)
        offsets = np.round((np.unwrap(raw_angle) - raw_angle) / (2.0 * math.pi))
        self._walk = (taus, signs, offsets, first_ambiguous)
        return self._walk

    def _branch_sign(self, tau):
        taus, signs, _, first_ambiguous = self._build_walk()
        idx = np.clip(np.searchsorted(taus, np.asarray(tau, dtype=float)), 0, len(taus) - 1)
        if first_ambiguous >= 0 and np.any(idx >= first_ambiguous):
            t_amb = taus[first_ambiguous]
            raise BranchAmbiguityError(
                f"1 - 2w passes through 0 near tau = {t_amb:.6g}; "
                "the square-root branch cannot be continued")
        return signs[idx]

    def n(self, tau):
        """Branch-continuous n(tau) = sqrt(1 - 2 w(tau)); n = 1 outside support."""
        tau_arr = np.asarray(tau, dtype=float)
        scalar = tau_arr.ndim == 0
        tau_arr = np.atleast_1d(tau_arr)
        out = np.ones(tau_arr.shape, dtype=complex)
        inside = self._inside(tau_arr)
        if np.any(inside):
            ti = tau_arr[inside]
            if self._use_index:
                vals = np.asarray(self.potential.index(ti / self.k), dtype=complex)
            else:
                if self.tau_plus > self.tau_minus:
                    sgn = self._branch_sign(ti)
                else:
                    sgn = 1.0
                vals = sgn * np.sqrt(1.0 - 2.0 * np.asarray(self.w(ti), dtype=complex))
            out[inside] = vals
        return complex(out[0]) if scalar else out

    def log_n(self, tau):
        """ln n(tau) on the same continuous branch as n (0 outside support)."""
        tau_arr = np.atleast_1d(np.asarray(tau, dtype=float))
        scalar = np.ndim(tau) == 0
        vals = np.log(np.atleast_1d(np.asarray(self.n(tau_arr), dtype=complex)))
        inside = self._inside(tau_arr)
        if np.any(inside) and not self._use_index and self.tau_plus > self.tau_minus:
            taus, _, offsets, _ = self._build_walk()
            idx = np.clip(np.searchsorted(taus, tau_arr[inside]), 0, len(taus) - 1)
            vals[inside] = vals[inside] + 2j * math.pi * offsets[idx]
        return complex(vals[0]) if scalar else vals

    # -- derivatives ---------------------------------------------------------

    def _near_jump(self, tau: float, h: float) -> bool:
        return any(abs(tau - bp) <= h for bp in self.jumps_tau)

    def n_dot(self, tau: float) -> complex:
        """dn/dtau at tau; analytic when the potential provides a derivative,
        central finite differences on the branched n otherwise."""
        h = self.controls.fd_step_scale * max(1.0, abs(tau))
        if self._near_jump(tau, h):
            raise NonDifferentiableError(f"n jumps at tau = {tau:.6g}")
        if self._use_index and self.potential.index_derivative(0.0) is not None:
            return complex(self.potential.index_derivative(tau / self.k)) / self.k
        if self.potential.has_derivative:
            nval = self.n(tau)
            if abs(nval) < self.controls.degeneracy_tol:
                raise DegenerateSpectrumError(f"|n| ~ 0 at tau = {tau:.6g}")
            vprime = self.potential.derivative(tau / self.k, k=self.k)
            return -complex(vprime) / (2.0 * self.k ** 3 * nval)
        return complex(self.n(tau + h) - self.n(tau - h)) / (2.0 * h)

    def adiabaticity(self, tau: float) -> float:
        """|n'(tau) / (4 n(tau)^2)|; +inf at jump discontinuities.

        Equals |v'(x)| / (8 |k^2 - v(x)|^{3/2}), the usual condition for the
        validity of the semiclassical approximation.
        """
        try:
            ndot = self.n_dot(tau)
        except NonDifferentiableError:
            return math.inf
        nval = self.n(tau)
        if abs(nval) < self.controls.degeneracy_tol:
            return math.inf
        return float(abs(ndot / (4.0 * nval ** 2)))

    # -- eigensystem ---------------------------------------------------------

    def eigensystem(self, tau: float) -> EigenSystem:
        """Closed-form biorthonormal eigensystem of H(tau).

        Raises DegenerateSpectrumError when |n(tau)| falls below the
        degeneracy tolerance (the closed forms divide by n).
        """
        z = 1.0 - 2.0 * complex(self.w(tau))
        if math.sqrt(abs(z)) < self.controls.degeneracy_tol:
            raise DegenerateSpectrumError(
                f"|n(tau)| < {self.controls.degeneracy_tol:.1e} at tau = {tau:.6g}")
        nval = complex(self.n(tau))
        psi_p = 0.5 * np.array([1.0 - nval, 1.0 + nval], dtype=complex)
        psi_m = 0.5 * np.array([1.0 + nval, 1.0 - nval], dtype=complex)
        nc = np.conj(nval)
        phi_p = (1.0 / (2.0 * nc)) * np.array([nc - 1.0, nc + 1.0], dtype=complex)
        phi_m = (1.0 / (2.0 * nc)) * np.array([nc + 1.0, nc - 1.0], dtype=complex)
        return EigenSystem(E_plus=nval, E_minus=-nval,
                           Psi_plus=psi_p, Psi_minus=psi_m,
                           Phi_plus=phi_p, Phi_minus=phi_m)

    # -- jump bookkeeping (used by the correction machinery) -----------------

    def jump_lognratio(self, tau_jump: float) -> complex:
        """ln(n(tau+)/n(tau-)) across a declared jump, principal branch of the
        ratio (valid while the mollified path of n does not wind around 0)."""
        h = 1e-9 * max(1.0, abs(tau_jump))
        n_left = complex(self.n(tau_jump - h))
        n_right = complex(self.n(tau_jump + h))
        if min(abs(n_left), abs(n_right)) < self.controls.degeneracy_tol:
            raise DegenerateSpectrumError(f"n ~ 0 at jump tau = {tau_jump:.6g}")
        return complex(np.log(n_right / n_left))
