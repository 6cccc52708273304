"""Reference computation of the evolution operator U(tau+, tau-) by
time-ordered numerical integration, the exact transfer matrix, and the
independent plane-wave matching oracle for the rectangular barrier.

dU/dtau = -i H(tau) U with traceless H, so det U = 1 identically; the
numerical det drift is used as a cheap a-posteriori error signal.  Two
steppers are available: adaptive DOP853 on the complex 2x2 system ("rk")
and a second-order midpoint-exponential stepper ("magnus") that uses the
closed form of exp(-i h H) for constant traceless H.  Integration never
straddles a declared jump of the potential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from .controls import Controls, DEFAULT_CONTROLS
from .core import IDENTITY, det2, max_abs, mat2, u0, u0_inv, transfer_from_amplitudes, Amplitudes
from .errors import (DegenerateSpectrumError, StepUnderflowError,
                     ToleranceNotMetError, TruncationTooSmallError)
from .hamiltonian import ScatteringContext
from .potentials import Potential, SampledPotential


@dataclass(frozen=True)
class EvolutionResult:
    """U(tau_to, tau_from) with integration metadata."""

    U: np.ndarray
    steps: int
    error_estimate: float


@dataclass(frozen=True)
class TransferResult:
    """Exact transfer matrix with a Richardson-style error estimate."""

    M: np.ndarray
    error_estimate: float
    steps: int


def expm_step(H: np.ndarray, h: float) -> np.ndarray:
    """exp(-i h H) for traceless 2x2 H via Cayley-Hamilton.

    With mu^2 = -det H (= n^2 here):  exp(-i h H) = cos(h mu) I
    - i sin(h mu)/mu * H; both factors are even in mu, so the branch of the
    square root is irrelevant.
    """
    mu2 = -det2(H)
    mu = np.sqrt(mu2)
    z = h * mu
    if abs(z) > 1e-8:
        sinc = np.sin(z) / z
    else:
        sinc = 1.0 - z * z / 6.0 + z ** 4 / 120.0
    return np.cos(z) * IDENTITY - 1j * h * sinc * H


def _segments(ctx: ScatteringContext, a: float, b: float) -> list[tuple[float, float]]:
    cuts = [a] + [t for t in ctx.jumps_tau if a < t < b] + [b]
    return [(lo, hi) for lo, hi in zip(cuts[:-1], cuts[1:]) if hi > lo]


def _max_step(ctx: ScatteringContext) -> float:
    if isinstance(ctx.potential, SampledPotential):
        return ctx.k * ctx.potential.min_spacing
    return math.inf


def _evolve_rk(ctx: ScatteringContext, a: float, b: float,
               controls: Controls) -> tuple[np.ndarray, int]:
    def rhs(t, y):
        return (-1j * ctx.hamiltonian(t) @ y.reshape(2, 2)).ravel()

    U = IDENTITY.copy()
    steps = 0
    max_step = _max_step(ctx)
    for lo, hi in _segments(ctx, a, b):
        sol = solve_ivp(rhs, (lo, hi), U.ravel().astype(complex), method="DOP853",
                        rtol=controls.tol_ode_rel, atol=controls.tol_ode_abs,
                        max_step=max_step, dense_output=False)
        if not sol.success:
            msg = (sol.message or "").lower()
            if "step size" in msg or "smaller than" in msg:
                raise StepUnderflowError(sol.message)
            raise ToleranceNotMetError(sol.message)
        U = sol.y[:, -1].reshape(2, 2)
        steps += sol.t.size
    return U, steps


def _evolve_magnus(ctx: ScatteringContext, a: float, b: float,
                   controls: Controls) -> tuple[np.ndarray, int]:
    """Midpoint-exponential stepper with step halving until convergence."""
    U = IDENTITY.copy()
    steps = 0
    for lo, hi in _segments(ctx, a, b):
        span = hi - lo
        probe = np.linspace(lo, hi, 65)
        rate = float(np.max(np.abs(np.sqrt(1.0 - 2.0 * np.asarray(ctx.w(probe),
                                                                  dtype=complex)))))
        nsteps = max(8, math.ceil(span * max(1.0, rate) * 8.0))
        prev = None
        for _ in range(20):
            h = span / nsteps
            mids = lo + (np.arange(nsteps) + 0.5) * h
            ws = np.asarray(ctx.w(mids), dtype=complex)
            useg = IDENTITY.copy()
            for wmid in ws:
                H = mat2(wmid - 1.0, wmid, -wmid, 1.0 - wmid)
                useg = expm_step(H, h) @ useg
            if prev is not None:
                err = max_abs(useg - prev)
                if err <= max(controls.tol_ode_rel * max_abs(useg),
                              controls.tol_ode_abs):
                    # second order: one more Richardson-extrapolated factor
                    useg = useg + (useg - prev) / 3.0
                    break
            prev = useg
            nsteps *= 2
        else:
            raise ToleranceNotMetError(
                f"magnus stepper did not converge on [{lo:.4g}, {hi:.4g}]")
        U = useg @ U
        steps += nsteps
    return U, steps


def evolve(ctx: ScatteringContext, tau_from: float, tau_to: float,
           controls: Optional[Controls] = None) -> EvolutionResult:
    """Time-ordered evolution U(tau_to, tau_from), dU/dtau = -i H(tau) U.

    The free stretches outside the potential's support are composed
    analytically (U is exactly u0 there).
    """
    controls = controls or ctx.controls
    if not (tau_from <= tau_to):
        raise ValueError("tau_from must not exceed tau_to")
    if tau_from == tau_to:
        return EvolutionResult(IDENTITY.copy(), 0, 0.0)
    lo = max(tau_from, ctx.tau_minus)
    hi = min(tau_to, ctx.tau_plus)
    if hi <= lo:  # entirely in the free region
        return EvolutionResult(u0(tau_to - tau_from), 0, 0.0)
    if controls.ode_method == "magnus":
        core, steps = _evolve_magnus(ctx, lo, hi, controls)
    else:
        core, steps = _evolve_rk(ctx, lo, hi, controls)
    U = u0(tau_to - hi) @ core @ u0(lo - tau_from)
    est = max(abs(det2(U) - 1.0), controls.tol_ode_abs)
    return EvolutionResult(U, steps, float(est))


def _transfer_once(ctx: ScatteringContext, controls: Controls) -> tuple[np.ndarray, int]:
    res = evolve(ctx, ctx.tau_minus, ctx.tau_plus, controls)
    M = u0_inv(ctx.tau_plus) @ res.U @ u0(ctx.tau_minus)
    return M, res.steps


def transfer_matrix_exact(ctx: ScatteringContext,
                          controls: Optional[Controls] = None,
                          estimate: bool = True) -> TransferResult:
    """M = U0(tau+)^{-1} U(tau+, tau-) U0(tau-) with error estimate.

    With `estimate` the problem is re-solved at a 4x tighter tolerance (the
    returned M is the tighter one, so halving the tolerance again moves M
    by less than the reported estimate); without it the det drift is
    reported.  For truncated supports the truncation radius is doubled
    until M stabilizes.
    """
    controls = controls or ctx.controls
    if not (ctx.tau_plus > ctx.tau_minus):
        return TransferResult(IDENTITY.copy(), 0.0, 0)

    def solve_at(scale: float) -> tuple[np.ndarray, float, int]:
        c = ctx if scale == 1.0 else ScatteringContext(
            ctx.k, ctx.potential, controls, support_scale=scale,
            use_index_profile=ctx._use_index)
        M_a, s_a = _transfer_once(c, controls)
        if not estimate:
            return M_a, float(abs(det2(M_a) - 1.0)), s_a
        tight = controls.with_(tol_ode_rel=max(controls.tol_ode_rel / 4.0, 1e-13),
                               tol_ode_abs=max(controls.tol_ode_abs / 4.0, 1e-14))
        M_b, s_b = _transfer_once(c, tight)
        est = 2.0 * max_abs(M_b - M_a) + abs(det2(M_b) - 1.0)
        return M_b, float(est), s_a + s_b

    M, est, steps = solve_at(1.0)
    if ctx.potential.truncated:
        trunc_tol = max(50.0 * controls.tol_ode_rel, 1e-11)
        scale = 2.0
        for _ in range(controls.max_truncation_doublings):
            M2, est2, steps2 = solve_at(scale)
            steps += steps2
            if max_abs(M2 - M) <= trunc_tol * max(1.0, max_abs(M2)):
                return TransferResult(M2, max(est, est2), steps)
            M, est = M2, est2
            scale *= 2.0
        raise TruncationTooSmallError(
            "transfer matrix keeps changing as the truncation radius grows")
    return TransferResult(M, est, steps)


def oracle_rectangular_barrier(v0: complex, k: float, L: float) -> np.ndarray:
    """Transfer matrix of the barrier v0 on (0, L) by plane-wave matching.

    Solves the 4x4 continuity systems at x = 0 and x = L for left and right
    incidence with interior wavenumber kappa = k n; fully independent of the
    two-level evolution route.  det M = 1 by construction.
    """
    if k <= 0 or L <= 0:
        raise ValueError("k and L must be positive")
    n_in = np.sqrt(1.0 - complex(v0) / k ** 2)
    kappa = k * n_in
    if abs(kappa) < 1e-12 * k:
        raise DegenerateSpectrumError("interior wavenumber ~ 0 in the barrier")
    E = np.exp(1j * kappa * L)
    ekL = np.exp(1j * k * L)

    # left incidence: unknowns (r, A, B, t)
    lhs = np.array([
        [-1.0, 1.0, 1.0, 0.0],
        [k, kappa, -kappa, 0.0],
        [0.0, E, 1.0 / E, -ekL],
        [0.0, kappa * E, -kappa / E, -k * ekL],
    ], dtype=complex)
    rhs = np.array([1.0, k, 0.0, 0.0], dtype=complex)
    r, _, _, t = np.linalg.solve(lhs, rhs)

    # right incidence: unknowns (rp, C, D, tp)
    lhs_r = np.array([
        [0.0, 1.0, 1.0, -1.0],
        [0.0, kappa, -kappa, k],
        [-ekL, E, 1.0 / E, 0.0],
        [-k * ekL, kappa * E, -kappa / E, 0.0],
    ], dtype=complex)
    rhs_r = np.array([0.0, 0.0, 1.0 / ekL, -k / ekL], dtype=complex)
    rp = np.linalg.solve(lhs_r, rhs_r)[0]

    return transfer_from_amplitudes(Amplitudes(T=complex(t), Rl=complex(r),
                                               Rr=complex(rp)))
