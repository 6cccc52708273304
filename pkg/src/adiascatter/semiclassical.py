"""Zeroth-order layer: phase integrals, geometric phase, adiabatic evolution
operator, and the semiclassical transfer matrix.

Phases are accumulated from the finite left support edge (where n = 1), so

    eta(tau)   = int_{tau-}^{tau} [n - 1]        (equals the integral from
                 -infinity: the integrand vanishes left of the support),
    delta(tau) = int_{tau-}^{tau} n,

and the zeroth-order transfer matrix is diag(e^{i eta(inf)}, e^{-i eta(inf)}),
which is reflectionless with unit determinant by construction.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .controls import Controls, DEFAULT_CONTROLS
from .core import IDENTITY, mat2, u0
from .errors import DegenerateSpectrumError, QuadratureFailureError
from .hamiltonian import ScatteringContext
from .quadrature import PanelGrid, gl_rule, segment_edges

_MAX_REFINES = 10


class PhaseCache:
    """Phase-resolved node grid over the support with cumulative eta/delta.

    Built once per (potential, k); read-only afterwards and safe to share.
    Panels split at every declared jump of the potential and are capped so
    the fast phase 2|n| * dtau advances at most `phase_cap` per panel; the
    grid is refined (panels bisected) until the end-point phases converge to
    the quadrature tolerance.  Correction integrals reuse these nodes.
    """

    def __init__(self, ctx: ScatteringContext, controls: Optional[Controls] = None,
                 _grid: Optional[PanelGrid] = None):
        self.ctx = ctx
        self.controls = controls or ctx.controls
        self.empty = not (ctx.tau_plus > ctx.tau_minus)
        if self.empty:
            self.grid = None
            self.n_nodes = None
            self._refined_cache = None
            return
        if _grid is None:
            grid = self._initial_grid()
            self._fill(grid)
            tol = self.controls.tol_quad
            for _ in range(_MAX_REFINES):
                finer = PhaseCache(ctx, self.controls, _grid=self.grid.refined())
                drift = max(abs(finer.eta_total - self.eta_total),
                            abs(finer.delta_total - self.delta_total))
                scale = max(1.0, abs(self.delta_total))
                if drift <= tol * scale:
                    self._adopt(finer)
                    return
                self._adopt(finer)
            raise QuadratureFailureError(
                f"phase integrals did not converge to {tol:.1e}")
        else:
            self._fill(_grid)

    def _initial_grid(self) -> PanelGrid:
        ctx = self.ctx
        c = self.controls
        span = ctx.tau_plus - ctx.tau_minus
        probe = np.linspace(ctx.tau_minus, ctx.tau_plus, 257)
        rate = 2.0 * float(np.max(np.abs(ctx.n(probe)))) + 1e-12
        max_len = min(c.phase_cap / rate, span / 4.0)
        edges = segment_edges(ctx.tau_minus, ctx.tau_plus, ctx.jumps_tau, max_len)
        return PanelGrid(edges, c.panel_nodes)

    def _fill(self, grid: PanelGrid) -> None:
        self.grid = grid
        self.n_nodes = np.asarray(self.ctx.n(grid.nodes.ravel()),
                                  dtype=complex).reshape(grid.nodes.shape)
        self._delta_edges = grid.cumulative_edges(self.n_nodes)
        self._eta_edges = grid.cumulative_edges(self.n_nodes - 1.0)
        self.delta_nodes = grid.cumulative_nodes(self.n_nodes)
        self.eta_nodes = grid.cumulative_nodes(self.n_nodes - 1.0)
        self.delta_total = complex(self._delta_edges[-1])
        self.eta_total = complex(self._eta_edges[-1])
        self._refined_cache: Optional[PhaseCache] = None

    def _adopt(self, other: "PhaseCache") -> None:
        self.grid = other.grid
        self.n_nodes = other.n_nodes
        self._delta_edges = other._delta_edges
        self._eta_edges = other._eta_edges
        self.delta_nodes = other.delta_nodes
        self.eta_nodes = other.eta_nodes
        self.delta_total = other.delta_total
        self.eta_total = other.eta_total
        self._refined_cache = None

    def refined(self) -> "PhaseCache":
        """Sibling cache with every panel bisected (for error estimates)."""
        if self.empty:
            return self
        if self._refined_cache is None:
            self._refined_cache = PhaseCache(self.ctx, self.controls,
                                             _grid=self.grid.refined())
        return self._refined_cache

    # -- queries --------------------------------------------------------------

    def _cumulative_at(self, tau, edge_cum: np.ndarray, offset: float):
        """Cumulative integral of (n - offset) from tau- to arbitrary tau."""
        ctx = self.ctx
        tau_arr = np.atleast_1d(np.asarray(tau, dtype=float))
        out = np.empty(tau_arr.shape, dtype=complex)
        below = tau_arr <= ctx.tau_minus
        above = tau_arr >= ctx.tau_plus
        out[below] = 0.0
        out[above] = edge_cum[-1]
        mid = ~(below | above)
        if np.any(mid):
            tm = tau_arr[mid]
            edges = self.grid.edges
            idx = np.clip(np.searchsorted(edges, tm, side="right") - 1,
                          0, self.grid.npanels - 1)
            a = edges[idx]
            xi, wi = gl_rule(self.grid.m)
            half = 0.5 * (tm - a)
            sub_nodes = (a + half)[:, None] + half[:, None] * xi[None, :]
            n_sub = np.asarray(ctx.n(sub_nodes.ravel()),
                               dtype=complex).reshape(sub_nodes.shape)
            partial = np.sum((n_sub - offset) * wi[None, :], axis=1) * half
            out[mid] = edge_cum[idx] + partial
        return complex(out[0]) if np.ndim(tau) == 0 else out

    def eta(self, tau):
        """eta(tau) = int_{-inf}^{tau} [n - 1]; constant outside the support."""
        if self.empty:
            return 0j if np.ndim(tau) == 0 else np.zeros(np.shape(tau), complex)
        return self._cumulative_at(tau, self._eta_edges, 1.0)

    def delta(self, tau):
        """delta(tau) = int_{tau-}^{tau} n; n = 1 extends it outside the support."""
        tau_arr = np.asarray(tau, dtype=float)
        if self.empty:
            base = tau_arr - self.ctx.tau_minus
            return complex(base) if np.ndim(tau) == 0 else base.astype(complex)
        clipped = np.clip(tau_arr, self.ctx.tau_minus, self.ctx.tau_plus)
        free_part = tau_arr - clipped
        return self._cumulative_at(clipped, self._delta_edges, 0.0) + free_part

    def delta_between(self, tau0, tau1):
        return self.delta(tau1) - self.delta(tau0)


def build_phase_cache(ctx: ScatteringContext,
                      controls: Optional[Controls] = None) -> PhaseCache:
    return PhaseCache(ctx, controls)


def eta(ctx: ScatteringContext, tau, cache: Optional[PhaseCache] = None):
    """Phase integral of n - 1 up to tau (adaptive quadrature, cached)."""
    cache = cache or build_phase_cache(ctx)
    return cache.eta(tau)


def geometric_phase_factor(ctx: ScatteringContext, tau0: float, tau: float) -> complex:
    """e^{i gamma} = sqrt(n(tau0)/n(tau)) on the branch continued along tau."""
    for t in (tau0, tau):
        if abs(ctx.n(t)) < ctx.controls.degeneracy_tol:
            raise DegenerateSpectrumError(f"|n| ~ 0 at tau = {t:.6g}")
    return complex(np.exp(-0.5 * (ctx.log_n(tau) - ctx.log_n(tau0))))


def adiabatic_evolution(ctx: ScatteringContext, tau0: float, tau: float,
                        cache: Optional[PhaseCache] = None) -> np.ndarray:
    """Adiabatic evolution operator

        U0(tau, tau0) = sum_a e^{i[delta_a + gamma_a]} |Psi_a(tau)><Phi_a(tau0)|

    with dynamical phases delta_pm = -int E_pm = -+ delta(tau0 -> tau) and the
    closed-form geometric factor sqrt(n(tau0)/n(tau)) for both branches.
    """
    cache = cache or build_phase_cache(ctx)
    es_t = ctx.eigensystem(tau)
    es_0 = ctx.eigensystem(tau0)
    d = cache.delta_between(tau0, tau)
    g = geometric_phase_factor(ctx, tau0, tau)
    proj_p = np.outer(es_t.Psi_plus, np.conj(es_0.Phi_plus))
    proj_m = np.outer(es_t.Psi_minus, np.conj(es_0.Phi_minus))
    return g * (np.exp(-1j * d) * proj_p + np.exp(1j * d) * proj_m)


def transfer_matrix_semiclassical(ctx: ScatteringContext,
                                  cache: Optional[PhaseCache] = None) -> np.ndarray:
    """Zeroth-order M = diag(e^{i eta(inf)}, e^{-i eta(inf)}): reflectionless
    with det = 1 exactly."""
    cache = cache or build_phase_cache(ctx)
    eta_inf = cache.eta_total if not cache.empty else 0j
    phase = np.exp(1j * eta_inf)
    return mat2(phase, 0.0, 0.0, 1.0 / phase)
