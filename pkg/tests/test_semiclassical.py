import numpy as np
import pytest

from adiascatter import (DEFAULT_CONTROLS, ExpIndexProfile, FreePotential,
                         GaussianPotential, IDENTITY, RectangularBarrier,
                         ScatteringContext, adiabatic_evolution,
                         build_phase_cache, det2, eta, evolve,
                         geometric_phase_factor, max_abs,
                         transfer_matrix_semiclassical, u0)
from adiascatter.quadrature import PanelGrid, segment_edges


def test_eta_free_zero():
    ctx = ScatteringContext(1.0, FreePotential())
    assert eta(ctx, 5.0) == 0j


def test_eta_exp_profile_closed_form():
    # eta(tau >= kL) = (i eps k / K)(1 - e^{iKL})
    eps, K, k = 1e-3, 1.0, 0.6
    L = 5.0
    ctx = ScatteringContext(k, ExpIndexProfile(eps=eps, K=K, L=L))
    cache = build_phase_cache(ctx)
    want_final = (1j * eps * k / K) * (1.0 - np.exp(1j * K * L))
    assert abs(cache.eta(k * L + 1.0) - want_final) < 1e-12
    # interior: (i eps k / K)(1 - e^{iK tau / k})
    for tau in (0.4, 1.7, 2.9):
        want = (1j * eps * k / K) * (1.0 - np.exp(1j * K * tau / k))
        assert abs(cache.eta(tau) - want) < 1e-12


def test_eta_barrier_linear_growth():
    k = 2.0
    n_in = 0.8
    L = 1.0
    ctx = ScatteringContext(k, RectangularBarrier(v0=k * k * (1 - n_in ** 2), L=L))
    cache = build_phase_cache(ctx)
    for tau in (0.3, 1.1, 1.9, 2.0, 3.5):
        want = (n_in - 1.0) * min(tau, k * L)
        assert abs(cache.eta(tau) - want) < 1e-12


def test_phase_cache_invariants():
    k = 1.5
    ctx = ScatteringContext(k, GaussianPotential(v0=(0.2 + 0.1j) * k * k, sigma=0.7))
    cache = build_phase_cache(ctx)
    # eta constant outside, zero at the left edge
    assert cache.eta(ctx.tau_minus) == 0j
    assert cache.eta(ctx.tau_minus - 5.0) == 0j
    assert abs(cache.eta(ctx.tau_plus + 1.0) - cache.eta(ctx.tau_plus)) < 1e-14
    # delta differences equal the integral of n between any grid pair (GL oracle)
    rng = np.random.default_rng(9)
    xi, wi = np.polynomial.legendre.leggauss(64)
    for _ in range(5):
        t0, t1 = sorted(rng.uniform(ctx.tau_minus, ctx.tau_plus, size=2))
        nodes = 0.5 * (t1 + t0) + 0.5 * (t1 - t0) * xi
        direct = 0.5 * (t1 - t0) * np.sum(wi * ctx.n(nodes))
        assert abs(cache.delta_between(t0, t1) - direct) < 1e-10


def test_geometric_phase_trivial_cases():
    k = 1.2
    ctx = ScatteringContext(k, GaussianPotential(v0=0.3 * k * k, sigma=0.5))
    assert geometric_phase_factor(ctx, 0.3, 0.3) == 1.0
    out = ctx.tau_plus + 1.0
    assert geometric_phase_factor(ctx, -out, out) == 1.0


def test_geometric_phase_quadrature_matches_closed_form():
    # i int <Phi+|dPsi+> reproduces sqrt(n(t0)/n(t1)) on a smooth profile
    k = 1.5
    ctx = ScatteringContext(k, GaussianPotential(v0=0.35 * k * k, sigma=0.8))
    t0, t1 = ctx.tau_minus * 0.8, ctx.tau_plus * 0.3
    grid = PanelGrid(segment_edges(t0, t1, (), 0.05), 16)
    h = 1e-6

    def integrand(t):
        es = ctx.eigensystem(t)
        dpsi = (ctx.eigensystem(t + h).Psi_plus
                - ctx.eigensystem(t - h).Psi_plus) / (2.0 * h)
        return np.vdot(es.Phi_plus, dpsi)

    vals = np.array([integrand(t) for t in grid.nodes.ravel()]).reshape(
        grid.nodes.shape)
    gamma = 1j * grid.integrate(vals)
    assert abs(np.exp(1j * gamma) - geometric_phase_factor(ctx, t0, t1)) < 1e-8


def test_adiabatic_evolution_trivial():
    ctx = ScatteringContext(1.3, FreePotential())
    cache = build_phase_cache(ctx)
    assert max_abs(adiabatic_evolution(ctx, 0.4, 0.4, cache) - IDENTITY) == 0.0
    assert max_abs(adiabatic_evolution(ctx, 0.2, 1.7, cache) - u0(1.5)) == 0.0


def test_adiabatic_evolution_close_to_exact_in_adiabatic_regime():
    # deviation bounded by max diagnostic * interval length * constant
    k = 4.0
    ctx = ScatteringContext(k, GaussianPotential(v0=0.15 * k * k, sigma=1.0))
    cache = build_phase_cache(ctx)
    U_ad = adiabatic_evolution(ctx, ctx.tau_minus, ctx.tau_plus, cache)
    U_ex = evolve(ctx, ctx.tau_minus, ctx.tau_plus).U
    span = ctx.tau_plus - ctx.tau_minus
    diag = max(ctx.adiabaticity(t)
               for t in np.linspace(ctx.tau_minus + 1e-6, ctx.tau_plus - 1e-6, 201))
    assert max_abs(U_ad - U_ex) <= 4.0 * diag * span


def test_adiabatic_residual_decreases_with_scale():
    k = 2.0
    prev = None
    for i in range(4):
        ctx = ScatteringContext(k, GaussianPotential(v0=0.2 * k * k,
                                                     sigma=0.5 * 2 ** i))
        cache = build_phase_cache(ctx)
        dev = max_abs(adiabatic_evolution(ctx, ctx.tau_minus, ctx.tau_plus, cache)
                      - evolve(ctx, ctx.tau_minus, ctx.tau_plus).U)
        if prev is not None:
            assert dev < prev
        prev = dev


def test_semiclassical_free_identity():
    ctx = ScatteringContext(0.9, FreePotential())
    assert max_abs(transfer_matrix_semiclassical(ctx) - IDENTITY) == 0.0


def test_semiclassical_structure_reflectionless_unimodular():
    k = 1.1
    for pot in (GaussianPotential(v0=(0.4 + 0.2j) * k * k, sigma=0.6),
                RectangularBarrier(v0=(0.2 - 0.3j) * k * k, L=1.4)):
        M = transfer_matrix_semiclassical(ScatteringContext(k, pot))
        assert M[0, 1] == 0.0 and M[1, 0] == 0.0
        assert abs(det2(M) - 1.0) < 1e-15


def test_semiclassical_exp_profile_phase():
    eps, K, L, k = 1e-3, 1.0, 2.0, 0.8
    ctx = ScatteringContext(k, ExpIndexProfile(eps=eps, K=K, L=L))
    M = transfer_matrix_semiclassical(ctx)
    eta_inf = (1j * eps * k / K) * (1.0 - np.exp(1j * K * L))
    assert abs(M[0, 0] - np.exp(1j * eta_inf)) < 1e-12
    assert abs(M[1, 1] - np.exp(-1j * eta_inf)) < 1e-12
