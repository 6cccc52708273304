import math

import numpy as np
import pytest

from adiascatter import (ExpIndexProfile, FreePotential, GaussianPotential,
                         RectangularBarrier, ScatteringContext, SIGMA3, max_abs)
from adiascatter.errors import BranchAmbiguityError, DegenerateSpectrumError


def _barrier_ctx(w_value: complex, k: float = 2.0):
    """Context whose w equals `w_value` inside a unit barrier."""
    return ScatteringContext(k, RectangularBarrier(v0=2.0 * k * k * w_value, L=1.0))


def test_w_of_tau_free():
    ctx = ScatteringContext(1.0, FreePotential())
    assert ctx.w(0.3) == 0.0


def test_w_of_tau_barrier_direct_substitution():
    ctx = ScatteringContext(2.0, RectangularBarrier(v0=1.0, L=1.0))
    assert abs(ctx.w(1.0) - 1.0 / 8.0) < 1e-15


def test_w_consistent_with_index_squared():
    # n^2 = 1 - 2w for the locally periodic profile
    eps, K, L, k = 1e-2, 1.3, 3.0, 0.9
    ctx = ScatteringContext(k, ExpIndexProfile(eps=eps, K=K, L=L))
    taus = np.linspace(0.05, k * L - 0.05, 41)
    n_expected = 1.0 + eps * np.exp(1j * K * taus / k)
    assert np.max(np.abs(1.0 - 2.0 * ctx.w(taus) - n_expected ** 2)) < 1e-12


def test_hamiltonian_free_is_minus_sigma3():
    ctx = ScatteringContext(1.0, FreePotential())
    assert max_abs(ctx.hamiltonian(0.7) + SIGMA3) == 0.0


def test_hamiltonian_traceless_for_random_w():
    rng = np.random.default_rng(11)
    for _ in range(20):
        w = complex(rng.normal(), rng.normal())
        H = _barrier_ctx(w).hamiltonian(1.0)
        assert abs(H[0, 0] + H[1, 1]) < 1e-14


def test_hamiltonian_eigenvalues_match_characteristic_polynomial():
    # oracle: numpy's general eigensolver on the assembled matrix
    rng = np.random.default_rng(12)
    for _ in range(25):
        w = complex(rng.normal(scale=0.5), rng.normal(scale=0.5))
        ctx = _barrier_ctx(w)
        H = ctx.hamiltonian(1.0)
        nval = np.sqrt(1.0 - 2.0 * w)
        got = sorted(np.linalg.eigvals(H), key=lambda z: (z.real, z.imag))
        want = sorted([nval, -nval], key=lambda z: (z.real, z.imag))
        assert max(abs(g - e) for g, e in zip(got, want)) < 1e-12


def test_refractive_index_free_and_outside_support():
    ctx = ScatteringContext(1.5, RectangularBarrier(v0=0.5, L=1.0))
    assert ctx.n(-3.0) == 1.0 + 0j           # exactly 1 outside
    assert ctx.n(ctx.tau_plus + 2.0) == 1.0 + 0j
    ctx_free = ScatteringContext(1.5, FreePotential())
    assert ctx_free.n(0.4) == 1.0 + 0j


def test_refractive_index_half_for_three_quarters_barrier():
    k = 2.0
    ctx = ScatteringContext(k, RectangularBarrier(v0=0.75 * k * k, L=1.0))
    assert abs(ctx.n(1.0) - 0.5) < 1e-12


def test_refractive_index_exp_profile():
    eps, K, L, k = 2e-3, 1.1, 4.0, 0.8
    ctx = ScatteringContext(k, ExpIndexProfile(eps=eps, K=K, L=L))
    taus = np.linspace(0.01, k * L - 0.01, 33)
    want = 1.0 + eps * np.exp(1j * K * taus / k)
    assert np.max(np.abs(ctx.n(taus) - want)) < 1e-14


def test_branch_tracking_recovers_index_profile_through_the_cut():
    # eps > 1 makes n wind around 0, so the principal square root of
    # 1 - 2w flips sign along the way; continuation must undo the flips.
    eps, K, L, k = 1.5, 2.0, 2.0 * np.pi, 0.75
    pot = ExpIndexProfile(eps=eps, K=K, L=L)
    ctx = ScatteringContext(k, pot, use_index_profile=False)
    taus = np.linspace(ctx.tau_minus + 1e-9, ctx.tau_plus - 1e-9, 1501)
    direct = pot.index(taus / k)
    tracked = ctx.n(taus)
    assert np.max(np.abs(tracked - direct)) < 1e-10
    # successive values stay continuous (no residual sign flips)
    steps = np.abs(np.diff(tracked))
    assert np.max(steps) < 0.05
    # the continued log exponentiates back and is continuous in Im
    logs = ctx.log_n(taus)
    assert np.max(np.abs(np.exp(logs) - tracked)) < 1e-10
    assert np.max(np.abs(np.diff(logs.imag))) < 0.1


def test_branch_ambiguity_when_index_vanishes():
    k = 2.0
    ctx = ScatteringContext(k, RectangularBarrier(v0=k * k, L=1.0))  # n = 0 inside
    with pytest.raises(BranchAmbiguityError):
        ctx.n(1.0)


def test_eigensystem_free():
    ctx = ScatteringContext(1.0, FreePotential())
    es = ctx.eigensystem(0.2)
    assert es.E_plus == 1.0 and es.E_minus == -1.0
    assert np.allclose(es.Psi_plus, [0.0, 1.0])
    assert np.allclose(es.Psi_minus, [1.0, 0.0])


def test_eigensystem_biorthonormal_for_random_w():
    rng = np.random.default_rng(21)
    for _ in range(25):
        w = complex(rng.normal(scale=0.4), rng.normal(scale=0.4))
        es = _barrier_ctx(w).eigensystem(1.0)
        pairs = [(es.Phi_plus, es.Psi_plus, 1.0), (es.Phi_minus, es.Psi_minus, 1.0),
                 (es.Phi_plus, es.Psi_minus, 0.0), (es.Phi_minus, es.Psi_plus, 0.0)]
        for phi, psi, want in pairs:
            assert abs(np.vdot(phi, psi) - want) < 1e-12


def test_eigensystem_completeness_and_residuals():
    rng = np.random.default_rng(22)
    for _ in range(25):
        w = complex(rng.normal(scale=0.4), rng.normal(scale=0.4))
        ctx = _barrier_ctx(w)
        es = ctx.eigensystem(1.0)
        H = ctx.hamiltonian(1.0)
        complete = (np.outer(es.Psi_plus, np.conj(es.Phi_plus))
                    + np.outer(es.Psi_minus, np.conj(es.Phi_minus)))
        assert max_abs(complete - np.eye(2)) < 1e-12
        assert np.max(np.abs(H @ es.Psi_plus - es.E_plus * es.Psi_plus)) < 1e-12
        assert np.max(np.abs(H @ es.Psi_minus - es.E_minus * es.Psi_minus)) < 1e-12
        # left eigenvectors of H (eigenvectors of H^dagger with conj eigenvalue)
        Hd = H.conj().T
        assert np.max(np.abs(Hd @ es.Phi_plus
                             - np.conj(es.E_plus) * es.Phi_plus)) < 1e-12
        # spectral reconstruction
        rebuilt = (es.E_plus * np.outer(es.Psi_plus, np.conj(es.Phi_plus))
                   + es.E_minus * np.outer(es.Psi_minus, np.conj(es.Phi_minus)))
        assert max_abs(rebuilt - H) < 1e-12


def test_eigensystem_degenerate_spectrum():
    k = 2.0
    n_tiny = 1e-9
    ctx = ScatteringContext(k, RectangularBarrier(v0=k * k * (1 - n_tiny ** 2), L=1.0))
    with pytest.raises(DegenerateSpectrumError):
        ctx.eigensystem(1.0)


def test_adiabaticity_free_is_zero():
    ctx = ScatteringContext(1.0, FreePotential())
    assert ctx.adiabaticity(0.5) == 0.0


def test_adiabaticity_two_forms_agree_on_gaussian():
    # |n'/(4 n^2)| against |v'(x)| / (8 |k^2 - v(x)|^{3/2})
    k = 1.7
    pot = GaussianPotential(v0=0.4 * k * k, sigma=0.8)
    ctx = ScatteringContext(k, pot)
    for tau in np.linspace(-2.0, 2.0, 11):
        x = tau / k
        v = complex(pot.evaluate(x))
        vp = complex(pot.derivative(x))
        stated = abs(vp) / (8.0 * abs(k * k - v) ** 1.5)
        assert abs(ctx.adiabaticity(tau) - stated) < 1e-8 * max(1.0, stated)


def test_adiabaticity_infinite_at_barrier_edge():
    k = 2.0
    ctx = ScatteringContext(k, RectangularBarrier(v0=0.3 * k * k, L=1.0))
    assert ctx.adiabaticity(0.0) == math.inf


def test_eigensystem_reconstruction_along_tau():
    k = 1.4
    ctx = ScatteringContext(k, GaussianPotential(v0=(0.3 + 0.1j) * k * k, sigma=0.6))
    for tau in np.linspace(ctx.tau_minus, ctx.tau_plus, 9):
        es = ctx.eigensystem(tau)
        H = ctx.hamiltonian(tau)
        rebuilt = (es.E_plus * np.outer(es.Psi_plus, np.conj(es.Phi_plus))
                   + es.E_minus * np.outer(es.Psi_minus, np.conj(es.Phi_minus)))
        assert max_abs(rebuilt - H) < 1e-12
