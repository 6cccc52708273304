import numpy as np
import pytest

from adiascatter import (DEFAULT_CONTROLS, FreePotential, GaussianPotential,
                         IDENTITY, RectangularBarrier, ScatteringContext, det2,
                         evolve, expm_step, max_abs, oracle_rectangular_barrier,
                         transfer_matrix_exact, u0)
from adiascatter.errors import DegenerateSpectrumError, TruncationTooSmallError
from adiascatter.potentials import Potential


def test_evolve_free_segment_is_u0():
    ctx = ScatteringContext(1.3, FreePotential())
    res = evolve(ctx, 0.0, 2.4)
    assert max_abs(res.U - u0(2.4)) < 1e-12


def test_evolve_rejects_reversed_interval():
    ctx = ScatteringContext(1.0, FreePotential())
    with pytest.raises(ValueError):
        evolve(ctx, 1.0, 0.0)


def test_evolve_barrier_matches_constant_exponential():
    # piecewise-constant H: closed-form exponential is the oracle
    k, L = 2.0, 1.0
    v0 = (0.4 + 0.15j) * k * k
    ctx = ScatteringContext(k, RectangularBarrier(v0=v0, L=L))
    res = evolve(ctx, ctx.tau_minus, ctx.tau_plus)
    H = ctx.hamiltonian(0.5 * (ctx.tau_minus + ctx.tau_plus))
    U_exact = expm_step(H, ctx.tau_plus - ctx.tau_minus)
    assert max_abs(res.U - U_exact) < 1e-10
    assert res.steps > 0


def test_det_u_is_one_for_random_smooth_complex_potentials():
    rng = np.random.default_rng(17)
    for _ in range(6):
        k = rng.uniform(0.8, 4.0)
        v0 = (rng.normal(scale=0.3) + 1j * rng.normal(scale=0.15)) * k * k
        ctx = ScatteringContext(k, GaussianPotential(v0=v0, sigma=rng.uniform(0.4, 1.2)))
        res = evolve(ctx, ctx.tau_minus, ctx.tau_plus)
        assert abs(det2(res.U) - 1.0) < 1e-9


def test_evolve_composition_property():
    k = 1.8
    ctx = ScatteringContext(k, GaussianPotential(v0=(0.3 + 0.1j) * k * k, sigma=0.6))
    a, c = ctx.tau_minus, ctx.tau_plus
    b = 0.25 * a + 0.75 * c
    U_ac = evolve(ctx, a, c).U
    U_comp = evolve(ctx, b, c).U @ evolve(ctx, a, b).U
    assert max_abs(U_ac - U_comp) < 1e-9


def test_magnus_and_rk_agree():
    k = 3.0
    ctx = ScatteringContext(k, GaussianPotential(v0=(0.2 + 0.15j) * k * k, sigma=0.5))
    r_rk = evolve(ctx, ctx.tau_minus, ctx.tau_plus)
    r_mag = evolve(ctx, ctx.tau_minus, ctx.tau_plus,
                   DEFAULT_CONTROLS.with_(ode_method="magnus"))
    assert max_abs(r_rk.U - r_mag.U) < 1e-8


def test_transfer_free_is_identity():
    ctx = ScatteringContext(0.7, FreePotential())
    res = transfer_matrix_exact(ctx)
    assert max_abs(res.M - IDENTITY) == 0.0


def test_real_barrier_unitarity_and_oracle():
    from adiascatter import amplitudes_from_transfer
    k = 2.0
    v0, L = 0.5 * k * k, 2.0 / k
    ctx = ScatteringContext(k, RectangularBarrier(v0=v0, L=L))
    M = transfer_matrix_exact(ctx).M
    amps = amplitudes_from_transfer(M)
    assert abs(amps.abs_T2 + amps.abs_Rl2 - 1.0) < 1e-8
    assert abs(amps.abs_T2 + amps.abs_Rr2 - 1.0) < 1e-8
    assert max_abs(M - oracle_rectangular_barrier(v0, k, L)) < 1e-10


def test_complex_barrier_exact_vs_oracle():
    k = 1.7
    L = 2.0 / k
    v0 = (0.3 + 0.1j) * k * k
    ctx = ScatteringContext(k, RectangularBarrier(v0=v0, L=L))
    res = transfer_matrix_exact(ctx)
    assert max_abs(res.M - oracle_rectangular_barrier(v0, k, L)) < 1e-10


def test_oracle_barrier_trivial_and_det():
    assert max_abs(oracle_rectangular_barrier(0.0, 1.2, 2.0) - IDENTITY) < 1e-12
    rng = np.random.default_rng(23)
    for _ in range(20):
        k = rng.uniform(0.5, 5.0)
        L = rng.uniform(0.2, 3.0)
        v0 = (rng.normal(scale=0.5) + 1j * rng.normal(scale=0.2)) * k * k
        M = oracle_rectangular_barrier(v0, k, L)
        assert abs(det2(M) - 1.0) < 1e-12


def test_oracle_barrier_degenerate_interior():
    with pytest.raises(DegenerateSpectrumError):
        oracle_rectangular_barrier(4.0, 2.0, 1.0)   # v0 = k^2 -> kappa = 0


def test_error_estimate_dominates_tolerance_halving():
    k = 1.6
    ctx = ScatteringContext(k, GaussianPotential(v0=(0.3 + 0.1j) * k * k, sigma=0.7))
    res = transfer_matrix_exact(ctx, DEFAULT_CONTROLS)
    halved = DEFAULT_CONTROLS.with_(tol_ode_rel=DEFAULT_CONTROLS.tol_ode_rel / 2.0)
    res_halved = transfer_matrix_exact(ctx, halved)
    assert max_abs(res_halved.M - res.M) <= max(res.error_estimate, 1e-14)


def test_truncation_doubling_stable_for_gaussian():
    k = 2.0
    pot = GaussianPotential(v0=0.3 * k * k, sigma=0.6)
    res1 = transfer_matrix_exact(ScatteringContext(k, pot), estimate=False)
    wide = ScatteringContext(k, pot, support_scale=4.0)
    res2 = transfer_matrix_exact(wide, estimate=False)
    assert max_abs(res1.M - res2.M) < 1e-9


class _NonVanishing(Potential):
    """Constant potential with a bogus truncation rule (never converges)."""

    kind = "nonvanishing"
    truncated = True

    def support(self, k, scale=1.0):
        return (-scale, scale)

    def evaluate(self, x, k=None):
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape, 0.2 + 0j)
        return out if np.ndim(out) else complex(out)


def test_truncation_too_small_raised():
    ctx = ScatteringContext(1.0, _NonVanishing())
    with pytest.raises(TruncationTooSmallError):
        transfer_matrix_exact(ctx, estimate=False)
