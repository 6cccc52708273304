import numpy as np
import pytest

from adiascatter import (Amplitudes, IDENTITY, SIGMA1, amplitudes_from_transfer,
                         det2, mat2, mat2_mul, max_abs, transfer_from_amplitudes,
                         u0, u0_inv)
from adiascatter.errors import SpectralSingularityError, ZeroTransmissionError


def _random_mat2(rng):
    vals = rng.normal(size=4) + 1j * rng.normal(size=4)
    return mat2(*vals)


def test_mat2_mul_identity():
    rng = np.random.default_rng(0)
    X = _random_mat2(rng)
    assert max_abs(mat2_mul(IDENTITY, X) - X) == 0.0
    assert max_abs(mat2_mul(X, IDENTITY) - X) == 0.0


def test_pauli_squares_to_identity():
    assert max_abs(mat2_mul(SIGMA1, SIGMA1) - IDENTITY) == 0.0


def test_det_multiplicative_on_random_matrices():
    # oracle: det by direct expansion on both sides
    rng = np.random.default_rng(42)
    for _ in range(50):
        a, b = _random_mat2(rng), _random_mat2(rng)
        assert abs(det2(mat2_mul(a, b)) - det2(a) * det2(b)) < 1e-12


def test_u0_at_zero_is_identity():
    assert max_abs(u0(0.0) - IDENTITY) == 0.0


def test_u0_quarter_period():
    expected = mat2(1j, 0.0, 0.0, -1j)
    assert max_abs(u0(np.pi / 2) - expected) < 1e-15


def test_u0_group_property():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a, b = rng.uniform(-20, 20, size=2)
        assert max_abs(u0(a) @ u0(b) - u0(a + b)) < 1e-12
        assert max_abs(u0(a) @ u0(-a) - IDENTITY) < 1e-12
        assert max_abs(u0_inv(a) - u0(-a)) == 0.0


def test_amplitudes_identity_matrix():
    amps = amplitudes_from_transfer(IDENTITY)
    assert amps.T == 1.0 and amps.Rl == 0.0 and amps.Rr == 0.0


def test_amplitudes_diagonal_phase_matrix():
    # zeroth-order form diag(e^{i phi}, e^{-i phi}): pure transmission phase
    phi = 0.731
    M = mat2(np.exp(1j * phi), 0.0, 0.0, np.exp(-1j * phi))
    amps = amplitudes_from_transfer(M)
    assert abs(amps.T - np.exp(1j * phi)) < 1e-15
    assert amps.Rl == 0.0 and amps.Rr == 0.0


def test_amplitude_round_trip_on_unimodular_matrices():
    rng = np.random.default_rng(3)
    for _ in range(50):
        amps = Amplitudes(T=complex(rng.normal(), rng.normal()) or 1.0,
                          Rl=complex(rng.normal(), rng.normal()),
                          Rr=complex(rng.normal(), rng.normal()))
        M = transfer_from_amplitudes(amps)
        assert abs(det2(M) - 1.0) < 1e-12
        back = amplitudes_from_transfer(M)
        assert abs(back.T - amps.T) < 1e-12 * max(1.0, abs(amps.T))
        assert abs(back.Rl - amps.Rl) < 1e-12 * max(1.0, abs(amps.Rl))
        assert abs(back.Rr - amps.Rr) < 1e-12 * max(1.0, abs(amps.Rr))
        again = transfer_from_amplitudes(back)
        assert max_abs(again - M) < 1e-10 * max(1.0, max_abs(M))


def test_spectral_singularity_raised_for_tiny_m22():
    M = mat2(1.0, 1.0, 1.0, 1e-15)
    with pytest.raises(SpectralSingularityError):
        amplitudes_from_transfer(M)


def test_zero_transmission_rejected():
    with pytest.raises(ZeroTransmissionError):
        transfer_from_amplitudes(Amplitudes(T=0.0, Rl=0.1, Rr=0.1))


def test_barrier_amplitudes_match_two_interface_oracle():
    # exact engine amplitudes vs the independent plane-wave matching oracle
    from adiascatter import (RectangularBarrier, ScatteringContext,
                             oracle_rectangular_barrier, transfer_matrix_exact)
    k, L = 2.0, 1.0
    v0 = 0.5 * k * k
    ctx = ScatteringContext(k, RectangularBarrier(v0=v0, L=L))
    M = transfer_matrix_exact(ctx).M
    a_num = amplitudes_from_transfer(M)
    a_ora = amplitudes_from_transfer(oracle_rectangular_barrier(v0, k, L))
    assert abs(a_num.T - a_ora.T) < 1e-10
    assert abs(a_num.Rl - a_ora.Rl) < 1e-10
    assert abs(a_num.Rr - a_ora.Rr) < 1e-10
