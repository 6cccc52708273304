"""Adiabatic-series corrections to the semiclassical transfer matrix.

In the frame of the adiabatic evolution operator the Hamiltonian becomes
(with the reference point pinned to the left support edge, where n = 1)

    Ht(tau) = (i n'(tau) / 2 n(tau)) [[0, e^{-2 i delta}], [e^{2 i delta}, 0]],

and the Dyson terms Ut^(l) of its time-ordered exponential give the
correction matrices  A^(l) = U0(tau-)^{-1} Ut^(l)(tau+, tau-) U0(tau-)  and
the n-th order transfer matrix  M ~ M_sc (I + sum_{l<=n} A^(l)).

Three independent routes are implemented:

* volterra -- co-integrates d Ut^(l)/dtau = -i Ht Ut^(l-1) for all orders at
  once (the workhorse, any order).  Where n jumps (barrier edges, the
  locally periodic profile's edges) n'/n acquires delta contributions; the
  mollified limit is the closed-form triangular update
  Ut^(l) <- sum_m (beta^m/m!) X^m Ut^(l-m) with beta = (1/2) Delta ln n,
  applied at every declared jump.  Dropping these loses O(|Delta n|) terms.
* ibp -- the integration-by-parts forms for l = 1, 2, which involve
  n ln n instead of n'/n and therefore need no special treatment at jumps.
* nested -- direct iterated quadrature of the ordered-simplex integrals
  (l <= 3, oracle); for discontinuous profiles only l = 1 carries its jump
  terms.

Even-l terms are diagonal and odd-l terms anti-diagonal because Ht is
anti-diagonal; each A^(l) is sigma1^{nu_l} diag(A_l^-, A_l^+).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp

from .controls import Controls
from .core import IDENTITY, SIGMA1, SIGMA2, SIGMA3, max_abs, mat2, u0, u0_inv
from .errors import (QuadratureFailureError, StepUnderflowError,
                     ToleranceNotMetError, UnsupportedOrderError)
from .hamiltonian import ScatteringContext
from .quadrature import filon_panel_integrals
from .semiclassical import PhaseCache, build_phase_cache, transfer_matrix_semiclassical
from . import exact as _exact


@dataclass(frozen=True)
class CorrectionTerm:
    """One adiabatic-series term A^(l) = sigma1^{nu} diag(A^-, A^+)."""

    order: int
    A: np.ndarray
    parity: int                 # nu_l = (1 - (-1)^l)/2
    Aminus: complex
    Aplus: complex
    method: str                 # "volterra" | "ibp" | "nested"
    wrong_parity: float = 0.0   # max |entry| on the wrong diagonal
    quad_error: float = 0.0


@dataclass
class SeriesResult:
    """Per-order terms, partial sums, and (optionally) exact residuals."""

    M0: np.ndarray
    terms: list[CorrectionTerm]
    partial_sums: list[np.ndarray]      # M^{(<=j)}, j = 0..n
    method: str
    error_estimate: float = 0.0
    exact: Optional[np.ndarray] = None
    residual_norms: Optional[list[float]] = None

    @property
    def M(self) -> np.ndarray:
        return self.partial_sums[-1]


def _nu(ell: int) -> int:
    return (1 - (-1) ** ell) // 2


def _term_from_matrix(ell: int, A: np.ndarray, method: str,
                      quad_error: float = 0.0) -> CorrectionTerm:
    nu = _nu(ell)
    if nu:
        aplus, aminus = A[0, 1], A[1, 0]
        wrong = max(abs(A[0, 0]), abs(A[1, 1]))
    else:
        aminus, aplus = A[0, 0], A[1, 1]
        wrong = max(abs(A[0, 1]), abs(A[1, 0]))
    return CorrectionTerm(order=ell, A=A, parity=nu, Aminus=complex(aminus),
                          Aplus=complex(aplus), method=method,
                          wrong_parity=float(wrong), quad_error=quad_error)


def _term_from_pair(ell: int, aminus: complex, aplus: complex, method: str,
                    quad_error: float = 0.0) -> CorrectionTerm:
    diag = mat2(aminus, 0.0, 0.0, aplus)
    A = (SIGMA1 @ diag) if _nu(ell) else diag
    return CorrectionTerm(order=ell, A=A, parity=_nu(ell), Aminus=complex(aminus),
                          Aplus=complex(aplus), method=method,
                          quad_error=quad_error)


# ---------------------------------------------------------------------------
# transformed Hamiltonian
# ---------------------------------------------------------------------------

def h_tilde(ctx: ScatteringContext, tau: float,
            cache: Optional[PhaseCache] = None) -> np.ndarray:
    """Ht(tau) for the reference point at the left support edge (n(tau0) = 1);
    vanishing diagonal entries by construction."""
    cache = cache or build_phase_cache(ctx)
    g = ctx.n_dot(tau) / ctx.n(tau)
    d = cache.delta(tau)
    e = np.exp(2j * d)
    return (0.5j * g) * mat2(0.0, 1.0 / e, e, 0.0)


def h_tilde_general(ctx: ScatteringContext, tau: float, tau0: float,
                    cache: Optional[PhaseCache] = None) -> np.ndarray:
    """General-reference-point form

        Ht = (i n'/2n) { cos(2 delta) sigma1 + sin(2 delta)(a+ sigma2 - i a- sigma3) },

    a_pm = (n(tau0) +- 1/n(tau0))/2, delta measured from tau0.  Reduces to
    h_tilde when n(tau0) = 1."""
    cache = cache or build_phase_cache(ctx)
    g = ctx.n_dot(tau) / ctx.n(tau)
    n0 = ctx.n(tau0)
    a_plus = 0.5 * (n0 + 1.0 / n0)
    a_minus = 0.5 * (n0 - 1.0 / n0)
    d = cache.delta_between(tau0, tau)
    return (0.5j * g) * (np.cos(2.0 * d) * SIGMA1
                         + np.sin(2.0 * d) * (a_plus * SIGMA2 - 1j * a_minus * SIGMA3))


# ---------------------------------------------------------------------------
# derivatives of ln n that stay inside a segment
# ---------------------------------------------------------------------------

def _log_derivative(ctx: ScatteringContext, tau: float,
                    lo: float, hi: float) -> complex:
    """n'(tau)/n(tau) using the smooth piece on (lo, hi) only."""
    pot = ctx.potential
    if pot.index(0.0) is not None and pot.index_derivative(0.0) is not None:
        return complex(pot.index_derivative(tau / ctx.k)) / (ctx.k * complex(ctx.n(tau)))
    if pot.has_derivative:
        nval = complex(ctx.n(tau))
        vprime = complex(pot.derivative(tau / ctx.k, k=ctx.k))
        return -vprime / (2.0 * ctx.k ** 3 * nval * nval)
    h = ctx.controls.fd_step_scale * max(1.0, abs(tau))
    h = min(h, 0.25 * (hi - lo))
    if tau - h > lo and tau + h < hi:
        return complex(ctx.log_n(tau + h) - ctx.log_n(tau - h)) / (2.0 * h)
    sgn = 1.0 if tau - lo < hi - tau else -1.0  # one-sided, pointing inward
    f0 = complex(ctx.log_n(tau))
    f1 = complex(ctx.log_n(tau + sgn * h))
    f2 = complex(ctx.log_n(tau + 2.0 * sgn * h))
    return sgn * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h)


def _log_derivative_nodes(ctx: ScatteringContext, cache: PhaseCache) -> np.ndarray:
    """n'/n at every grid node (vectorized; nodes never sit on a jump)."""
    grid = cache.grid
    taus = grid.nodes.ravel()
    pot = ctx.potential
    if pot.index(0.0) is not None and pot.index_derivative(0.0) is not None:
        dn = np.asarray(pot.index_derivative(taus / ctx.k), dtype=complex) / ctx.k
        out = dn / cache.n_nodes.ravel()
    elif pot.has_derivative:
        vp = np.asarray(pot.derivative(taus / ctx.k, k=ctx.k), dtype=complex)
        n2 = cache.n_nodes.ravel() ** 2
        out = -vp / (2.0 * ctx.k ** 3 * n2)
    else:
        h0 = ctx.controls.fd_step_scale * np.maximum(1.0, np.abs(taus))
        cuts = np.asarray((ctx.tau_minus,) + ctx.jumps_tau + (ctx.tau_plus,))
        dist = np.min(np.abs(taus[:, None] - cuts[None, :]), axis=1)
        h = np.minimum(h0, 0.49 * np.maximum(dist, 1e-14))
        f_p = np.asarray(ctx.log_n(taus + h), dtype=complex)
        f_m = np.asarray(ctx.log_n(taus - h), dtype=complex)
        out = (f_p - f_m) / (2.0 * h)
    return out.reshape(grid.nodes.shape)


# ---------------------------------------------------------------------------
# Volterra recursion (all orders in one pass, jump updates at breakpoints)
# ---------------------------------------------------------------------------

def _jump_matrix(delta_e: complex) -> np.ndarray:
    e = np.exp(2j * delta_e)
    return mat2(0.0, 1.0 / e, e, 0.0)


def _apply_jump(us: list[np.ndarray], beta: complex, delta_e: complex) -> list[np.ndarray]:
    """Ut^(l) <- sum_{m=0}^{l} (beta^m/m!) X^m Ut^(l-m), Ut^(0) = I."""
    X = _jump_matrix(delta_e)
    n_max = len(us)
    chain = [us[ell] for ell in range(n_max)]
    full = [IDENTITY] + chain
    Xp = IDENTITY.copy()
    fact = 1.0
    new = [m.copy() for m in chain]
    for m_pow in range(1, n_max + 1):
        Xp = X @ Xp
        fact *= m_pow
        coef = beta ** m_pow / fact
        for ell in range(m_pow, n_max + 1):
            new[ell - 1] = new[ell - 1] + coef * (Xp @ full[ell - m_pow])
    return new


def volterra_u_tilde_terms(ctx: ScatteringContext, n_max: int,
                           controls: Optional[Controls] = None) -> list[np.ndarray]:
    """Dyson terms Ut^(l)(tau+, tau-) for l = 1..n_max by the recursion
    d Ut^(l)/dtau = -i Ht(tau) Ut^(l-1), with delta co-integrated and
    closed-form updates at every jump of n."""
    controls = controls or ctx.controls
    if n_max < 1:
        return []
    zero = np.zeros((2, 2), dtype=complex)
    if not (ctx.tau_plus > ctx.tau_minus):
        return [zero.copy() for _ in range(n_max)]

    def rhs(t, y, lo, hi):
        delta = y[0]
        g = _log_derivative(ctx, t, lo, hi)
        X = _jump_matrix(delta)
        dy = np.empty_like(y)
        dy[0] = ctx.n(t)
        prev = IDENTITY
        for ell in range(n_max):
            if ell > 0:
                prev = y[1 + 4 * (ell - 1): 1 + 4 * ell].reshape(2, 2)
            dy[1 + 4 * ell: 1 + 4 * (ell + 1)] = (0.5 * g * (X @ prev)).ravel()
        return dy

    y = np.zeros(1 + 4 * n_max, dtype=complex)
    us = [zero.copy() for _ in range(n_max)]

    def pack():
        for ell in range(n_max):
            y[1 + 4 * ell: 1 + 4 * (ell + 1)] = us[ell].ravel()

    def unpack():
        for ell in range(n_max):
            us[ell] = y[1 + 4 * ell: 1 + 4 * (ell + 1)].reshape(2, 2).copy()

    def same(a: float, b: float) -> bool:
        return abs(a - b) <= 1e-12 * max(1.0, abs(a), abs(b))

    jumps = list(ctx.jumps_tau)
    pos = ctx.tau_minus
    if jumps and same(jumps[0], ctx.tau_minus):
        us = _apply_jump(us, 0.5 * ctx.jump_lognratio(ctx.tau_minus), y[0])
        jumps = jumps[1:]
    trailing = bool(jumps) and same(jumps[-1], ctx.tau_plus)
    if trailing:
        jumps = jumps[:-1]

    for stop in jumps + [ctx.tau_plus]:
        if stop > pos:
            pack()
            sol = solve_ivp(rhs, (pos, stop), y, args=(pos, stop), method="DOP853",
                            rtol=controls.tol_ode_rel, atol=controls.tol_ode_abs,
                            max_step=_exact._max_step(ctx))
            if not sol.success:
                msg = (sol.message or "").lower()
                if "step size" in msg:
                    raise StepUnderflowError(sol.message)
                raise ToleranceNotMetError(sol.message)
            y = sol.y[:, -1]
            unpack()
        if stop < ctx.tau_plus:
            us = _apply_jump(us, 0.5 * ctx.jump_lognratio(stop), y[0])
        pos = stop
    if trailing:
        us = _apply_jump(us, 0.5 * ctx.jump_lognratio(ctx.tau_plus), y[0])
    return us


def u_tilde_term_volterra(ctx: ScatteringContext, ell: int,
                          controls: Optional[Controls] = None) -> np.ndarray:
    """Single Dyson term Ut^(l)(tau+, tau-)."""
    if ell < 1:
        raise UnsupportedOrderError("Dyson terms start at order 1")
    return volterra_u_tilde_terms(ctx, ell, controls)[ell - 1]


def correction_terms_volterra(ctx: ScatteringContext, n_max: int,
                              controls: Optional[Controls] = None) -> list[CorrectionTerm]:
    controls = controls or ctx.controls
    us = volterra_u_tilde_terms(ctx, n_max, controls)
    left = u0_inv(ctx.tau_minus)
    right = u0(ctx.tau_minus)
    out = []
    for ell, ut in enumerate(us, start=1):
        A = left @ ut @ right
        est = controls.tol_ode_rel * max(1.0, max_abs(A)) * 10.0
        out.append(_term_from_matrix(ell, A, "volterra", quad_error=est))
    return out


# ---------------------------------------------------------------------------
# quadrature routes (IBP and nested), on the PhaseCache grid
# ---------------------------------------------------------------------------

def _converged_pair(cache: PhaseCache, controls: Controls,
                    compute: Callable[[PhaseCache], tuple[complex, complex]]
                    ) -> tuple[complex, complex, float]:
    cur = compute(cache)
    for _ in range(4):
        fine_cache = cache.refined()
        fine = compute(fine_cache)
        err = max(abs(fine[0] - cur[0]), abs(fine[1] - cur[1]))
        scale = max(1.0, abs(fine[0]), abs(fine[1]))
        if err <= controls.tol_quad * scale:
            return fine[0], fine[1], float(err)
        cache, cur = fine_cache, fine
    raise QuadratureFailureError("correction-term quadrature did not converge")


def _a1_values(ctx: ScatteringContext, cache: PhaseCache, controls: Controls,
               weight_nodes: Callable[[PhaseCache], np.ndarray],
               jump_weight: Optional[Callable[[float], complex]]) -> tuple[complex, complex]:
    """Shared assembly of A_1^{+-} = (integral of f * e^{-+2i(eta+tau)}) with f
    from `weight_nodes`, plus optional jump contributions."""
    grid = cache.grid
    f = weight_nodes(cache)
    use_filon = ctx.k > controls.filon_k_threshold
    out = []
    for sign in (-1.0, +1.0):   # sign of the exponent 2i(eta+tau): -> A1^+, A1^-
        if use_filon:
            env = f * np.exp(2j * sign * cache.eta_nodes)
            val = filon_panel_integrals(env, grid, 2.0 * sign)
        else:
            val = grid.integrate(f * np.exp(2j * sign * (cache.eta_nodes + grid.nodes)))
        out.append(val)
    a_plus, a_minus = out[0], out[1]
    if jump_weight is not None:
        for te in ctx.jumps_tau:
            eta_e = cache.eta(te)
            wj = jump_weight(te)
            a_plus = a_plus + wj * np.exp(-2j * (eta_e + te))
            a_minus = a_minus + wj * np.exp(2j * (eta_e + te))
    return complex(a_minus), complex(a_plus)


def a_ell_ibp(ctx: ScatteringContext, ell: int,
              controls: Optional[Controls] = None,
              cache: Optional[PhaseCache] = None) -> CorrectionTerm:
    """Integration-by-parts forms (no n'):

        A_1^{+-} = +- i int e^{-+2i[eta+tau]} m1,
        A_2^{+-} = -+ (i/2) int m2
                   + int dt2 int_{-inf}^{t2} dt1 e^{+-2i int_{t1}^{t2} n} m1(t1) m1(t2),

    with m_l = n (ln n)^l; valid for profiles with jumps."""
    controls = controls or ctx.controls
    if ell not in (1, 2):
        raise UnsupportedOrderError("integration-by-parts forms exist for l = 1, 2")
    if not (ctx.tau_plus > ctx.tau_minus):
        return _term_from_pair(ell, 0.0, 0.0, "ibp")
    cache = cache or build_phase_cache(ctx, controls)

    def logn_nodes(c: PhaseCache) -> np.ndarray:
        return np.asarray(ctx.log_n(c.grid.nodes.ravel()),
                          dtype=complex).reshape(c.grid.nodes.shape)

    if ell == 1:
        def compute(c: PhaseCache) -> tuple[complex, complex]:
            am, ap = _a1_values(ctx, c, controls, lambda cc: cc.n_nodes * logn_nodes(cc),
                                jump_weight=None)
            return -1j * am, 1j * ap
        am, ap, err = _converged_pair(cache, controls, compute)
        return _term_from_pair(1, am, ap, "ibp", quad_error=err)

    def compute2(c: PhaseCache) -> tuple[complex, complex]:
        grid = c.grid
        m1 = c.n_nodes * logn_nodes(c)
        m2 = c.n_nodes * logn_nodes(c) ** 2
        single = grid.integrate(m2)
        out = []
        for sign in (+1.0, -1.0):  # sign in e^{+-2i int n} -> A2^+, A2^-
            inner = grid.cumulative_nodes(m1 * np.exp(-2j * sign * c.delta_nodes))
            double = grid.integrate(m1 * np.exp(2j * sign * c.delta_nodes) * inner)
            out.append(-sign * 0.5j * single + double)
        return complex(out[1]), complex(out[0])   # (A2^-, A2^+)

    am, ap, err = _converged_pair(cache, controls, compute2)
    return _term_from_pair(2, am, ap, "ibp", quad_error=err)


def a_ell_nested(ctx: ScatteringContext, ell: int,
                 controls: Optional[Controls] = None,
                 cache: Optional[PhaseCache] = None) -> CorrectionTerm:
    """Ordered-simplex quadrature of the defining integrals (l <= 3):

        A_l^{+-} = 2^{-l} int...int_{t1<=...<=tl} e^{+-2i phi_l} prod n'(tj)/n(tj)

    evaluated as iterated cumulative integrals.  For profiles where n jumps
    only l = 1 is supported (the jump contributes (1/2) Delta ln n at the
    edge); use ibp or volterra beyond that."""
    controls = controls or ctx.controls
    if ell not in (1, 2, 3):
        raise UnsupportedOrderError("nested quadrature implemented for l = 1..3")
    if not (ctx.tau_plus > ctx.tau_minus):
        return _term_from_pair(ell, 0.0, 0.0, "nested")
    if ctx.jumps_tau and ell > 1:
        raise UnsupportedOrderError(
            "nested quadrature beyond l = 1 needs a continuous index profile")
    cache = cache or build_phase_cache(ctx, controls)

    if ell == 1:
        def compute(c: PhaseCache) -> tuple[complex, complex]:
            am, ap = _a1_values(
                ctx, c, controls,
                lambda cc: 0.5 * _log_derivative_nodes(ctx, cc),
                jump_weight=lambda te: 0.5 * ctx.jump_lognratio(te))
            return am, ap
        am, ap, err = _converged_pair(cache, controls, compute)
        return _term_from_pair(1, am, ap, "nested", quad_error=err)

    def compute_high(c: PhaseCache) -> tuple[complex, complex]:
        grid = c.grid
        g = _log_derivative_nodes(ctx, c)
        out = []
        if ell == 2:
            for sign in (+1.0, -1.0):    # A2^{+-}: e^{+-2i(delta2-delta1)}
                inner = grid.cumulative_nodes(g * np.exp(-2j * sign * c.delta_nodes))
                val = grid.integrate(g * np.exp(2j * sign * c.delta_nodes) * inner)
                out.append(0.25 * val)
            return complex(out[1]), complex(out[0])
        for sign in (+1.0, -1.0):        # A3^{+-}: e^{+-2i(-eta3-tau3+delta2-delta1)}
            inner1 = grid.cumulative_nodes(g * np.exp(-2j * sign * c.delta_nodes))
            inner2 = grid.cumulative_nodes(g * np.exp(2j * sign * c.delta_nodes) * inner1)
            outer = grid.integrate(
                g * np.exp(-2j * sign * (c.eta_nodes + grid.nodes)) * inner2)
            out.append(0.125 * outer)
        return complex(out[1]), complex(out[0])

    am, ap, err = _converged_pair(cache, controls, compute_high)
    return _term_from_pair(ell, am, ap, "nested", quad_error=err)


# ---------------------------------------------------------------------------
# n-th order transfer matrix
# ---------------------------------------------------------------------------

def _resolve_method(ctx: ScatteringContext, order: int, requested: str) -> str:
    if requested != "auto":
        return requested
    if order == 0:
        return "volterra"
    if ctx.jumps_tau and order <= 2:
        return "ibp"
    return "volterra"


def transfer_matrix_order_n(ctx: ScatteringContext, order: int,
                            controls: Optional[Controls] = None,
                            compare_exact: bool = False) -> SeriesResult:
    """M^{(<=n)} = M_sc (I + sum_{l=1}^{n} A^(l)) with per-order partial sums."""
    controls = controls or ctx.controls
    if order < 0:
        raise UnsupportedOrderError("order must be >= 0")
    cache = build_phase_cache(ctx, controls)
    M0 = transfer_matrix_semiclassical(ctx, cache)
    method = _resolve_method(ctx, order, controls.series_method)

    terms: list[CorrectionTerm] = []
    if order >= 1:
        if method == "volterra":
            terms = correction_terms_volterra(ctx, order, controls)
        elif method == "ibp":
            if order > 2:
                raise UnsupportedOrderError(
                    "ibp route stops at order 2; use the volterra method")
            terms = [a_ell_ibp(ctx, ell, controls, cache) for ell in range(1, order + 1)]
        elif method == "nested":
            if order > 3:
                raise UnsupportedOrderError("nested route stops at order 3")
            terms = [a_ell_nested(ctx, ell, controls, cache)
                     for ell in range(1, order + 1)]
        else:
            raise ValueError(f"unknown series method {method!r}")

    partial = [M0.copy()]
    acc = IDENTITY.copy()
    for term in terms:
        acc = acc + term.A
        partial.append(M0 @ acc)
    est = max((t.quad_error for t in terms), default=controls.tol_quad)
    result = SeriesResult(M0=M0, terms=terms, partial_sums=partial, method=method,
                          error_estimate=float(est))
    if compare_exact:
        exact_res = _exact.transfer_matrix_exact(ctx, controls)
        result.exact = exact_res.M
        result.residual_norms = [max_abs(exact_res.M - p) for p in partial]
    return result


# ---------------------------------------------------------------------------
# worked example: locally periodic index profile
# ---------------------------------------------------------------------------

def _phase_quotient(d: float, L: float) -> complex:
    """(e^{i d L} - 1)/d, continued through the removable singularity d = 0."""
    y = 0.5 * d * L
    sinc = np.sinc(y / math.pi)   # sin(y)/y
    return 1j * L * np.exp(1j * y) * sinc


def a1_exp_pot_closed_form(eps: float, K: float, k: float, L: float
                           ) -> tuple[complex, complex]:
    """First-order closed forms for n = 1 + eps e^{iKx} on (0, L):

        A_1^{+-} = +- k eps (e^{i(K -+ 2k)L} - 1)/(K -+ 2k) + O(eps^2),

    returned as (A_1^-, A_1^+); the K = +-2k limits are evaluated through
    the sinc form of the difference quotient."""
    a_plus = k * eps * _phase_quotient(K - 2.0 * k, L)
    a_minus = -k * eps * _phase_quotient(K + 2.0 * k, L)
    return complex(a_minus), complex(a_plus)


def exp_pot_first_order_amplitudes(eps: float, K: float, k: float, L: float) -> dict:
    """First-order amplitudes of the locally periodic profile.

    The transmission and right-reflection formulas are unambiguous.  The
    source lists two candidate forms for the remaining (left) reflection
    amplitude, differing in the sign of the constant in the numerator; both
    are returned so the exact engine can arbitrate.
    """
    T = 1.0 + k * eps * _phase_quotient(K, L)
    Rr = k * eps * _phase_quotient(K - 2.0 * k, L)
    base = k * eps / (K + 2.0 * k)
    phase = np.exp(1j * (K + 2.0 * k) * L)
    return {
        "T": complex(T),
        "Rr": complex(Rr),
        "Rl_reading_minus": complex(base * (phase - 1.0)),
        "Rl_reading_plus": complex(base * (phase + 1.0)),
    }
