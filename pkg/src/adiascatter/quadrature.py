"""Panel-based Gauss-Legendre quadrature with cumulative (spectral
integration) matrices and a linear-phase Filon rule.

The correction integrals are iterated integrals over an ordered simplex, so
besides plain panel sums we need the cumulative integral evaluated *at the
quadrature nodes themselves*.  On each panel the integrand is resolved by a
fixed Gauss-Legendre rule; expanding in Legendre polynomials gives the
antiderivative at the nodes exactly for polynomial integrands up to the
rule's degree (the cumulative matrix below).  Panels are sized so the fast
phase advances by at most `phase_cap` per panel, which keeps the integrand
effectively polynomial.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import legvander
from scipy.special import spherical_jn


@lru_cache(maxsize=None)
def gl_rule(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(m)
    return x, w


@lru_cache(maxsize=None)
def cumulative_matrix(m: int) -> np.ndarray:
    """S with (S f)_j ~ int_{-1}^{x_j} f, exact for deg(f) <= m-1.

    f is expanded in Legendre polynomials from its values at the m GL nodes
    (the discrete transform is exact at this degree), and the antiderivative
    int_{-1}^{x} P_p = (P_{p+1}(x) - P_{p-1}(x))/(2p+1) is evaluated back at
    the nodes.
    """
    x, w = gl_rule(m)
    V = legvander(x, m)            # V[j, p] = P_p(x_j), p = 0..m
    p = np.arange(m)
    C = ((2 * p + 1) / 2.0)[:, None] * (V[:, :m].T * w[None, :])  # values -> coeffs
    B = np.empty((m, m))
    B[:, 0] = x + 1.0
    for q in range(1, m):
        B[:, q] = (V[:, q + 1] - V[:, q - 1]) / (2 * q + 1)
    return B @ C


def segment_edges(a: float, b: float, interior: tuple[float, ...],
                  max_len: float, min_per_segment: int = 1) -> np.ndarray:
    """Panel edges on [a, b], split at interior points, each piece subdivided
    uniformly so no panel exceeds max_len."""
    cuts = [a] + [p for p in sorted(interior) if a < p < b] + [b]
    edges = [a]
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        npan = max(min_per_segment, math.ceil((hi - lo) / max_len)) if hi > lo else 0
        if npan:
            edges.extend(np.linspace(lo, hi, npan + 1)[1:])
    return np.asarray(edges, dtype=float)


class PanelGrid:
    """Mapped GL nodes/weights for a list of panel edges."""

    def __init__(self, edges: np.ndarray, m: int):
        edges = np.asarray(edges, dtype=float)
        if edges.size < 2:
            raise ValueError("need at least one panel")
        self.edges = edges
        self.m = m
        xi, wi = gl_rule(m)
        self.half = 0.5 * np.diff(edges)                       # (P,)
        mid = 0.5 * (edges[:-1] + edges[1:])
        self.nodes = mid[:, None] + self.half[:, None] * xi[None, :]   # (P, m)
        self.weights = self.half[:, None] * wi[None, :]                # (P, m)

    @property
    def npanels(self) -> int:
        return self.half.size

    def integrate(self, values: np.ndarray) -> complex:
        """Integral over the whole grid of a function sampled at the nodes."""
        return complex(np.sum(values * self.weights))

    def panel_totals(self, values: np.ndarray) -> np.ndarray:
        return np.sum(values * self.weights, axis=1)

    def cumulative_edges(self, values: np.ndarray) -> np.ndarray:
        """Cumulative integral from edges[0] to every edge; shape (P+1,)."""
        out = np.zeros(self.npanels + 1, dtype=complex)
        np.cumsum(self.panel_totals(values), out=out[1:])
        return out

    def cumulative_nodes(self, values: np.ndarray) -> np.ndarray:
        """Cumulative integral from edges[0] to each node; shape (P, m)."""
        S = cumulative_matrix(self.m)
        within = self.half[:, None] * (values @ S.T)
        starts = self.cumulative_edges(values)[:-1]
        return starts[:, None] + within

    def refined(self) -> "PanelGrid":
        """Same span with every panel bisected."""
        mids = 0.5 * (self.edges[:-1] + self.edges[1:])
        new = np.empty(2 * self.npanels + 1)
        new[0::2] = self.edges
        new[1::2] = mids
        return PanelGrid(new, self.m)


def filon_panel_integrals(env_values: np.ndarray, grid: PanelGrid,
                          omega: float) -> complex:
    """int env(t) e^{i omega t} dt with env sampled at the grid nodes.

    Per panel the envelope is expanded in Legendre polynomials and the
    oscillatory moments are exact:  int_{-1}^{1} P_p(x) e^{icx} dx
    = 2 i^p j_p(c)  with j_p the spherical Bessel function.  Panels only
    need to resolve the envelope, not the e^{i omega t} factor.
    """
    m = grid.m
    x, w = gl_rule(m)
    V = legvander(x, m - 1)
    p = np.arange(m)
    C = ((2 * p + 1) / 2.0)[:, None] * (V.T * w[None, :])   # values -> coeffs
    coeffs = env_values @ C.T                               # (P, m)
    c = omega * grid.half                                   # (P,)
    jp = spherical_jn(p[:, None], np.abs(c)[None, :])       # (m, P)
    moments = 2.0 * (1j ** p)[:, None] * jp                 # for |c|
    neg = c < 0
    if np.any(neg):
        moments = np.where(neg[None, :], np.conj(moments), moments)
    mid = 0.5 * (grid.edges[:-1] + grid.edges[1:])
    per_panel = grid.half * np.exp(1j * omega * mid) * np.sum(coeffs.T * moments, axis=0)
    return complex(np.sum(per_panel))
