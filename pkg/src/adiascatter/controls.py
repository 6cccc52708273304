"""Numerical control knobs with the package-wide defaults."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Controls:
    # ODE integration (exact engine, Volterra recursion)
    tol_ode_rel: float = 1e-10
    tol_ode_abs: float = 1e-12
    ode_method: str = "rk"          # "rk" (DOP853) or "magnus" (midpoint exponential)

    # quadrature (phase integrals, correction terms)
    tol_quad: float = 1e-10
    panel_nodes: int = 16           # Gauss-Legendre nodes per panel
    phase_cap: float = math.pi / 4  # max advance of the fast phase per panel
    filon_k_threshold: float = 40.0  # switch single integrals to the linear-phase rule

    # series
    series_method: str = "auto"     # "auto" | "volterra" | "ibp" | "nested"

    # thresholds
    singularity_tol: float = 1e-12  # |M22| below this -> spectral singularity
    degeneracy_tol: float = 1e-8    # |n| below this -> degenerate spectrum
    branch_samples: int = 4097      # points of the branch-continuation walk
    branch_margin: float = 1e-6     # relative margin below which the walk is ambiguous
    fd_step_scale: float = 1e-6     # h = fd_step_scale * max(1, |tau|) for dn/dtau

    # truncated supports
    max_truncation_doublings: int = 6

    def with_(self, **kwargs) -> "Controls":
        return replace(self, **kwargs)


DEFAULT_CONTROLS = Controls()
