"""Built-in potential corpus and ingestion of sampled potentials.

All potentials are complex-valued functions v(x) that vanish identically
outside a finite support [x-, x+] (for the Gaussian the support is a
truncation interval chosen so the dropped tail is negligible at the given
wavenumber).  Positions are in length units, v in 1/length^2 so that
v/k^2 is dimensionless.

Evaluation is vectorized: `evaluate` accepts scalars or numpy arrays.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator, interp1d

from .errors import MalformedFileError

# Truncation rule for infinite-range profiles: cut where |v| < TRUNC_EPS * k^2.
TRUNC_EPS = 1e-12


class Potential:
    """Base interface; concrete kinds fill in the fields below."""

    kind: str = "abstract"
    #: x positions where v jumps (exactly the discontinuity set)
    breakpoints: tuple[float, ...] = ()
    #: True when evaluate() needs the wavenumber (index-first profiles)
    requires_k: bool = False
    #: True when the support is a truncation of an infinite range
    truncated: bool = False
    #: True when derivative() returns the analytic v'
    has_derivative: bool = False

    def support(self, k: float, scale: float = 1.0) -> tuple[float, float]:
        """Support [x-, x+]; `scale` widens truncated supports for refinement."""
        raise NotImplementedError

    def evaluate(self, x, k: Optional[float] = None):
        """v(x); exactly 0 outside the support."""
        raise NotImplementedError

    def derivative(self, x, k: Optional[float] = None):
        """Analytic v'(x) where defined; only when has_derivative."""
        raise NotImplementedError

    def index(self, x):
        """Analytic refractive profile n(x) for index-first kinds, else None."""
        return None

    def index_derivative(self, x):
        """dn/dx for index-first kinds, else None."""
        return None

    def params(self) -> dict:
        """Parameter dict for reporting."""
        return {}

    @property
    def is_smooth(self) -> bool:
        return not self.breakpoints


class FreePotential(Potential):
    """v = 0 everywhere; degenerate (empty) support."""

    kind = "free"

    def support(self, k: float, scale: float = 1.0) -> tuple[float, float]:
        return (0.0, 0.0)

    def evaluate(self, x, k=None):
        return np.zeros_like(np.asarray(x, dtype=float), dtype=complex) \
            if np.ndim(x) else 0j

    def derivative(self, x, k=None):
        return np.zeros_like(np.asarray(x, dtype=float), dtype=complex) \
            if np.ndim(x) else 0j

    has_derivative = True


class RectangularBarrier(Potential):
    """v = v0 on [x0, x0 + L], 0 elsewhere."""

    kind = "rectangular"

    def __init__(self, v0: complex, L: float, x0: float = 0.0):
        if L <= 0:
            raise ValueError("barrier length must be positive")
        self.v0 = complex(v0)
        self.L = float(L)
        self.x0 = float(x0)
        self.breakpoints = (self.x0, self.x0 + self.L)
        self.has_derivative = True  # zero a.e.; undefined at the edges

    def support(self, k: float, scale: float = 1.0) -> tuple[float, float]:
        return (self.x0, self.x0 + self.L)

    def evaluate(self, x, k=None):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.x0) & (x <= self.x0 + self.L)
        out = np.where(inside, self.v0, 0j)
        return out if np.ndim(out) else complex(out)

    def derivative(self, x, k=None):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        return out if np.ndim(out) else 0j

    def params(self) -> dict:
        return {"v0": self.v0, "L": self.L, "x0": self.x0}


class GaussianPotential(Potential):
    """v = v0 * exp(-(x - center)^2 / (2 sigma^2)); truncated support."""

    kind = "gaussian"
    truncated = True
    has_derivative = True

    def __init__(self, v0: complex, sigma: float, center: float = 0.0):
        if sigma <= 0:
            raise ValueError("sigma must be positive")
        self.v0 = complex(v0)
        self.sigma = float(sigma)
        self.center = float(center)

    def support(self, k: float, scale: float = 1.0) -> tuple[float, float]:
        # radius where |v| drops to TRUNC_EPS * k^2
        ratio = abs(self.v0) / (TRUNC_EPS * k * k)
        if ratio <= 1.0:
            return (self.center, self.center)
        r = scale * self.sigma * math.sqrt(2.0 * math.log(ratio))
        return (self.center - r, self.center + r)

    def evaluate(self, x, k=None):
        x = np.asarray(x, dtype=float)
        out = self.v0 * np.exp(-((x - self.center) ** 2) / (2.0 * self.sigma ** 2))
        return out if np.ndim(out) else complex(out)

    def derivative(self, x, k=None):
        x = np.asarray(x, dtype=float)
        gauss = np.exp(-((x - self.center) ** 2) / (2.0 * self.sigma ** 2))
        out = self.v0 * gauss * (-(x - self.center) / self.sigma ** 2)
        return out if np.ndim(out) else complex(out)

    def params(self) -> dict:
        return {"v0": self.v0, "sigma": self.sigma, "center": self.center}


class ExpIndexProfile(Potential):
    """Locally periodic profile n(x) = 1 + eps * e^{iKx} on (0, L).

    Defined index-first: n is the primary datum and v(x) = k^2 (1 - n(x)^2)
    is derived, so evaluate() needs the wavenumber.  n jumps at both support
    edges (n(0+) = 1 + eps), so the edges are breakpoints.
    """

    kind = "exp-profile"
    requires_k = True

    def __init__(self, eps: float, K: float, L: float):
        if K <= 0 or L <= 0:
            raise ValueError("K and L must be positive")
        self.eps = float(eps)
        self.K = float(K)
        self.L = float(L)
        self.breakpoints = (0.0, self.L)

    def support(self, k: float, scale: float = 1.0) -> tuple[float, float]:
        return (0.0, self.L)

    def _inside(self, x):
        return (x >= 0.0) & (x <= self.L)

    def index(self, x):
        x = np.asarray(x, dtype=float)
        n = np.where(self._inside(x), 1.0 + self.eps * np.exp(1j * self.K * x), 1.0 + 0j)
        return n if np.ndim(n) else complex(n)

    def index_derivative(self, x):
        x = np.asarray(x, dtype=float)
        dn = np.where(self._inside(x),
                      1j * self.K * self.eps * np.exp(1j * self.K * x), 0j)
        return dn if np.ndim(dn) else complex(dn)

    def evaluate(self, x, k=None):
        if k is None:
            raise ValueError("exp-profile potential requires the wavenumber k")
        n = self.index(x)
        out = k * k * (1.0 - np.asarray(n) ** 2)
        x = np.asarray(x, dtype=float)
        out = np.where(self._inside(x), out, 0j)
        return out if np.ndim(out) else complex(out)

    has_derivative = True

    def derivative(self, x, k=None):
        if k is None:
            raise ValueError("exp-profile potential requires the wavenumber k")
        n = np.asarray(self.index(x))
        dn = np.asarray(self.index_derivative(x))
        out = -2.0 * k * k * n * dn
        x = np.asarray(x, dtype=float)
        out = np.where(self._inside(x), out, 0j)
        return out if np.ndim(out) else complex(out)

    def params(self) -> dict:
        return {"eps": self.eps, "K": self.K, "L": self.L}


class SampledPotential(Potential):
    """Potential interpolated from samples on a strictly increasing grid."""

    kind = "sampled"

    def __init__(self, xs: np.ndarray, values: np.ndarray, interpolation: str = "cubic"):
        xs = np.asarray(xs, dtype=float)
        values = np.asarray(values, dtype=complex)
        if xs.ndim != 1 or xs.size < 2:
            raise MalformedFileError("need at least two sample points")
        if not np.all(np.diff(xs) > 0):
            raise MalformedFileError("x column must be strictly increasing")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(values.real))
                and np.all(np.isfinite(values.imag))):
            raise MalformedFileError("non-finite sample values")
        if interpolation not in ("linear", "cubic"):
            raise ValueError(f"unknown interpolation {interpolation!r}")
        self.xs = xs
        self.values = values
        self.interpolation = interpolation
        if interpolation == "cubic":
            # PCHIP: shape-preserving, no overshoot between nodes
            self._re = PchipInterpolator(xs, values.real, extrapolate=False)
            self._im = PchipInterpolator(xs, values.imag, extrapolate=False)
            self._dre = self._re.derivative()
            self._dim = self._im.derivative()
            self.has_derivative = True
        else:
            self._re = interp1d(xs, values.real, kind="linear", bounds_error=False,
                                fill_value=0.0)
            self._im = interp1d(xs, values.imag, kind="linear", bounds_error=False,
                                fill_value=0.0)
            self.has_derivative = False
        # endpoints with nonzero samples are jump discontinuities
        bps = []
        if abs(values[0]) > 0:
            bps.append(float(xs[0]))
        if abs(values[-1]) > 0:
            bps.append(float(xs[-1]))
        self.breakpoints = tuple(bps)

    @property
    def min_spacing(self) -> float:
        return float(np.min(np.diff(self.xs)))

    def support(self, k: float, scale: float = 1.0) -> tuple[float, float]:
        return (float(self.xs[0]), float(self.xs[-1]))

    def evaluate(self, x, k=None):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.xs[0]) & (x <= self.xs[-1])
        xc = np.clip(x, self.xs[0], self.xs[-1])
        vals = np.asarray(self._re(xc), dtype=float) + 1j * np.asarray(self._im(xc), dtype=float)
        out = np.where(inside, vals, 0j)
        return out if np.ndim(out) else complex(out)

    def derivative(self, x, k=None):
        if not self.has_derivative:
            raise NotImplementedError("linear interpolation has no smooth derivative")
        x = np.asarray(x, dtype=float)
        inside = (x > self.xs[0]) & (x < self.xs[-1])
        xc = np.clip(x, self.xs[0], self.xs[-1])
        vals = np.asarray(self._dre(xc), dtype=float) + 1j * np.asarray(self._dim(xc), dtype=float)
        out = np.where(inside, vals, 0j)
        return out if np.ndim(out) else complex(out)

    def params(self) -> dict:
        return {"points": int(self.xs.size), "interpolation": self.interpolation}


def load_sampled(path, interpolation: str = "cubic") -> SampledPotential:
    """Read a sampled potential file.

    Format: UTF-8 text, '#' starts a comment line, data rows are
    whitespace-separated `x  Re(v)  [Im(v)]` with x strictly ascending.
    """
    xs: list[float] = []
    vs: list[complex] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            cols = line.split()
            if len(cols) not in (2, 3):
                raise MalformedFileError(
                    f"{path}:{lineno}: expected 2 or 3 columns, got {len(cols)}")
            try:
                x = float(cols[0])
                re = float(cols[1])
                im = float(cols[2]) if len(cols) == 3 else 0.0
            except ValueError as exc:
                raise MalformedFileError(f"{path}:{lineno}: {exc}") from exc
            if not (math.isfinite(x) and math.isfinite(re) and math.isfinite(im)):
                raise MalformedFileError(f"{path}:{lineno}: non-finite value")
            xs.append(x)
            vs.append(complex(re, im))
    if len(xs) < 2:
        raise MalformedFileError(f"{path}: need at least two data rows")
    xs_arr = np.asarray(xs)
    if not np.all(np.diff(xs_arr) > 0):
        raise MalformedFileError(f"{path}: x column must be strictly increasing")
    return SampledPotential(xs_arr, np.asarray(vs), interpolation=interpolation)


def make_potential(kind: str, params: Optional[dict] = None) -> Potential:
    """Factory used by the CLI; `params` keys depend on the kind."""
    params = dict(params or {})
    kind = kind.lower()
    if kind == "free":
        return FreePotential()
    if kind == "rectangular":
        return RectangularBarrier(v0=params.pop("v0"), L=params.pop("L"),
                                  x0=params.pop("x0", 0.0))
    if kind == "gaussian":
        return GaussianPotential(v0=params.pop("v0"), sigma=params.pop("sigma"),
                                 center=params.pop("center", 0.0))
    if kind in ("exp-profile", "exp_profile", "exp"):
        return ExpIndexProfile(eps=params.pop("eps"), K=params.pop("K"),
                               L=params.pop("L"))
    if kind == "sampled":
        return load_sampled(params.pop("path"),
                            interpolation=params.pop("interpolation", "cubic"))
    raise ValueError(f"unknown potential kind {kind!r}")
