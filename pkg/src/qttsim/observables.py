"""Steady-state heat currents, amplification factors, and the modulator fit."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .baths import BathSpec
from .dynamics import dissipator, liouvillian_from_decomposition, vec
from .model import RESERVOIRS, SpectralDecomposition

STATIONARITY_RTOL = 1e-8   # ||L rho|| / ||L|| limit for accepting a state
DIVERGENT_SLOPE = 1e-14    # |dI_M/dT_M| below this flags the point


@dataclass(frozen=True)
class CurrentTriple:
    """Heat currents into the system from the three reservoirs."""

    i_s: float
    i_m: float
    i_d: float

    def total(self) -> float:
        return self.i_s + self.i_m + self.i_d

    def max_abs(self) -> float:
        return max(abs(self.i_s), abs(self.i_m), abs(self.i_d))


def heat_currents(
    ness,
    decomp: SpectralDecomposition,
    baths: Mapping[str, BathSpec],
    liouvillian: np.ndarray | None = None,
) -> CurrentTriple:
    """I_k = Tr(H_S D_k[rho]) for a stationary state.

    The state is rejected unless it is stationary for the Liouvillian
    assembled from the same decomposition and baths (pass ``liouvillian`` to
    skip the rebuild).  At stationarity the three currents sum to zero.
    """
    rho = np.asarray(ness, dtype=complex)
    lio = (
        liouvillian_from_decomposition(decomp, baths)
        if liouvillian is None
        else np.asarray(liouvillian, dtype=complex)
    )
    residual = float(np.linalg.norm(lio @ vec(rho)))
    scale = max(float(np.linalg.norm(lio)), 1e-300)
    if residual > STATIONARITY_RTOL * scale:
        raise ValueError(
            f"state is not stationary: ||L rho|| = {residual:.3e} exceeds "
            f"{STATIONARITY_RTOL:.0e} * ||L|| = {STATIONARITY_RTOL * scale:.3e}"
        )
    h = decomp.hamiltonian
    vals = [
        float(np.trace(h @ dissipator(rho, k, decomp, baths[k])).real)
        for k in RESERVOIRS
    ]
    return CurrentTriple(*vals)


@dataclass(frozen=True)
class AmplificationPoint:
    """Signed response ratios at one modulator temperature.

    ``beta_s + beta_d = -1`` wherever the currents conserve energy; the
    conventional amplification factors are the magnitudes.
    ``trunc_err`` estimates the finite-difference truncation error of the
    signed sum; ``divergent`` marks points where the modulator current is
    flat to rounding and the ratios are meaningless.
    """

    t_m: float
    beta_s: float
    beta_d: float
    divergent: bool = False
    trunc_err: float = 0.0

    @property
    def beta_s_mag(self) -> float:
        return abs(self.beta_s)

    @property
    def beta_d_mag(self) -> float:
        return abs(self.beta_d)


def _first_derivative(f: np.ndarray, h: float) -> np.ndarray:
    """Central differences inside, second-order one-sided at the ends."""
    d = np.empty_like(f)
    d[1:-1] = (f[2:] - f[:-2]) / (2.0 * h)
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
    d[-1] = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * h)
    return d


def _third_derivative(f: np.ndarray, h: float) -> np.ndarray:
    """Rough third-derivative magnitudes for truncation estimates.

    Five-point central stencil where available; edge points copy the nearest
    interior estimate.  Grids too short to resolve a third derivative get 0.
    """
    n = len(f)
    d3 = np.zeros(n)
    if n >= 5:
        core = (f[4:] - 2.0 * f[3:-1] + 2.0 * f[1:-3] - f[:-4]) / (2.0 * h**3)
        d3[2:-2] = core
        d3[0] = d3[1] = core[0]
        d3[-1] = d3[-2] = core[-1]
    return d3


def amplification(
    points: Sequence[tuple[float, CurrentTriple]], step: float
) -> list[AmplificationPoint]:
    """Signed amplification factors on a uniform modulator-temperature grid.

    beta_S = (dI_S/dT_M) / (dI_M/dT_M) and likewise for the drain, by central
    differences on interior points and one-sided differences at the ends.
    """
    if len(points) < 3:
        raise ValueError(f"need at least 3 grid points, got {len(points)}")
    if not step > 0:
        raise ValueError(f"step must be > 0, got {step}")
    t = np.array([p[0] for p in points], dtype=float)
    if np.max(np.abs(np.diff(t) - step)) > 1e-9 * step:
        raise ValueError("grid is not uniform with the declared step")

    i_s = np.array([c.i_s for _, c in points])
    i_m = np.array([c.i_m for _, c in points])
    i_d = np.array([c.i_d for _, c in points])
    ds, dm, dd = (_first_derivative(f, step) for f in (i_s, i_m, i_d))
    d3s, d3m, d3d = (_third_derivative(f, step) for f in (i_s, i_m, i_d))

    out = []
    for i in range(len(t)):
        if abs(dm[i]) < DIVERGENT_SLOPE:
            out.append(
                AmplificationPoint(t[i], float("nan"), float("nan"), divergent=True,
                                   trunc_err=float("inf"))
            )
            continue
        beta_s = ds[i] / dm[i]
        beta_d = dd[i] / dm[i]
        err = (step**2 / 6.0) * (
            abs(d3s[i]) + abs(d3d[i]) + (abs(beta_s) + abs(beta_d)) * abs(d3m[i])
        ) / abs(dm[i])
        out.append(AmplificationPoint(t[i], beta_s, beta_d, trunc_err=err))
    return out


def linear_fit(points: Sequence[tuple[float, float]]) -> tuple[float, float, float]:
    """Least-squares line through (x, y) pairs: (slope, intercept, residual norm)."""
    if len(points) < 2:
        raise ValueError(f"need at least 2 points, got {len(points)}")
    x = np.array([p[0] for p in points], dtype=float)
    y = np.array([p[1] for p in points], dtype=float)
    if np.unique(x).size < 2:
        raise ValueError("need at least 2 distinct abscissae")
    design = np.stack([x, np.ones_like(x)], axis=1)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    residual = float(np.linalg.norm(y - design @ coef))
    return float(coef[0]), float(coef[1]), residual
