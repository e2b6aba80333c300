"""GKSL dissipators, the vectorized Liouvillian, and steady-state solvers.

Vectorization is column-stacking throughout: ``A rho B`` maps to
``(B^T kron A) vec(rho)``.  The Liouvillian of the three-qubit model is a
dense 64x64 complex matrix.
"""

from __future__ import annotations

import math
from typing import Mapping

import numpy as np

from .baths import BathSpec, rates, resolve_cutoff
from .linalg import hermitize
from .model import RESERVOIRS, SpectralDecomposition, SystemSpec, decompose

NESS_RESIDUAL_RTOL = 1e-10   # ||L rho|| budget relative to ||L||
UNIQUENESS_FACTOR = 1e3      # second singular value must exceed this x smallest
TRACE_DRIFT_TOL = 1e-8       # allowed trace drift over a propagation
STEP_STABILITY_LIMIT = 0.1   # dt * max|eig(L)| must stay below this

# Residuals during nullspace refinement benefit from extra mantissa bits.
_WIDE = getattr(np, "complex256", complex)


class DegenerateSteadyStateError(RuntimeError):
    """The Liouvillian nullspace is not one-dimensional (or not normalizable)."""


def vec(rho) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    n = math.isqrt(x.size)
    if n * n != x.size:
        raise ValueError(f"vector of length {x.size} is not a vectorized square matrix")
    return x.reshape(n, n, order="F")


def _check_baths(baths: Mapping[str, BathSpec]) -> None:
    missing = [k for k in RESERVOIRS if k not in baths]
    if missing:
        raise ValueError(f"missing bath specification for reservoirs {missing}")


def dissipator(rho, reservoir: str, decomp: SpectralDecomposition, bath: BathSpec) -> np.ndarray:
    """Apply one reservoir's dissipator to a state.

    Standard sandwich form, per transition frequency: emission G(w) drives
    ``S rho S^dag - {S^dag S, rho}/2`` and absorption ``G(w) exp(-w/T)`` the
    reversed process.  The result is traceless, and Hermitian for Hermitian
    input.
    """
    if reservoir not in RESERVOIRS:
        raise ValueError(f"unknown reservoir {reservoir!r}; expected one of {RESERVOIRS}")
    rho = np.asarray(rho, dtype=complex)
    dim = decomp.dim
    if rho.shape != (dim, dim):
        raise ValueError(f"state has shape {rho.shape}, expected {(dim, dim)}")
    bath = resolve_cutoff(bath, decomp.eigen.values)
    out = np.zeros_like(rho)
    for w, s in zip(decomp.bohr, decomp.jump_ops[reservoir]):
        emission, absorption = rates(float(w), bath)
        sd = s.conj().T
        sds = sd @ s
        out += emission * (s @ rho @ sd - 0.5 * (sds @ rho + rho @ sds))
        if absorption != 0.0:
            ssd = s @ sd
            out += absorption * (sd @ rho @ s - 0.5 * (ssd @ rho + rho @ ssd))
    return out


def _sandwich_parts(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rate-free superoperators for one jump operator: (emission, absorption)."""
    eye = np.eye(s.shape[0], dtype=complex)
    sd = s.conj().T
    sds = sd @ s
    ssd = s @ sd
    em = np.kron(s.conj(), s) - 0.5 * (np.kron(eye, sds) + np.kron(sds.T, eye))
    ab = np.kron(s.T, sd) - 0.5 * (np.kron(eye, ssd) + np.kron(ssd.T, eye))
    return em, ab


class LiouvillianBuilder:
    """Assembles Liouvillians for many bath settings of one fixed system.

    The rate-independent superoperator pieces (one emission/absorption pair
    per reservoir and transition frequency) are computed once, so repeated
    builds during a temperature sweep reduce to scalar-weighted sums.
    """

    def __init__(self, decomp: SpectralDecomposition):
        self.decomp = decomp
        h = decomp.hamiltonian
        eye = np.eye(decomp.dim, dtype=complex)
        self.unitary = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
        self.parts = {
            k: [_sandwich_parts(s) for s in decomp.jump_ops[k]] for k in RESERVOIRS
        }

    def dissipator_superop(self, reservoir: str, bath: BathSpec) -> np.ndarray:
        bath = resolve_cutoff(bath, self.decomp.eigen.values)
        dim2 = self.decomp.dim**2
        out = np.zeros((dim2, dim2), dtype=complex)
        for w, (em_op, ab_op) in zip(self.decomp.bohr, self.parts[reservoir]):
            emission, absorption = rates(float(w), bath)
            out += emission * em_op
            if absorption != 0.0:
                out += absorption * ab_op
        return out

    def build(self, baths: Mapping[str, BathSpec]) -> np.ndarray:
        _check_baths(baths)
        lio = self.unitary.copy()
        for k in RESERVOIRS:
            lio += self.dissipator_superop(k, baths[k])
        return lio


def liouvillian_from_decomposition(
    decomp: SpectralDecomposition, baths: Mapping[str, BathSpec]
) -> np.ndarray:
    return LiouvillianBuilder(decomp).build(baths)


def build_liouvillian(
    spec: SystemSpec, baths: Mapping[str, BathSpec], binning_tol: float | None = None
) -> np.ndarray:
    """64x64 generator of the master equation under column vectorization."""
    decomp = decompose(spec) if binning_tol is None else decompose(spec, binning_tol)
    return liouvillian_from_decomposition(decomp, baths)


def trace_functional_residual(lio) -> float:
    """Norm of vec(identity)^dag L; zero means the generator preserves trace."""
    lio = np.asarray(lio, dtype=complex)
    n = math.isqrt(lio.shape[0])
    return float(np.linalg.norm(vec(np.eye(n)).conj() @ lio))


def solve_ness(lio, refine: int = 2) -> np.ndarray:
    """Stationary state from the smallest singular triplet of the Liouvillian.

    The SVD doubles as the uniqueness diagnostic: the nullspace is accepted
    only when the second-smallest singular value is well separated from the
    smallest.  Refinement passes reuse the factors to push the stationarity
    residual to the rounding floor (residuals are accumulated in extended
    precision where the platform provides it).
    """
    lio = np.asarray(lio, dtype=complex)
    if lio.ndim != 2 or lio.shape[0] != lio.shape[1]:
        raise ValueError(f"Liouvillian must be square, got shape {lio.shape}")
    u, s, vh = np.linalg.svd(lio)
    if s[-2] == 0.0 or s[-2] <= UNIQUENESS_FACTOR * s[-1]:
        raise DegenerateSteadyStateError(
            f"nullspace is not one-dimensional: smallest singular values "
            f"{s[-1]:.3e}, {s[-2]:.3e}"
        )
    x = vh[-1].conj()
    wide = lio.astype(_WIDE)
    for _ in range(max(int(refine), 0)):
        r = np.asarray(wide @ x.astype(_WIDE), dtype=complex)
        x = x - vh[:-1].conj().T @ ((u[:, :-1].conj().T @ r) / s[:-1])
        x = x / np.linalg.norm(x)

    rho = unvec(x)
    tr = complex(np.trace(rho))
    if abs(tr) < 1e-6:
        raise DegenerateSteadyStateError(
            f"null vector has near-zero trace ({abs(tr):.3e}); no normalizable steady state"
        )
    rho = hermitize(rho / tr)
    w, v = np.linalg.eigh(rho)
    if w[0] < -1e-10:
        raise RuntimeError(
            f"steady state has a non-physical eigenvalue {w[0]:.3e} < -1e-10"
        )
    if w[0] < 0.0:
        w = np.clip(w, 0.0, None)
        rho = (v * w) @ v.conj().T
        rho = rho / float(np.trace(rho).real)

    residual = float(np.linalg.norm(lio @ vec(rho)))
    if residual > NESS_RESIDUAL_RTOL * max(float(s[0]), 1e-300):
        raise RuntimeError(
            f"stationarity residual {residual:.3e} exceeds {NESS_RESIDUAL_RTOL:.0e} * ||L||"
        )
    return rho


def propagate(rho0, lio, t_final: float, dt: float) -> np.ndarray:
    """Classical fixed-step 4th-order Runge-Kutta on the vectorized equation.

    Serves as the independent long-time oracle for the nullspace solver.
    ``dt`` must satisfy dt * max|eig(L)| <= 0.1.
    """
    lio = np.asarray(lio, dtype=complex)
    rho0 = np.asarray(rho0, dtype=complex)
    if t_final < 0:
        raise ValueError(f"t_final must be >= 0, got {t_final}")
    if t_final == 0:
        return rho0.copy()
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    radius = float(np.max(np.abs(np.linalg.eigvals(lio))))
    if dt * radius > STEP_STABILITY_LIMIT:
        raise ValueError(
            f"step too large: dt * max|eig(L)| = {dt * radius:.3g} exceeds "
            f"{STEP_STABILITY_LIMIT}"
        )

    def step(y: np.ndarray, h: float) -> np.ndarray:
        k1 = lio @ y
        k2 = lio @ (y + 0.5 * h * k1)
        k3 = lio @ (y + 0.5 * h * k2)
        k4 = lio @ (y + h * k3)
        return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    y = vec(rho0)
    trace0 = complex(np.trace(rho0))
    n_full = int(t_final / dt)
    for _ in range(n_full):
        y = step(y, dt)
    remainder = t_final - n_full * dt
    if remainder > 1e-12 * dt:
        y = step(y, remainder)

    rho = unvec(y)
    drift = abs(complex(np.trace(rho)) - trace0)
    if drift > TRACE_DRIFT_TOL:
        raise RuntimeError(f"trace drifted by {drift:.3e} during propagation")
    return rho


def gibbs_state(hamiltonian, temperature: float) -> np.ndarray:
    """exp(-H/T) / Z via eigendecomposition; T = 0 gives the ground manifold."""
    h = np.asarray(hamiltonian, dtype=complex)
    w, v = np.linalg.eigh(h)
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        p = (w - w[0] <= 1e-12 * max(abs(w[0]), 1.0)).astype(float)
    else:
        p = np.exp(-(w - w[0]) / temperature)
    p = p / p.sum()
    return (v * p) @ v.conj().T
