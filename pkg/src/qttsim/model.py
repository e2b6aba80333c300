"""Three-qubit system: Hamiltonian, spectrum, and frequency-resolved jump operators.

Conventions, shared project-wide:

* tensor order is source (x) modulator (x) drain, basis ``|j_S j_M j_D>``;
* ``sigma_z |j> = (-1)**j |j>``, so ``|0>`` is the +1 eigenstate;
* energies are in units of the source qubit splitting (hbar = k_B = 1).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import EigenSystem, hermitian_eig, kron

RESERVOIRS = ("S", "M", "D")

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

BINNING_TOL = 1e-9  # relative width for grouping transition frequencies


def site_operator(op, site: int) -> np.ndarray:
    """Embed a single-qubit operator at position ``site`` of the S-M-D chain."""
    if site not in (0, 1, 2):
        raise ValueError(f"site must be 0, 1 or 2, got {site}")
    factors = [IDENTITY_2, IDENTITY_2, IDENTITY_2]
    factors[site] = np.asarray(op, dtype=complex)
    return kron(kron(factors[0], factors[1]), factors[2])


@dataclass(frozen=True)
class SystemSpec:
    """Qubit splittings and two-body coupling constants.

    ``omega_*`` are the free splittings, ``zeta_*`` the sigma^y sigma^y
    coupling strengths of the three bonds.
    """

    omega_s: float
    omega_m: float
    omega_d: float
    zeta_sm: float = 0.0
    zeta_md: float = 0.0
    zeta_sd: float = 0.0

    def __post_init__(self) -> None:
        for name in ("omega_s", "omega_m", "omega_d"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite number, got {v}")
        for name in ("zeta_sm", "zeta_md", "zeta_sd"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


def build_hamiltonian(spec: SystemSpec) -> np.ndarray:
    """8x8 Hermitian matrix: free splittings plus all three sigma^y sigma^y bonds."""
    sz = [site_operator(SIGMA_Z, k) for k in range(3)]
    sy = [site_operator(SIGMA_Y, k) for k in range(3)]
    h = 0.5 * (spec.omega_s * sz[0] + spec.omega_m * sz[1] + spec.omega_d * sz[2])
    h = h + spec.zeta_sm * (sy[0] @ sy[1])
    h = h + spec.zeta_md * (sy[1] @ sy[2])
    h = h + spec.zeta_sd * (sy[0] @ sy[2])
    return h


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Spectrum plus the per-reservoir transition operators, grouped by frequency.

    ``jump_ops[k][i]`` lowers the system energy by ``bohr[i]`` through the
    sigma^y coupling to reservoir ``k``; ``zero_modes[k]`` holds the
    energy-diagonal remainder (kept for completeness checks, excluded from
    the dissipators).
    """

    spec: SystemSpec
    hamiltonian: np.ndarray
    eigen: EigenSystem
    bohr: np.ndarray
    jump_ops: dict[str, list[np.ndarray]]
    zero_modes: dict[str, np.ndarray]

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


def decompose(spec: SystemSpec, binning_tol: float = BINNING_TOL) -> SpectralDecomposition:
    """Diagonalize the Hamiltonian and build the frequency-resolved jump operators.

    Transition gaps closer than ``binning_tol * max|E|`` are treated as one
    frequency and their projected operators summed; gaps within that width of
    zero go to the diagonal remainder.  Degenerate eigenvalues are legal (the
    construction falls back to subspace projectors) but reported, since the
    intended parameter regimes are nondegenerate.
    """
    h = build_hamiltonian(spec)
    eig = hermitian_eig(h)
    e, v = eig.values, eig.vectors
    dim = len(e)
    width = binning_tol * max(float(np.max(np.abs(e))), 1e-300)

    if dim > 1 and float(np.min(np.diff(e))) <= width:
        warnings.warn(
            "degenerate eigenvalues detected; transitions inside the degenerate "
            "subspace are grouped into the zero-frequency remainder",
            stacklevel=2,
        )

    # Positive transition gaps, clustered into frequency bins.
    gaps = sorted(
        (float(e[i] - e[j]), i, j)
        for i in range(dim)
        for j in range(dim)
        if e[i] - e[j] > width
    )
    bins: list[list[tuple[float, int, int]]] = []
    for item in gaps:
        if bins and item[0] - bins[-1][-1][0] <= width:
            bins[-1].append(item)
        else:
            bins.append([item])
    for members in bins:
        if members[-1][0] - members[0][0] > width:
            warnings.warn(
                f"frequency bin around {members[0][0]:.6g} spans more than the "
                "binning width; distinct transitions were merged",
                stacklevel=2,
            )
    bohr = np.array([np.mean([g for g, _, _ in members]) for members in bins])

    zero_mask = np.abs(e[:, None] - e[None, :]) <= width
    jump_ops: dict[str, list[np.ndarray]] = {}
    zero_modes: dict[str, np.ndarray] = {}
    for site, label in enumerate(RESERVOIRS):
        coupling = v.conj().T @ site_operator(SIGMA_Y, site) @ v  # energy basis
        ops = []
        for members in bins:
            sel = np.zeros_like(coupling)
            for _, i, j in members:
                sel[j, i] = coupling[j, i]
            ops.append(v @ sel @ v.conj().T)
        jump_ops[label] = ops
        zero_modes[label] = v @ np.where(zero_mask, coupling, 0.0) @ v.conj().T

    return SpectralDecomposition(
        spec=spec,
        hamiltonian=h,
        eigen=eig,
        bohr=bohr,
        jump_ops=jump_ops,
        zero_modes=zero_modes,
    )
