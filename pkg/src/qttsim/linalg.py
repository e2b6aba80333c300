"""Dense complex matrix kernels shared by every other module.

Operators, density matrices and jump operators are all plain
``numpy.ndarray`` objects with ``complex128`` entries; the helpers here add
the validation, deterministic phase conventions and multi-qubit
reshaping that the physics layers rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERM_RTOL = 1e-12      # Hermiticity tolerance, relative to max |entry|
PSD_REJECT_TOL = 1e-9  # eigenvalues below -this are non-physical


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex array (no copy when already one)."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    return m


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def hermitize(a) -> np.ndarray:
    """Hermitian part (A + A^dag) / 2."""
    m = as_matrix(a)
    return (m + m.conj().T) / 2


def require_hermitian(a, rtol: float = HERM_RTOL, name: str = "matrix") -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} is not square: shape {m.shape}")
    scale = max(max_abs(m), 1e-300)
    dev = max_abs(m - m.conj().T)
    if dev > rtol * scale:
        raise ValueError(
            f"{name} is not Hermitian: max|A - A^dag| = {dev:.3e} exceeds "
            f"{rtol:.1e} * max|A| = {rtol * scale:.3e}"
        )
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(as_matrix(a), as_matrix(b))


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Spectral data of a Hermitian matrix: values ascending, columns orthonormal."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def hermitian_eig(a, rtol: float = HERM_RTOL) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix with deterministic phases.

    Eigenvalues come out ascending.  Each eigenvector is rescaled so that its
    largest-magnitude component (first such, on ties) is real and positive,
    which keeps downstream operator constructions reproducible run to run.
    """
    m = require_hermitian(a, rtol=rtol)
    values, vectors = np.linalg.eigh(m)
    vectors = vectors.copy()
    for i in range(vectors.shape[1]):
        col = vectors[:, i]
        pivot = col[int(np.argmax(np.abs(col)))]
        if abs(pivot) > 0:
            vectors[:, i] = col * (abs(pivot) / pivot)
    return EigenSystem(values=values, vectors=vectors)


def _infer_qubit_dims(n: int) -> tuple[int, ...]:
    nq = n.bit_length() - 1
    if n <= 0 or 2**nq != n:
        raise ValueError(f"dimension {n} is not a power of 2; pass dims explicitly")
    return (2,) * nq


def partial_trace(rho, keep, dims=None) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` defaults to qubit factors ``(2, ..., 2)``.  ``keep`` is a set of
    subsystem indices; their relative order in the result follows the input
    ordering.
    """
    m = as_matrix(rho)
    n = m.shape[0]
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"state must be square, got shape {m.shape}")
    dims = _infer_qubit_dims(n) if dims is None else tuple(int(d) for d in dims)
    if int(np.prod(dims)) != n:
        raise ValueError(f"dims {dims} do not factor dimension {n}")
    keep = sorted({int(k) for k in keep})
    if not keep or keep[0] < 0 or keep[-1] >= len(dims):
        raise ValueError(f"invalid subsystem index set {keep} for {len(dims)} subsystems")
    work = m.reshape(dims + dims)
    for q in reversed([q for q in range(len(dims)) if q not in keep]):
        work = np.trace(work, axis1=q, axis2=q + work.ndim // 2)
    d_out = int(np.prod([dims[k] for k in keep]))
    return work.reshape(d_out, d_out)


def partial_transpose(rho, dims, transposed: int) -> np.ndarray:
    """Transpose one factor of a bipartite state.

    The factorization must be declared via ``dims = (dA, dB)``;
    ``transposed`` selects the factor (0 or 1).
    """
    m = as_matrix(rho)
    n = m.shape[0]
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"state must be square, got shape {m.shape}")
    if dims is None or len(tuple(dims)) != 2:
        raise ValueError("bipartite factorization must be declared as dims=(dA, dB)")
    da, db = (int(d) for d in dims)
    if da * db != n:
        raise ValueError(f"dims {(da, db)} do not factor dimension {n}")
    if transposed not in (0, 1):
        raise ValueError(f"transposed subsystem must be 0 or 1, got {transposed}")
    t = m.reshape(da, db, da, db)
    t = t.transpose(2, 1, 0, 3) if transposed == 0 else t.transpose(0, 3, 2, 1)
    return t.reshape(n, n)


def psd_sqrt(rho, reject_tol: float = PSD_REJECT_TOL) -> np.ndarray:
    """Principal square root of a positive-semidefinite Hermitian matrix.

    Eigenvalues in ``[-reject_tol, 0)`` are treated as rounding noise and
    clamped to zero; anything below that is rejected as non-physical.
    """
    m = require_hermitian(rho)
    w, v = np.linalg.eigh(m)
    if w.size and w[0] < -reject_tol:
        raise ValueError(f"matrix is not PSD: smallest eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def trace_norm(a) -> float:
    """Sum of absolute eigenvalues of the Hermitian part.

    Intended for Hermitian matrices and differences of them; taking the
    Hermitian part keeps rounding-level asymmetry from mattering.
    """
    w = np.linalg.eigvalsh(hermitize(a))
    return float(np.sum(np.abs(w)))


def trace_distance(rho, sigma) -> float:
    """Half the trace norm of the difference of two Hermitian matrices."""
    return 0.5 * trace_norm(as_matrix(rho) - as_matrix(sigma))
