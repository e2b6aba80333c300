"""Correlation and distance measures on three-qubit states.

Entropies are in nats.  Negativity follows the convention that the
three-qubit GHZ state across any single-qubit cut gives exactly 1 (i.e.
twice the magnitude of the negative partial-transpose spectrum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .linalg import as_matrix, hermitize, partial_trace, partial_transpose, psd_sqrt

QUBIT_INDEX = {"S": 0, "M": 1, "D": 2}


def entropy(rho) -> float:
    """Von Neumann entropy -Tr rho ln rho, with 0 ln 0 = 0."""
    w = np.linalg.eigvalsh(hermitize(as_matrix(rho)))
    w = w[w > 0.0]
    return max(float(-np.sum(w * np.log(w))), 0.0)


def _indices(labels) -> list[int]:
    try:
        return [QUBIT_INDEX[lab] for lab in labels]
    except (KeyError, TypeError):
        raise ValueError(
            f"unknown qubit label in {labels!r}; expected labels from 'S', 'M', 'D'"
        ) from None


def mutual_info_2(rho, pair) -> float:
    """Mutual information of the reduced two-qubit state for the given pair.

    The third qubit is traced out first; tiny negative results (roundoff
    below the subadditivity bound) are clamped to zero.
    """
    idx = _indices(pair)
    if len(idx) != 2 or idx[0] == idx[1]:
        raise ValueError(f"pair must name two distinct qubits, got {pair!r}")
    a, b = sorted(idx)
    rho_ab = partial_trace(rho, keep=(a, b))
    m2 = (
        entropy(partial_trace(rho, keep=(a,)))
        + entropy(partial_trace(rho, keep=(b,)))
        - entropy(rho_ab)
    )
    if -1e-12 < m2 < 0.0:
        return 0.0
    return m2


def mutual_info_3(rho) -> float:
    """Tripartite mutual information of the full three-qubit state.

    S(ABC) + S(A) + S(B) + S(C) - S(AB) - S(AC) - S(BC); goes negative when
    the three parties share information that no single pair exposes.
    """
    singles = sum(entropy(partial_trace(rho, keep=(q,))) for q in range(3))
    pairs = sum(
        entropy(partial_trace(rho, keep=pair)) for pair in combinations(range(3), 2)
    )
    return entropy(rho) + singles - pairs


def negativity(rho, dims, transposed: int = 1) -> float:
    """Entanglement across the declared bipartition, from the PT spectrum.

    Sum of |mu| - mu over the eigenvalues mu of the partial transpose; PPT
    states give exactly 0.
    """
    mu = np.linalg.eigvalsh(hermitize(partial_transpose(rho, dims, transposed)))
    return float(np.sum(np.abs(mu) - mu))


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2, in [0, 1]."""
    root = psd_sqrt(sigma)
    w = np.linalg.eigvalsh(hermitize(root @ as_matrix(rho) @ root))
    # rounding-level eigenvalues would contribute sqrt(eps) each; drop them
    floor = 64.0 * np.finfo(float).eps * max(float(w[-1]), 0.0)
    w = np.where(w > floor, w, 0.0)
    return float(np.sum(np.sqrt(w)) ** 2)


@dataclass(frozen=True, eq=False)
class ReferenceState:
    """A named pure three-qubit reference state and its projector."""

    label: str
    ket: np.ndarray
    state: np.ndarray


def reference_state(label: str) -> ReferenceState:
    """|W> or |GHZ> in the |j_S j_M j_D> product basis."""
    ket = np.zeros(8, dtype=complex)
    if label == "W":
        ket[[1, 2, 4]] = 1.0 / math.sqrt(3.0)  # |001>, |010>, |100>
    elif label == "GHZ":
        ket[[0, 7]] = 1.0 / math.sqrt(2.0)  # |000>, |111>
    else:
        raise ValueError(f"unknown reference state {label!r}; expected 'W' or 'GHZ'")
    return ReferenceState(label=label, ket=ket, state=np.outer(ket, ket.conj()))
