"""Reservoir phenomenology: spectral densities, occupations, transition rates.

All functions are scalar and pure.  Negative frequencies never reach the
spectral density; absorption is obtained from emission through detailed
balance instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

BOLTZMANN_FLUSH = 700.0  # exp(-x) is flushed to exactly 0 beyond this x
CUTOFF_FACTOR = 10.0     # default cutoff: 10 x the largest |eigenvalue|


@dataclass(frozen=True)
class BathSpec:
    """One bosonic reservoir.

    ``cutoff = None`` means "derive from the system spectrum at assembly
    time" (see :func:`resolve_cutoff`).  ``ohmicity`` < 1 is sub-Ohmic,
    1 Ohmic, > 1 super-Ohmic.
    """

    temperature: float
    coupling: float
    ohmicity: float = 1.0
    cutoff: float | None = None

    def __post_init__(self) -> None:
        if not (np.isfinite(self.temperature) and self.temperature >= 0):
            raise ValueError(f"temperature must be >= 0, got {self.temperature}")
        if not (np.isfinite(self.coupling) and self.coupling >= 0):
            raise ValueError(f"coupling must be >= 0, got {self.coupling}")
        if not (np.isfinite(self.ohmicity) and self.ohmicity > 0):
            raise ValueError(f"ohmicity must be > 0, got {self.ohmicity}")
        if self.cutoff is not None and not (np.isfinite(self.cutoff) and self.cutoff > 0):
            raise ValueError(f"cutoff must be > 0 when given, got {self.cutoff}")


def default_cutoff(eigenvalues) -> float:
    """Cutoff far above every system scale: 10 x the largest |eigenvalue|."""
    return CUTOFF_FACTOR * float(np.max(np.abs(np.asarray(eigenvalues, dtype=float))))


def resolve_cutoff(bath: BathSpec, eigenvalues) -> BathSpec:
    """Fill in the default cutoff from the actual spectrum when unset."""
    if bath.cutoff is not None:
        return bath
    return replace(bath, cutoff=default_cutoff(eigenvalues))


def spectral_density(omega: float, bath: BathSpec) -> float:
    """J(w) = lambda * w_c * (w / w_c)^s * exp(-w / w_c)  for w >= 0."""
    if omega < 0:
        raise ValueError(
            "spectral density is defined for omega >= 0; negative frequencies "
            "enter through detailed balance, not through J"
        )
    if bath.cutoff is None:
        raise ValueError("bath cutoff is unresolved; call resolve_cutoff first")
    if omega == 0.0:
        return 0.0
    x = omega / bath.cutoff
    return bath.coupling * bath.cutoff * x**bath.ohmicity * math.exp(-x)


def bose_occupation(omega: float, temperature: float) -> float:
    """Mean thermal occupation 1 / (exp(w/T) - 1); exactly 0 at T = 0."""
    if not omega > 0:
        raise ValueError(f"omega must be > 0, got {omega}")
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return 0.0
    x = omega / temperature
    if x > BOLTZMANN_FLUSH:
        return 0.0
    return 1.0 / math.expm1(x)


def rates(omega: float, bath: BathSpec) -> tuple[float, float]:
    """(emission, absorption) rates at transition frequency ``omega`` > 0.

    Emission carries J(w) (n + 1), absorption J(w) n; their ratio is the
    Boltzmann factor exp(-w/T) (detailed balance), identically 0 at T = 0.
    """
    if not omega > 0:
        raise ValueError(f"omega must be > 0, got {omega}")
    j = spectral_density(omega, bath)
    n = bose_occupation(omega, bath.temperature)
    return j * (n + 1.0), j * n
