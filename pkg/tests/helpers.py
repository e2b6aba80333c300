"""Shared random-state and random-model generators for the test suite."""

from __future__ import annotations

import numpy as np

from qttsim import BathSpec, SystemSpec


def random_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_hermitian(rng, dim):
    a = random_complex(rng, (dim, dim))
    return (a + a.conj().T) / 2


def random_density(rng, dim):
    a = random_complex(rng, (dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_ket(rng, dim):
    psi = random_complex(rng, dim)
    return psi / np.linalg.norm(psi)


def random_pure_density(rng, dim):
    psi = random_ket(rng, dim)
    return np.outer(psi, psi.conj())


def random_system(rng, zeta_max=0.8):
    return SystemSpec(
        omega_s=rng.uniform(0.5, 1.5),
        omega_m=rng.uniform(0.1, 1.0),
        omega_d=rng.uniform(0.2, 1.2),
        zeta_sm=rng.uniform(0.0, zeta_max),
        zeta_md=rng.uniform(0.0, zeta_max),
        zeta_sd=rng.uniform(0.0, zeta_max),
    )


def random_baths(rng, coupling_range=(-5, -1), temperature_range=(0.05, 10.0)):
    return {
        k: BathSpec(
            temperature=rng.uniform(*temperature_range),
            coupling=10.0 ** rng.uniform(*coupling_range),
            ohmicity=float(rng.choice([0.5, 1.0, 1.5])),
        )
        for k in ("S", "M", "D")
    }
