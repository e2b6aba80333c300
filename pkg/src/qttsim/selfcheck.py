"""Fast invariant battery behind the ``check`` CLI subcommand.

Each check returns (name, passed, detail).  The battery is a smaller, quick
cousin of the test suite: detailed-balance of the rates, dissipator
structure, spectral stability, covariance of the jump operators, the
equal-temperature fixed point, and energy conservation on a short sweep.
"""

from __future__ import annotations

import math

import numpy as np

from .baths import BathSpec, rates
from .config import preset
from .dynamics import (
    LiouvillianBuilder,
    dissipator,
    gibbs_state,
    solve_ness,
    trace_functional_residual,
)
from .linalg import max_abs, trace_distance
from .model import RESERVOIRS, SystemSpec, decompose
from .observables import amplification, heat_currents

CheckResult = tuple[str, bool, str]


def _random_system(rng: np.random.Generator) -> SystemSpec:
    return SystemSpec(
        omega_s=rng.uniform(0.5, 1.5),
        omega_m=rng.uniform(0.1, 1.0),
        omega_d=rng.uniform(0.2, 1.2),
        zeta_sm=rng.uniform(0.0, 0.8),
        zeta_md=rng.uniform(0.0, 0.8),
        zeta_sd=rng.uniform(0.0, 0.8),
    )


def _random_baths(rng: np.random.Generator) -> dict[str, BathSpec]:
    return {
        k: BathSpec(
            temperature=rng.uniform(0.1, 8.0),
            coupling=10.0 ** rng.uniform(-4, -1),
            ohmicity=rng.choice([0.5, 1.0, 1.5]),
        )
        for k in RESERVOIRS
    }


def _random_density(rng: np.random.Generator, dim: int = 8) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def check_kms(samples: int = 2000, seed: int = 11) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        bath = BathSpec(
            temperature=rng.uniform(1e-3, 50.0),
            coupling=10.0 ** rng.uniform(-6, 0),
            ohmicity=rng.uniform(0.3, 2.5),
            cutoff=rng.uniform(0.5, 50.0),
        )
        omega = rng.uniform(1e-3, 20.0)
        emission, absorption = rates(omega, bath)
        expected = math.exp(-omega / bath.temperature) * emission
        scale = max(abs(expected), abs(absorption), 1e-300)
        worst = max(worst, abs(absorption - expected) / scale)
    return ("detailed balance of rates", worst < 1e-12, f"worst rel. dev {worst:.2e}")


def check_dissipator_structure(draws: int = 10, states: int = 20, seed: int = 12) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst_tr, worst_herm = 0.0, 0.0
    for _ in range(draws):
        decomp = decompose(_random_system(rng))
        baths = _random_baths(rng)
        for _ in range(states):
            rho = _random_density(rng)
            for k in RESERVOIRS:
                d = dissipator(rho, k, decomp, baths[k])
                worst_tr = max(worst_tr, abs(np.trace(d)))
                worst_herm = max(worst_herm, max_abs(d - d.conj().T))
    ok = worst_tr < 1e-12 and worst_herm < 1e-12
    return ("dissipator traceless and Hermiticity-preserving", ok,
            f"max |Tr D| {worst_tr:.2e}, max |D - D^dag| {worst_herm:.2e}")


def check_spectral_stability(draws: int = 25, seed: int = 13) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst_re, worst_tracefun = -np.inf, 0.0
    for _ in range(draws):
        builder = LiouvillianBuilder(decompose(_random_system(rng)))
        lio = builder.build(_random_baths(rng))
        worst_re = max(worst_re, float(np.max(np.linalg.eigvals(lio).real)))
        worst_tracefun = max(worst_tracefun, trace_functional_residual(lio))
    ok = worst_re <= 1e-10 and worst_tracefun < 1e-10
    return ("Liouvillian stability and trace preservation", ok,
            f"max Re eig {worst_re:.2e}, trace-functional residual {worst_tracefun:.2e}")


def check_covariance(draws: int = 25, seed: int = 14) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        decomp = decompose(_random_system(rng))
        h = decomp.hamiltonian
        for k in RESERVOIRS:
            for w, s in zip(decomp.bohr, decomp.jump_ops[k]):
                dev = max_abs(h @ s - s @ h + w * s) / w
                worst = max(worst, dev)
    return ("jump-operator covariance commutators", worst < 1e-9,
            f"worst residual {worst:.2e} (rel. to omega)")


def check_equal_temperature_fixed_point() -> CheckResult:
    cfg = preset("fig2")[0][1]
    decomp = decompose(cfg.system)
    builder = LiouvillianBuilder(decomp)
    worst = 0.0
    for t in (0.1, 1.0, 10.0):
        baths = {k: BathSpec(temperature=t, coupling=0.01) for k in RESERVOIRS}
        rho = solve_ness(builder.build(baths))
        worst = max(worst, trace_distance(rho, gibbs_state(decomp.hamiltonian, t)))
    return ("equal-temperature thermal fixed point", worst < 1e-8,
            f"worst trace distance {worst:.2e}")


def check_sweep_conservation(points: int = 21) -> CheckResult:
    cfg = preset("fig2")[0][1]
    decomp = decompose(cfg.system)
    builder = LiouvillianBuilder(decomp)
    grid = np.linspace(0.0, 5.0, points)
    series = []
    worst = 0.0
    for t_m in grid:
        baths = cfg.baths_at(float(t_m))
        lio = builder.build(baths)
        cur = heat_currents(solve_ness(lio), decomp, baths, liouvillian=lio)
        series.append((float(t_m), cur))
        worst = max(worst, abs(cur.total()) / max(cur.max_abs(), 1e-300))
    step = float(grid[1] - grid[0])
    beta_dev = 0.0
    for p in amplification(series, step)[1:-1]:
        if not p.divergent:
            beta_dev = max(beta_dev, abs(p.beta_s + p.beta_d + 1.0))
    ok = worst < 1e-10 and beta_dev < 1e-6
    return ("first law and response-ratio identity on a short sweep", ok,
            f"worst |sum I|/max|I| {worst:.2e}, worst |beta_S+beta_D+1| {beta_dev:.2e}")


ALL_CHECKS = (
    check_kms,
    check_dissipator_structure,
    check_spectral_stability,
    check_covariance,
    check_equal_temperature_fixed_point,
    check_sweep_conservation,
)


def run_all() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]
