import math

import numpy as np
import pytest

from qttsim import (
    BathSpec,
    DegenerateSteadyStateError,
    LiouvillianBuilder,
    SystemSpec,
    build_liouvillian,
    decompose,
    dissipator,
    gibbs_state,
    propagate,
    rates,
    resolve_cutoff,
    solve_ness,
    spectral_density,
    trace_distance,
    trace_functional_residual,
    unvec,
    vec,
)

from helpers import random_baths, random_complex, random_density, random_system

FIG2 = SystemSpec(omega_s=1.0, omega_m=0.1, omega_d=1 / 3,
                  zeta_sm=1.0, zeta_md=1 / 6, zeta_sd=1.0)


def fig2_baths(t_m: float) -> dict:
    return {
        "S": BathSpec(temperature=10.0, coupling=1e-6),
        "M": BathSpec(temperature=t_m, coupling=1e-6),
        "D": BathSpec(temperature=0.01, coupling=1e-4),
    }


def test_vectorization_convention():
    # column stacking: A rho B  <->  (B^T kron A) vec(rho)
    rng = np.random.default_rng(30)
    a, rho, b = (random_complex(rng, (4, 4)) for _ in range(3))
    direct = a @ rho @ b
    via_superop = unvec(np.kron(b.T, a) @ vec(rho))
    assert np.allclose(direct, via_superop, atol=1e-12)


def test_double_commutator_grouping_equals_sandwich_form():
    # [S, rho S^dag] + [S rho, S^dag] is twice the standard sandwich term
    rng = np.random.default_rng(31)
    for _ in range(50):
        s = random_complex(rng, (8, 8))
        rho = random_complex(rng, (8, 8))
        sd = s.conj().T
        grouped = 0.5 * ((s @ (rho @ sd) - (rho @ sd) @ s) + (s @ rho @ sd - sd @ (s @ rho)))
        sandwich = s @ rho @ sd - 0.5 * (sd @ s @ rho + rho @ sd @ s)
        assert np.allclose(grouped, sandwich, atol=1e-12 * np.max(np.abs(sandwich)))


class TestDissipator:
    def test_traceless(self):
        rng = np.random.default_rng(32)
        decomp = decompose(FIG2)
        baths = fig2_baths(2.5)
        for _ in range(100):
            rho = random_density(rng, 8)
            for k in ("S", "M", "D"):
                d = dissipator(rho, k, decomp, baths[k])
                assert abs(np.trace(d)) < 1e-12 * max(np.max(np.abs(d)), 1e-300) + 1e-18

    def test_hermiticity_preserved(self):
        rng = np.random.default_rng(33)
        decomp = decompose(random_system(rng))
        baths = random_baths(rng)
        for _ in range(20):
            rho = random_density(rng, 8)
            d = dissipator(rho, "M", decomp, baths["M"])
            assert np.max(np.abs(d - d.conj().T)) < 1e-12

    def test_two_level_gibbs_fixed_point(self):
        # uncoupled qubits, one bath on the source: detailed balance for the
        # two-level source is solved analytically and must be annihilated
        spec = SystemSpec(omega_s=1.0, omega_m=0.4, omega_d=0.7)
        decomp = decompose(spec)
        t = 2.3
        bath = BathSpec(temperature=t, coupling=0.05)
        # analytic two-level populations: p_excited / p_ground = exp(-omega/T)
        z = 1.0 + math.exp(-spec.omega_s / t)
        rho_s = np.diag([math.exp(-spec.omega_s / t) / z, 1.0 / z]).astype(complex)
        rng = np.random.default_rng(34)
        p_m = rng.uniform(0.2, 0.8)
        p_d = rng.uniform(0.2, 0.8)
        rest = np.kron(np.diag([p_m, 1 - p_m]), np.diag([p_d, 1 - p_d])).astype(complex)
        rho = np.kron(rho_s, rest)
        d = dissipator(rho, "S", decomp, bath)
        scale = max(rates(spec.omega_s, resolve_cutoff(bath, decomp.eigen.values))[0], 1e-300)
        assert np.max(np.abs(d)) < 1e-12 * scale

    def test_zero_temperature_is_emission_only(self):
        rng = np.random.default_rng(35)
        decomp = decompose(FIG2)
        bath = BathSpec(temperature=0.0, coupling=1e-3)
        resolved = resolve_cutoff(bath, decomp.eigen.values)
        rho = random_density(rng, 8)
        expected = np.zeros_like(rho)
        for w, s in zip(decomp.bohr, decomp.jump_ops["D"]):
            g = spectral_density(float(w), resolved)
            sd = s.conj().T
            expected += g * (s @ rho @ sd - 0.5 * (sd @ s @ rho + rho @ sd @ s))
        assert np.allclose(dissipator(rho, "D", decomp, bath), expected, atol=1e-15)

    def test_rejects_mismatched_dimensions(self):
        decomp = decompose(FIG2)
        with pytest.raises(ValueError, match="shape"):
            dissipator(np.eye(4) / 4, "S", decomp, BathSpec(temperature=1.0, coupling=1e-3))

    def test_rejects_unknown_reservoir(self):
        decomp = decompose(FIG2)
        with pytest.raises(ValueError, match="reservoir"):
            dissipator(np.eye(8) / 8, "X", decomp, BathSpec(temperature=1.0, coupling=1e-3))


class TestBuildLiouvillian:
    def test_action_matches_direct_map(self):
        rng = np.random.default_rng(36)
        decomp = decompose(FIG2)
        baths = fig2_baths(1.7)
        lio = LiouvillianBuilder(decomp).build(baths)
        h = decomp.hamiltonian
        for _ in range(10):
            rho = random_density(rng, 8)
            direct = -1j * (h @ rho - rho @ h)
            for k in ("S", "M", "D"):
                direct += dissipator(rho, k, decomp, baths[k])
            assert np.max(np.abs(unvec(lio @ vec(rho)) - direct)) < 1e-12

    def test_spectrum_in_left_half_plane(self):
        rng = np.random.default_rng(37)
        for _ in range(10):
            lio = build_liouvillian(random_system(rng), random_baths(rng))
            assert np.max(np.linalg.eigvals(lio).real) <= 1e-10

    def test_trace_functional_is_left_null(self):
        lio = build_liouvillian(FIG2, fig2_baths(3.3))
        assert trace_functional_residual(lio) <= 1e-10 * np.linalg.norm(lio)

    def test_uncoupled_baths_give_unitary_spectrum(self):
        baths = {k: BathSpec(temperature=1.0, coupling=0.0) for k in ("S", "M", "D")}
        decomp = decompose(FIG2)
        lio = LiouvillianBuilder(decomp).build(baths)
        ev = np.linalg.eigvals(lio)
        assert np.max(np.abs(ev.real)) < 1e-10
        e = decomp.eigen.values
        expected = np.sort([-(ei - ej) for ei in e for ej in e])
        assert np.allclose(np.sort(ev.imag), expected, atol=1e-10)

    def test_missing_bath_rejected(self):
        with pytest.raises(ValueError, match="missing bath"):
            build_liouvillian(FIG2, {"S": BathSpec(temperature=1.0, coupling=1e-3)})


class TestSolveNess:
    def test_equal_temperature_gives_gibbs(self):
        decomp = decompose(FIG2)
        builder = LiouvillianBuilder(decomp)
        for t in (0.1, 1.0, 10.0):
            baths = {k: BathSpec(temperature=t, coupling=0.01) for k in ("S", "M", "D")}
            rho = solve_ness(builder.build(baths))
            assert trace_distance(rho, gibbs_state(decomp.hamiltonian, t)) <= 1e-8

    def test_reference_ness_is_energy_diagonal(self):
        decomp = decompose(FIG2)
        lio = LiouvillianBuilder(decomp).build(fig2_baths(2.5))
        rho = solve_ness(lio)
        v = decomp.eigen.vectors
        rho_e = v.conj().T @ rho @ v
        assert np.max(np.abs(rho_e - np.diag(np.diag(rho_e)))) <= 1e-8

    def test_density_matrix_invariants(self):
        rng = np.random.default_rng(38)
        for _ in range(5):
            lio = build_liouvillian(random_system(rng), random_baths(rng))
            rho = solve_ness(lio)
            assert abs(np.trace(rho) - 1.0) < 1e-10
            assert np.max(np.abs(rho - rho.conj().T)) < 1e-10
            assert np.min(np.linalg.eigvalsh(rho)) >= -1e-10
            assert np.linalg.norm(lio @ vec(rho)) <= 1e-10 * np.linalg.norm(lio, 2)

    def test_no_dissipation_raises(self):
        baths = {k: BathSpec(temperature=1.0, coupling=0.0) for k in ("S", "M", "D")}
        lio = build_liouvillian(FIG2, baths)
        with pytest.raises(DegenerateSteadyStateError):
            solve_ness(lio)


class TestPropagate:
    def test_zero_time_returns_input(self):
        rng = np.random.default_rng(39)
        rho = random_density(rng, 8)
        lio = build_liouvillian(FIG2, fig2_baths(1.0))
        assert np.array_equal(propagate(rho, lio, 0.0, 0.01), rho)

    def test_unitary_evolution_is_isospectral(self):
        baths = {k: BathSpec(temperature=1.0, coupling=0.0) for k in ("S", "M", "D")}
        decomp = decompose(FIG2)
        lio = LiouvillianBuilder(decomp).build(baths)
        rng = np.random.default_rng(40)
        rho = random_density(rng, 8)
        radius = np.max(np.abs(np.linalg.eigvals(lio)))
        out = propagate(rho, lio, 2.0, 0.04 / radius)
        assert np.allclose(
            np.linalg.eigvalsh(out), np.linalg.eigvalsh(rho), atol=1e-8
        )

    def test_long_time_limit_matches_nullspace(self):
        rng = np.random.default_rng(41)
        spec = random_system(rng, zeta_max=0.5)
        baths = random_baths(rng, coupling_range=(-1, -0.5), temperature_range=(1.0, 5.0))
        lio = build_liouvillian(spec, baths)
        ev = np.linalg.eigvals(lio)
        gap = -np.max(ev.real[ev.real < -1e-12])
        dt = 0.098 / np.max(np.abs(ev))
        rho = propagate(np.eye(8, dtype=complex) / 8, lio, 22.0 / gap, dt)
        assert trace_distance(rho, solve_ness(lio)) <= 1e-6

    def test_rejects_large_step(self):
        lio = build_liouvillian(FIG2, fig2_baths(1.0))
        radius = np.max(np.abs(np.linalg.eigvals(lio)))
        with pytest.raises(ValueError, match="step too large"):
            propagate(np.eye(8, dtype=complex) / 8, lio, 1.0, 0.2 / radius)


def test_gibbs_state_population_ratios():
    decomp = decompose(FIG2)
    t = 1.7
    g = gibbs_state(decomp.hamiltonian, t)
    v = decomp.eigen.vectors
    p = np.real(np.diag(v.conj().T @ g @ v))
    e = decomp.eigen.values
    for i in range(1, 8):
        assert p[i] / p[0] == pytest.approx(math.exp(-(e[i] - e[0]) / t), rel=1e-10)
    ground = gibbs_state(decomp.hamiltonian, 0.0)
    assert np.trace(ground).real == pytest.approx(1.0)
    assert np.real(v[:, 0].conj() @ ground @ v[:, 0]) == pytest.approx(1.0)
