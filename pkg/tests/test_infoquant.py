import math

import numpy as np
import pytest

from qttsim import (
    entropy,
    fidelity,
    mutual_info_2,
    mutual_info_3,
    negativity,
    partial_trace,
    reference_state,
)

from helpers import random_density, random_ket, random_pure_density

LN2 = math.log(2.0)


class TestEntropy:
    def test_pure_state(self):
        rng = np.random.default_rng(50)
        for _ in range(10):
            assert entropy(random_pure_density(rng, 8)) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed_qubit(self):
        assert entropy(np.eye(2) / 2) == pytest.approx(LN2, rel=1e-12)

    def test_two_thirds_mixture(self):
        expected = math.log(3.0) - (2.0 / 3.0) * LN2
        assert entropy(np.diag([2 / 3, 1 / 3])) == pytest.approx(expected, rel=1e-12)

    def test_bounds(self):
        rng = np.random.default_rng(51)
        for _ in range(100):
            s = entropy(random_density(rng, 8))
            assert 0.0 <= s <= math.log(8.0) + 1e-12


class TestMutualInfo2:
    def test_product_state(self):
        rng = np.random.default_rng(52)
        rho = np.kron(np.kron(random_density(rng, 2), random_density(rng, 2)),
                      random_density(rng, 2))
        for pair in (("S", "M"), ("S", "D"), ("M", "D")):
            assert mutual_info_2(rho, pair) == pytest.approx(0.0, abs=1e-10)

    def test_bell_pair_with_free_qubit(self):
        bell = np.zeros(4, dtype=complex)
        bell[[0, 3]] = 1 / math.sqrt(2)
        rho = np.kron(np.outer(bell, bell.conj()), np.eye(2) / 2)
        assert mutual_info_2(rho, ("S", "M")) == pytest.approx(2 * LN2, rel=1e-10)

    def test_ghz_pair(self):
        # oracle by hand: tracing one qubit of GHZ leaves (|00><00| + |11><11|)/2,
        # whose marginals are maximally mixed: ln2 + ln2 - ln2 = ln2
        ghz = reference_state("GHZ").state
        for pair in (("S", "M"), ("S", "D"), ("M", "D")):
            assert mutual_info_2(ghz, pair) == pytest.approx(LN2, rel=1e-10)
        reduced = partial_trace(ghz, keep=[0, 1])
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = expected[3, 3] = 0.5
        assert np.allclose(reduced, expected, atol=1e-12)

    def test_nonnegative_and_subadditive(self):
        rng = np.random.default_rng(53)
        for _ in range(1000):
            rho = random_density(rng, 8)
            m2 = mutual_info_2(rho, ("S", "D"))
            assert m2 >= 0.0

    def test_rejects_bad_pair(self):
        rho = np.eye(8) / 8
        with pytest.raises(ValueError):
            mutual_info_2(rho, ("S", "S"))
        with pytest.raises(ValueError):
            mutual_info_2(rho, ("S", "X"))


class TestMutualInfo3:
    def test_pure_states_vanish(self):
        rng = np.random.default_rng(54)
        for _ in range(200):
            assert abs(mutual_info_3(random_pure_density(rng, 8))) <= 1e-10

    def test_product_of_mixed_singles(self):
        rng = np.random.default_rng(55)
        rho = np.kron(np.kron(random_density(rng, 2), random_density(rng, 2)),
                      random_density(rng, 2))
        assert mutual_info_3(rho) == pytest.approx(0.0, abs=1e-10)

    def test_classical_correlated_mixture_positive(self):
        rho = np.zeros((8, 8), dtype=complex)
        rho[0, 0] = rho[7, 7] = 0.5
        assert mutual_info_3(rho) == pytest.approx(LN2, rel=1e-10)


class TestNegativity:
    def test_ghz_single_cut(self):
        ghz = reference_state("GHZ").state
        for side_dims in (((2, 4), 0), ((4, 2), 1)):
            dims, side = side_dims
            assert negativity(ghz, dims, side) == pytest.approx(1.0, abs=1e-10)

    def test_w_single_cut(self):
        w = reference_state("W").state
        assert negativity(w, (2, 4), 0) == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-10)

    def test_reduced_ghz_pair_is_ppt(self):
        ghz = reference_state("GHZ").state
        reduced = partial_trace(ghz, keep=[0, 1])
        assert negativity(reduced, (2, 2)) == 0.0

    def test_separable_constructions_vanish(self):
        rng = np.random.default_rng(56)
        for _ in range(50):
            rho = sum(
                p * np.kron(random_density(rng, 2), random_density(rng, 2))
                for p in np.full(4, 0.25)
            )
            rho = rho / np.trace(rho).real
            assert negativity(rho, (2, 2)) <= 1e-12

    def test_bell_pair(self):
        bell = np.zeros(4, dtype=complex)
        bell[[0, 3]] = 1 / math.sqrt(2)
        rho = np.outer(bell, bell.conj())
        assert negativity(rho, (2, 2)) == pytest.approx(1.0, abs=1e-12)


class TestFidelity:
    def test_self_fidelity(self):
        rng = np.random.default_rng(57)
        for _ in range(20):
            rho = random_density(rng, 8)
            assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-12)

    def test_pure_states_overlap(self):
        rng = np.random.default_rng(58)
        for _ in range(20):
            psi, phi = random_ket(rng, 8), random_ket(rng, 8)
            f = fidelity(np.outer(psi, psi.conj()), np.outer(phi, phi.conj()))
            assert f == pytest.approx(abs(np.vdot(psi, phi)) ** 2, abs=1e-10)

    def test_ghz_against_maximally_mixed(self):
        ghz = reference_state("GHZ").state
        assert fidelity(ghz, np.eye(8) / 8) == pytest.approx(1 / 8, rel=1e-10)

    def test_symmetry(self):
        rng = np.random.default_rng(59)
        for _ in range(20):
            rho, sigma = random_density(rng, 8), random_density(rng, 8)
            assert fidelity(rho, sigma) == pytest.approx(fidelity(sigma, rho), abs=1e-10)


class TestReferenceStates:
    def test_w_amplitudes(self):
        w = reference_state("W")
        expected = np.zeros(8)
        expected[[1, 2, 4]] = 1 / math.sqrt(3)
        assert np.allclose(w.ket, expected, atol=1e-15)

    def test_ghz_purity_and_marginals(self):
        ghz = reference_state("GHZ")
        assert np.trace(ghz.state @ ghz.state).real == pytest.approx(1.0, abs=1e-12)
        for k in range(3):
            assert np.allclose(partial_trace(ghz.state, keep=[k]), np.eye(2) / 2, atol=1e-12)

    def test_w_purity(self):
        w = reference_state("W")
        assert np.trace(w.state @ w.state).real == pytest.approx(1.0, abs=1e-12)

    def test_orthogonality(self):
        w = reference_state("W")
        ghz = reference_state("GHZ")
        assert abs(np.vdot(w.ket, ghz.ket)) == 0.0

    def test_unknown_label(self):
        with pytest.raises(ValueError, match="unknown reference state"):
            reference_state("BELL")
