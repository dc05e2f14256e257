import numpy as np
import pytest

from xxchain.model import build_adjacency, make_custom, make_dimer, make_end_bond, make_uniform
from xxchain.observables import (
    ThermalContext,
    concurrence_from_x,
    end_to_end_correlation,
    reduced_density_matrix,
)
from xxchain.oracle import (
    OracleError,
    dense_hamiltonian,
    gibbs_state,
    oracle_end_correlators,
    reduce_to_endpoints,
    site_magnetization,
    wootters_concurrence,
)
from xxchain.spectral import diagonalize

X_UNIFORM_4 = 1.0 / (2.0 * np.sqrt(5.0))


class TestDenseHamiltonian:
    def test_two_site_spectrum(self):
        ham = dense_hamiltonian(make_custom([1.0]))
        assert np.linalg.eigvalsh(ham) == pytest.approx([-0.5, 0.0, 0.0, 0.5], abs=1e-14)

    def test_spectrum_symmetric_about_zero(self):
        for spec in (make_dimer(6, 0.4), make_end_bond(6, 0.3)):
            energies = np.linalg.eigvalsh(dense_hamiltonian(spec))
            assert energies == pytest.approx(-energies[::-1], abs=1e-12)

    def test_uniform_ground_energy_matches_filled_modes(self):
        energies = np.linalg.eigvalsh(dense_hamiltonian(make_uniform(4)))
        assert energies[0] == pytest.approx(-(np.cos(np.pi / 5) + np.cos(2 * np.pi / 5)),
                                            abs=1e-12)

    def test_conserves_total_sz(self):
        spec = make_end_bond(4, 0.5)
        ham = dense_hamiltonian(spec)
        sz = sum(_sz_site(i, 4) for i in range(1, 5))
        assert np.max(np.abs(ham @ sz - sz @ ham)) < 1e-12

    def test_length_cap(self):
        with pytest.raises(OracleError):
            dense_hamiltonian(make_uniform(14))


def _sz_site(site, length):
    out = np.array([[1.0]])
    for j in range(1, length + 1):
        out = np.kron(out, np.diag([0.5, -0.5]) if j == site else np.eye(2))
    return out


class TestGibbs:
    def test_infinite_temperature(self):
        ham = dense_hamiltonian(make_uniform(4))
        state = gibbs_state(ham, 0.0)
        assert state.matrix == pytest.approx(np.eye(16) / 16)

    def test_ground_state_unique(self):
        ham = dense_hamiltonian(make_uniform(4))
        state = gibbs_state(ham, np.inf)
        state.validate()
        assert np.trace(state.matrix @ state.matrix) == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_levels_mix(self):
        # gibbs_state accepts any Hermitian matrix; a doubly degenerate ground
        # level inside the 1e-10 window must mix with equal weights
        ham = np.diag([0.0, 5e-11, 1.0, 2.0])
        state = gibbs_state(ham, np.inf)
        purity = np.trace(state.matrix @ state.matrix).real
        assert purity == pytest.approx(0.5, abs=1e-9)

    def test_finite_beta_normalized_and_stationary(self):
        ham = dense_hamiltonian(make_end_bond(4, 0.3))
        state = gibbs_state(ham, 10.0)
        state.validate()
        assert abs(np.trace(state.matrix) - 1) < 1e-12
        assert np.max(np.abs(state.matrix @ ham - ham @ state.matrix)) < 1e-10

    def test_large_beta_no_overflow(self):
        ham = dense_hamiltonian(make_uniform(10))
        state = gibbs_state(ham, 1e4)
        state.validate()


class TestReduction:
    def test_infinite_temperature_reduces_to_identity(self):
        ham = dense_hamiltonian(make_uniform(6))
        rho4 = reduce_to_endpoints(gibbs_state(ham, 0.0))
        assert rho4 == pytest.approx(np.eye(4) / 4)

    def test_matches_fermionic_reduced_matrix(self):
        ham = dense_hamiltonian(make_uniform(4))
        rho4 = reduce_to_endpoints(gibbs_state(ham, np.inf))
        assert rho4 == pytest.approx(reduced_density_matrix(X_UNIFORM_4, 4), abs=1e-10)

    def test_symmetry_pattern_of_reduced_state(self):
        ham = dense_hamiltonian(make_dimer(6, 0.5))
        rho4 = reduce_to_endpoints(gibbs_state(ham, 5.0))
        allowed = np.zeros((4, 4), dtype=bool)
        allowed[np.diag_indices(4)] = True
        allowed[1, 2] = allowed[2, 1] = True
        assert np.max(np.abs(rho4[~allowed])) < 1e-10

    def test_endpoint_magnetization_vanishes(self):
        ham = dense_hamiltonian(make_end_bond(6, 0.4))
        for beta in (np.inf, 5.0, 1.0):
            state = gibbs_state(ham, beta)
            for site in range(1, 7):
                assert abs(site_magnetization(state, site)) < 1e-10


class TestWootters:
    def test_bell_state(self):
        bell = np.zeros((4, 4))
        vec = np.array([1, 0, 0, 1]) / np.sqrt(2)
        bell = np.outer(vec, vec)
        assert wootters_concurrence(bell) == pytest.approx(1.0, abs=1e-12)

    def test_product_state(self):
        rho = np.diag([1.0, 0.0, 0.0, 0.0])
        assert wootters_concurrence(rho) == pytest.approx(0.0, abs=1e-12)

    def test_matches_closed_form_at_x03(self):
        rho = reduced_density_matrix(0.3, 4)
        assert wootters_concurrence(rho) == pytest.approx(0.28, abs=1e-10)

    def test_complex_input_supported(self):
        rho = reduced_density_matrix(0.35, 4).astype(complex)
        assert wootters_concurrence(rho) == pytest.approx(
            concurrence_from_x(0.35), abs=1e-10)

    def test_rejects_non_psd(self):
        bad = np.diag([0.8, 0.8, -0.3, -0.3])
        with pytest.raises(OracleError):
            wootters_concurrence(bad)


class TestPipelineEquivalence:
    @pytest.mark.parametrize("spec", [
        make_uniform(4), make_uniform(6),
        make_dimer(6, 0.5), make_dimer(6, 0.8),
        make_end_bond(6, 0.1), make_end_bond(6, 0.5),
    ])
    def test_zero_temperature(self, spec):
        dec = diagonalize(build_adjacency(spec))
        x_ferm = end_to_end_correlation(dec, ThermalContext(0.0))
        state = gibbs_state(dense_hamiltonian(spec), np.inf)
        transverse, longitudinal, x_dense = oracle_end_correlators(state)
        assert x_ferm == pytest.approx(x_dense, abs=1e-9)
        assert longitudinal == pytest.approx(-x_dense ** 2, abs=1e-10)
        c_w = wootters_concurrence(reduce_to_endpoints(state))
        assert concurrence_from_x(x_ferm) == pytest.approx(c_w, abs=1e-9)

    def test_infinite_temperature_correlators_vanish(self):
        state = gibbs_state(dense_hamiltonian(make_uniform(6)), 0.0)
        transverse, longitudinal, _ = oracle_end_correlators(state)
        assert abs(transverse) < 1e-12
        assert abs(longitudinal) < 1e-12

    def test_string_phase_deviation_is_real_at_moderate_T(self):
        # the e^{i pi N} -> e^{i pi L/2} substitution is exact only at T = 0
        spec = make_uniform(6)
        dec = diagonalize(build_adjacency(spec))
        state = gibbs_state(dense_hamiltonian(spec), 1.0 / 0.2)
        _, _, x_dense = oracle_end_correlators(state)
        x_ferm = end_to_end_correlation(dec, ThermalContext(0.2))
        assert abs(x_ferm - x_dense) > 1e-3
