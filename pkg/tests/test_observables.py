import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xxchain.model import TridiagonalMatrix, build_adjacency, make_dimer, make_end_bond, make_uniform
from xxchain.observables import (
    ObservableError,
    ThermalContext,
    concurrence_from_x,
    end_to_end_correlation,
    end_to_end_state,
    energy_gap,
    fidelity_from_x,
    fully_entangled_fraction,
    reduced_density_matrix,
)
from xxchain.analytics import dimer_gap_asymptotic, dimer_x_asymptotic, endbond_gap_approx
from xxchain.oracle import wootters_concurrence
from xxchain.spectral import diagonalize

T0 = ThermalContext(0.0)
X_UNIFORM_4 = 1.0 / (2.0 * np.sqrt(5.0))


def _decompose(spec):
    return diagonalize(build_adjacency(spec))


class TestCorrelation:
    def test_uniform_L4(self):
        x = end_to_end_correlation(_decompose(make_uniform(4)), T0)
        assert x == pytest.approx(X_UNIFORM_4, abs=1e-12)

    def test_high_temperature_washout(self):
        dec = _decompose(make_end_bond(10, 0.5))
        assert abs(end_to_end_correlation(dec, ThermalContext(1e4))) < 1e-8

    def test_dimer_surface_order_L400(self):
        dec = _decompose(make_dimer(400, 0.3))
        x = end_to_end_correlation(dec, T0)
        assert abs(x) == pytest.approx(2 * 0.3 / 1.3 ** 2, abs=1e-6)
        assert x > 0  # (-1)^{L/2} with L/2 = 200 even

    @pytest.mark.parametrize("delta", [0.1, 0.3, 0.5, 0.8])
    @pytest.mark.parametrize("length", [8, 12, 16, 20])
    def test_dimer_sign_law(self, delta, length):
        x = end_to_end_correlation(_decompose(make_dimer(length, delta)), T0)
        expected_sign = 1.0 if (length // 2) % 2 == 0 else -1.0
        assert np.sign(x) == expected_sign

    def test_sign_gauge_invariance(self):
        dec = _decompose(make_end_bond(8, 0.4))
        x_ref = end_to_end_correlation(dec, ThermalContext(0.3))
        flipped = dec.eigenvectors.copy()
        flipped[:, 3] *= -1.0
        dec_flipped = type(dec)(
            eigenvalues=dec.eigenvalues, eigenvectors=flipped,
            parities=dec.parities, matrix=dec.matrix, source=dec.source,
        )
        assert end_to_end_correlation(dec_flipped, ThermalContext(0.3)) == pytest.approx(
            x_ref, abs=1e-15)

    def test_structural_zero_mode_gets_half_weight(self, caplog):
        # hand-built odd chain: uniform 3 sites has an exact zero mode
        m = TridiagonalMatrix(diagonal=np.zeros(3), off_diagonal=np.array([0.5, 0.5]))
        dec = diagonalize(m)
        with caplog.at_level(logging.WARNING, logger="xxchain.observables"):
            x = end_to_end_correlation(dec, T0)
        assert any("near-zero" in rec.message for rec in caplog.records)
        # filled mode contributes +1/4, zero mode g = -1/2 enters with weight 1/2
        assert x == pytest.approx(0.0, abs=1e-14)

    def test_negative_temperature_rejected(self):
        with pytest.raises(ObservableError):
            ThermalContext(-0.1)


class TestReducedDensityMatrix:
    def test_x_zero_maximally_mixed(self):
        assert reduced_density_matrix(0.0, 8) == pytest.approx(np.eye(4) / 4)

    def test_bell_limit(self):
        rho = reduced_density_matrix(0.5, 8)  # L = 8: L/2 even
        eig = np.sort(np.linalg.eigvalsh(rho))
        assert eig == pytest.approx([0, 0, 0, 1], abs=1e-12)
        singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
        assert singlet @ rho @ singlet == pytest.approx(1.0)

    def test_eigenvalues_at_x03(self):
        rho = reduced_density_matrix(0.3, 6)
        eig = np.sort(np.linalg.eigvalsh(rho))
        assert eig == pytest.approx([0.04, 0.16, 0.16, 0.64], abs=1e-12)

    def test_unphysical_x_rejected(self):
        with pytest.raises(ObservableError):
            reduced_density_matrix(0.51, 4)

    @given(st.floats(-0.5, 0.5), st.sampled_from([4, 6, 8, 10]))
    @settings(max_examples=200, deadline=None)
    def test_rho_physical(self, x, length):
        rho = reduced_density_matrix(x, length)
        assert np.trace(rho) == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(rho - rho.T)) < 1e-14
        assert np.min(np.linalg.eigvalsh(rho)) >= -1e-12

    @given(st.floats(-0.5, 0.5))
    @settings(max_examples=100, deadline=None)
    def test_wootters_matches_closed_form(self, x):
        rho = reduced_density_matrix(x, 4)
        assert wootters_concurrence(rho) == pytest.approx(
            concurrence_from_x(x), abs=1e-10)


class TestEntanglementMeasures:
    def test_concurrence_values(self):
        assert concurrence_from_x(0.5) == pytest.approx(1.0)
        assert concurrence_from_x((np.sqrt(2) - 1) / 2) == pytest.approx(0.0, abs=1e-15)
        assert concurrence_from_x(-0.3) == pytest.approx(0.28)

    def test_fef_values(self):
        assert fully_entangled_fraction(0.0) == pytest.approx(0.25)
        assert fully_entangled_fraction(0.5) == pytest.approx(1.0)
        assert fully_entangled_fraction((np.sqrt(2) - 1) / 2) == pytest.approx(0.5)

    def test_fidelity_values(self):
        assert fidelity_from_x(0.0) == pytest.approx(0.5)
        assert fidelity_from_x(0.5) == pytest.approx(1.0)
        assert fidelity_from_x((np.sqrt(2) - 1) / 2) == pytest.approx(2.0 / 3.0)

    @given(st.floats(-0.5, 0.5))
    @settings(max_examples=300, deadline=None)
    def test_entangled_iff_nonclassical(self, x):
        entangled = concurrence_from_x(x) > 1e-12
        nonclassical = fidelity_from_x(x) > 2.0 / 3.0 + 1e-12 / 3.0
        assert entangled == nonclassical


class TestGap:
    def test_uniform_L4(self):
        gap = energy_gap(_decompose(make_uniform(4)))
        assert gap == pytest.approx(np.cos(2 * np.pi / 5), abs=1e-12)

    def test_end_bond_algebraic_law(self):
        gap = energy_gap(_decompose(make_end_bond(1000, 0.5)))
        approx = endbond_gap_approx(1000, 0.5)
        assert approx == pytest.approx(gap, rel=0.01)

    def test_dimer_exponential_law(self):
        # asymptotic law describes the doublet splitting, twice min|Lambda|
        splitting = 2.0 * energy_gap(_decompose(make_dimer(20, 0.5)))
        assert dimer_gap_asymptotic(20, 0.5) == pytest.approx(splitting, rel=0.25)
        assert dimer_gap_asymptotic(20, 0.5) == pytest.approx(2.26e-5, rel=1e-3)


class TestState:
    def test_bundle_consistency(self):
        dec = _decompose(make_end_bond(10, 0.3))
        state = end_to_end_state(dec, T0)
        assert state.transverse == pytest.approx(-(-1.0) ** 5 * state.x / 2)
        assert state.longitudinal == pytest.approx(-state.x ** 2)
        assert state.fidelity == pytest.approx((2 * state.fef + 1) / 3)
        assert np.trace(state.rho) == pytest.approx(1.0)

    def test_thermal_washout_fidelity(self):
        dec = _decompose(make_end_bond(10, 0.3))
        state = end_to_end_state(dec, ThermalContext(1e5))
        assert state.fidelity == pytest.approx(0.5, abs=1e-6)
