import json

import numpy as np
import pytest

from xxchain.model import (
    ChainSpec,
    ChainSpecError,
    TridiagonalMatrix,
    build_adjacency,
    make_custom,
    make_dimer,
    make_end_bond,
    make_uniform,
)


class TestDimerFactory:
    def test_alternation_starts_weak(self):
        spec = make_dimer(4, 0.5)
        assert spec.couplings == pytest.approx([0.5, 1.5, 0.5])

    def test_zero_delta_is_uniform(self):
        spec = make_dimer(6, 0.0)
        assert spec.couplings == pytest.approx([1.0] * 5)

    def test_delta_one_rejected(self):
        with pytest.raises(ChainSpecError):
            make_dimer(4, 1.0)

    def test_negative_delta_rejected(self):
        with pytest.raises(ChainSpecError):
            make_dimer(4, -0.1)

    def test_odd_length_rejected(self):
        with pytest.raises(ChainSpecError):
            make_dimer(5, 0.3)

    def test_weak_strong_ratio(self):
        assert make_dimer(8, 0.5).weak_strong_ratio == pytest.approx(1.0 / 3.0)


class TestEndBondFactory:
    def test_couplings(self):
        spec = make_end_bond(6, 0.5)
        assert spec.couplings == pytest.approx([0.5, 1, 1, 1, 0.5])

    def test_lambda_one_is_uniform(self):
        assert make_end_bond(4, 1.0).couplings == pytest.approx([1.0, 1.0, 1.0])

    def test_odd_length_rejected(self):
        with pytest.raises(ChainSpecError):
            make_end_bond(5, 0.5)

    @pytest.mark.parametrize("lam", [0.0, -0.2, 1.2])
    def test_lambda_out_of_range(self, lam):
        with pytest.raises(ChainSpecError):
            make_end_bond(6, lam)


class TestAdjacency:
    def test_uniform_half_couplings(self):
        m = build_adjacency(make_uniform(4))
        assert m.off_diagonal == pytest.approx([0.5, 0.5, 0.5])
        assert m.diagonal == pytest.approx([0, 0, 0, 0])

    def test_dimer(self):
        m = build_adjacency(make_dimer(4, 0.5))
        assert m.off_diagonal == pytest.approx([0.25, 0.75, 0.25])

    def test_end_bond(self):
        m = build_adjacency(make_end_bond(6, 0.2))
        assert m.off_diagonal == pytest.approx([0.1, 0.5, 0.5, 0.5, 0.1])

    def test_linear_in_scale(self):
        base = build_adjacency(make_dimer(6, 0.3, scale=1.0))
        scaled = build_adjacency(make_dimer(6, 0.3, scale=2.5))
        assert scaled.off_diagonal == pytest.approx(2.5 * base.off_diagonal)

    def test_dense_matches(self):
        m = build_adjacency(make_uniform(4))
        dense = m.dense()
        assert dense == pytest.approx(dense.T)
        assert dense[0, 1] == 0.5 and dense[0, 2] == 0.0


class TestSpecInvariants:
    def test_patterns_palindromic(self):
        assert make_dimer(10, 0.4).is_palindromic
        assert make_end_bond(10, 0.3).is_palindromic
        assert make_uniform(10).is_palindromic

    def test_dimer_zero_equals_endbond_one(self):
        a = make_dimer(8, 0.0)
        b = make_end_bond(8, 1.0)
        c = make_uniform(8)
        assert a.couplings == b.couplings == c.couplings

    def test_zero_coupling_rejected(self):
        with pytest.raises(ChainSpecError):
            make_custom([1.0, 0.0, 1.0])

    def test_custom_allows_two_sites(self):
        spec = make_custom([1.0])
        assert spec.length == 2

    def test_custom_odd_rejected(self):
        with pytest.raises(ChainSpecError):
            make_custom([1.0, 1.0])

    def test_tridiagonal_rejects_zero_offdiagonal(self):
        with pytest.raises(ChainSpecError):
            TridiagonalMatrix(diagonal=np.zeros(3), off_diagonal=np.array([0.5, 0.0]))


class TestJson:
    def test_round_trip(self):
        spec = make_end_bond(6, 0.25, scale=2.0)
        again = ChainSpec.from_json(spec.to_json())
        assert again == spec

    def test_schema_keys(self):
        doc = json.loads(make_dimer(4, 0.5).to_json())
        assert set(doc) == {"length", "pattern", "delta", "couplings", "scale"}
        assert doc["pattern"] == "dimer"
        doc = json.loads(make_end_bond(4, 0.5).to_json())
        assert "lambda" in doc and "delta" not in doc
