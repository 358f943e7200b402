import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csrecover import (
    BudgetError,
    DimensionError,
    DomainError,
    SampleSet,
    SplitMix64,
    dense_psi,
    estimate_measurements,
    measure,
    mutual_coherence,
    sample_indices,
)


class TestSplitMix64:
    def test_reference_stream(self):
        # frozen outputs, cross-checked against the reference C implementation
        # of the algorithm; guards cross-platform determinism
        rng = SplitMix64(1234567)
        assert [rng.next_u64() for _ in range(3)] == [
            12033586665282998430,
            440259258031914656,
            2463578999421099143,
        ]
        assert SplitMix64(0).next_u64() == 0x09AAB36CFDA2D1B3

    def test_below_is_in_range_and_deterministic(self):
        a = SplitMix64(99)
        b = SplitMix64(99)
        xs = [a.below(7) for _ in range(200)]
        assert xs == [b.below(7) for _ in range(200)]
        assert set(xs) <= set(range(7))

    def test_below_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            SplitMix64(0).below(0)


class TestSampleIndices:
    def test_full_fraction_is_all_indices(self):
        for seed in (0, 1, 12345):
            np.testing.assert_array_equal(sample_indices(10, 1.0, seed), np.arange(10))

    def test_twenty_percent_of_hundred(self):
        idx = sample_indices(100, 0.2, seed=42)
        assert idx.size == 20
        assert np.unique(idx).size == 20
        assert idx.min() >= 0 and idx.max() < 100
        assert np.all(np.diff(idx) > 0)

    def test_determinism(self):
        np.testing.assert_array_equal(sample_indices(100, 0.2, 42), sample_indices(100, 0.2, 42))
        assert not np.array_equal(sample_indices(100, 0.2, 42), sample_indices(100, 0.2, 43))

    def test_count_uses_floor(self):
        assert sample_indices(10, 0.25, 0).size == 2  # int(2.5)

    def test_budget_error(self):
        with pytest.raises(BudgetError):
            sample_indices(100, 0.001, 0)

    def test_fraction_range_error(self):
        with pytest.raises(ValueError):
            sample_indices(10, 0.0, 0)
        with pytest.raises(ValueError):
            sample_indices(10, 1.5, 0)

    def test_uniformity(self):
        # each of 20 indices should land in a fraction-0.25 draw about 25% of the time
        counts = np.zeros(20)
        draws = 10_000
        for seed in range(draws):
            counts[sample_indices(20, 0.25, seed)] += 1
        freq = counts / draws
        assert np.all(np.abs(freq - 0.25) <= 0.02)


class TestMeasure:
    def test_direct_gather(self):
        ss = measure([5.0, 6.0, 7.0], [0, 2])
        assert ss.n == 3
        np.testing.assert_array_equal(ss.values, [5.0, 7.0])

    def test_identity_gather(self):
        x = np.random.default_rng(0).uniform(size=12)
        ss = measure(x, np.arange(12))
        np.testing.assert_array_equal(ss.values, x)

    def test_singleton(self):
        ss = measure([0.25], [0])
        np.testing.assert_array_equal(ss.values, [0.25])

    def test_out_of_range(self):
        with pytest.raises(DimensionError):
            measure([1.0, 2.0], [0, 2])


class TestSampleSet:
    def test_json_round_trip(self, tmp_path):
        ss = SampleSet(n=6, indices=[1, 4], values=[0.5, 0.25])
        path = tmp_path / "ss.json"
        ss.save(path)
        back = SampleSet.load(path)
        assert back.n == 6
        np.testing.assert_array_equal(back.indices, ss.indices)
        np.testing.assert_array_equal(back.values, ss.values)

    def test_schema_keys(self):
        doc = SampleSet(n=3, indices=[0], values=[1.0]).to_json_dict()
        assert set(doc) == {"n", "indices", "values"}

    def test_invariants(self):
        with pytest.raises(DimensionError):
            SampleSet(n=3, indices=[], values=[])
        with pytest.raises(DimensionError):
            SampleSet(n=3, indices=[2, 1], values=[0.0, 0.0])
        with pytest.raises(DimensionError):
            SampleSet(n=3, indices=[0, 1], values=[0.0])


class TestBudget:
    def test_hand_derived_values(self):
        # ceil(5 * ln(1024/5)) = ceil(26.61...) = 27
        assert estimate_measurements(5, 1024, 1.0).p == 27
        # ceil(ln 3) = 2
        assert estimate_measurements(1, 3, 1.0).p == 2

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            estimate_measurements(8, 8, 1.0)
        with pytest.raises(DomainError):
            estimate_measurements(0, 8, 1.0)
        with pytest.raises(DomainError):
            estimate_measurements(2, 8, 0.0)

    def test_monotone_in_K_below_n_over_e(self):
        n = 1024
        cap = int(n / math.e)
        ps = [estimate_measurements(K, n, 1.0).p for K in range(1, cap)]
        assert all(b >= a for a, b in zip(ps, ps[1:]))

    @settings(max_examples=50, deadline=None)
    @given(K=st.integers(1, 500), n=st.integers(2, 10_000),
           k1=st.floats(0.01, 50.0), factor=st.floats(1.0, 4.0))
    def test_monotone_in_k1(self, K, n, k1, factor):
        if K >= n:
            K = n - 1
        assert estimate_measurements(K, n, k1 * factor).p >= estimate_measurements(K, n, k1).p


class TestMutualCoherence:
    def test_one_point(self):
        assert mutual_coherence([0], 1) == pytest.approx(1.0)

    def test_two_point_row_zero(self):
        assert mutual_coherence([0], 2) == pytest.approx(1 / np.sqrt(2))

    def test_matches_dense_oracle_at_64(self):
        rng = np.random.default_rng(7)
        idx = np.sort(rng.choice(64, 16, replace=False))
        brute = np.max(np.abs(dense_psi(64)[idx]))
        got = mutual_coherence(idx, 64)
        assert got == pytest.approx(brute, rel=1e-12)
        assert 0.0 < got <= 1.0
        assert got <= np.sqrt(2.0 / 64.0) + 1e-12  # entries are f_k-scaled cosines

    def test_empty_rejected(self):
        with pytest.raises(DimensionError):
            mutual_coherence([], 4)
