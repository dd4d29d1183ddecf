import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperprocrustes import bench
from hyperprocrustes.bench import (BenchmarkConfig, count_outliers, quartiles,
                                   run_benchmark, summarize, synth_pair)
from hyperprocrustes.descent import GdConfig
from hyperprocrustes.errors import NumericalError, ValidationError
from hyperprocrustes.isometry import apply, is_hunitary
from hyperprocrustes.lorentz import on_sheet
from hyperprocrustes.procrustes import normalized_discrepancy


def hinges_by_sorting(values):
    v = sorted(values)
    n = len(v)

    def med(a):
        m = len(a)
        return a[m // 2] if m % 2 else (a[m // 2 - 1] + a[m // 2]) / 2

    if n == 1:
        return v[0], v[0], v[0]
    return med(v[: n // 2]), med(v), med(v[(n + 1) // 2:])


class TestQuartiles:
    def test_five(self):
        assert quartiles([1, 2, 3, 4, 5]) == (1.5, 3, 4.5)

    def test_single(self):
        assert quartiles([7]) == (7, 7, 7)

    def test_constant(self):
        q = quartiles([2.5] * 9)
        assert q[0] == q[1] == q[2] == 2.5

    def test_even(self):
        assert quartiles([4, 1, 3, 2]) == (1.5, 2.5, 3.5)

    def test_empty(self):
        with pytest.raises(ValidationError):
            quartiles([])

    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=60))
    def test_matches_sort_recomputation(self, values):
        q = quartiles(values)
        ref = hinges_by_sorting(values)
        np.testing.assert_allclose(q, ref, rtol=1e-12, atol=1e-9)
        assert q[0] <= q[1] <= q[2]


class TestOutliers:
    def test_zero_iqr_limit(self):
        # hinges (1, 1, 1): zero spread, so anything off the median counts
        assert quartiles([1, 1, 1, 1, 1, 1, 100]) == (1, 1, 1)
        assert count_outliers([1, 1, 1, 1, 1, 1, 100], k=5) == 1

    def test_five_values_hinge_spread(self):
        # upper hinge of [1, 1, 1, 1, 100] is 50.5, so 100 is within 5 half-IQRs
        assert quartiles([1, 1, 1, 1, 100]) == (1, 1, 50.5)
        assert count_outliers([1, 1, 1, 1, 100], k=5) == 0

    def test_constant(self):
        assert count_outliers([3.0] * 10, k=5) == 0

    def test_one_far_value(self):
        vals = [0.010, 0.011, 0.009, 0.0105, 0.0095, 0.0102, 0.0098, 10.0]
        # Q1 = 0.00965, Q2 = 0.0101, Q3 = 0.01075; threshold 5 * 0.00055
        assert count_outliers(vals, k=5) == 1

    def test_infinite_counts(self):
        assert count_outliers([1.0, 1.1, 0.9, 1.05, np.inf], k=5) == 1

    def test_mostly_failed(self):
        assert count_outliers([np.inf] * 4 + [1.0], k=5) >= 4

    def test_bad_k(self):
        with pytest.raises(ValidationError):
            count_outliers([1.0], k=0)


class TestSynth:
    def test_noise_free(self, rng):
        target, source, R = synth_pair(6, 3, 0.0, rng)
        assert normalized_discrepancy(target, apply(R, source)) <= 1e-12
        assert is_hunitary(R)
        assert np.all(on_sheet(target)) and np.all(on_sheet(source))

    def test_noise_level(self, rng):
        for _ in range(100):
            target, source, R = synth_pair(10, 2, 1e-2, rng)
            e = normalized_discrepancy(target, apply(R, source))
            assert 1e-5 < e < 1

    def test_deterministic(self):
        a = synth_pair(5, 2, 1e-2, np.random.default_rng(9))
        b = synth_pair(5, 2, 1e-2, np.random.default_rng(9))
        for u, v in zip(a, b):
            np.testing.assert_array_equal(u, v)

    def test_invalid(self, rng):
        with pytest.raises(ValidationError):
            synth_pair(0, 2, 0.0, rng)
        with pytest.raises(ValidationError):
            synth_pair(3, 2, -1.0, rng)


class TestConfig:
    def test_from_dict(self):
        cfg = BenchmarkConfig.from_dict({"dims": [2], "sizes": [5, 6], "trials": 3,
                                         "gd": {"alpha": 0.1, "backtrack": False}})
        assert cfg.gd == GdConfig(alpha=0.1, backtrack=False)
        assert BenchmarkConfig.from_dict(cfg.to_dict()) == cfg

    @pytest.mark.parametrize("raw", [{"dims": []}, {"sizes": [0]}, {"trials": 0},
                                     {"noise_sigma": -1}, {"outlier_k": 0},
                                     {"bogus": 1}])
    def test_invalid(self, raw):
        with pytest.raises(ValidationError):
            BenchmarkConfig.from_dict(raw)


SMALL = dict(dims=(2,), sizes=(5, 6), trials=6, seed=4,
             gd=GdConfig(max_iters=60))


class TestRun:
    def test_noise_free_exact(self):
        cfg = BenchmarkConfig(dims=(2, 3), sizes=(5,), trials=25, noise_sigma=0.0,
                              seed=1, gd=GdConfig(max_iters=30))
        records, _ = run_benchmark(cfg)
        assert len(records) == 50
        assert max(r.e_P for r in records) <= 1e-9
        assert max(r.e_baseline for r in records) <= 1e-12

    def test_summary_consistency(self):
        records, summary = run_benchmark(BenchmarkConfig(**SMALL))
        assert [(r.d, r.N, r.trial) for r in records] == sorted(
            (r.d, r.N, r.trial) for r in records)
        for cell in summary["cells"]:
            recs = [r for r in records if (r.d, r.N) == (cell["d"], cell["N"])]
            for m, stats in cell["methods"].items():
                vals = [r.value(m) for r in recs]
                assert (stats["Q1"], stats["Q2"], stats["Q3"]) == pytest.approx(
                    hinges_by_sorting(vals))
                assert stats["outlier_prob"] * len(recs) == pytest.approx(
                    stats["outlier_count"])
        for m, pooled in summary["pooled"].items():
            assert pooled["outlier_count"] == sum(
                c["methods"][m]["outlier_count"] for c in summary["cells"])

    def test_order_and_parallel_independent(self):
        serial, _ = run_benchmark(BenchmarkConfig(**SMALL))
        shuffled, _ = run_benchmark(BenchmarkConfig(**{**SMALL, "sizes": (6, 5)}))
        parallel, _ = run_benchmark(BenchmarkConfig(**SMALL, workers=2))
        assert serial == shuffled == parallel

    def test_single_trial_matches_run(self):
        cfg = BenchmarkConfig(**SMALL)
        records, _ = run_benchmark(cfg)
        assert bench.run_trial(2, 6, 3, cfg) == next(
            r for r in records if (r.N, r.trial) == (6, 3))

    def test_gd_failure_recorded_as_inf(self, monkeypatch):
        def boom(*args, **kwargs):
            raise NumericalError("diverged")

        monkeypatch.setattr(bench, "gd_align", boom)
        rec = bench.run_trial(2, 5, 0, BenchmarkConfig(**SMALL))
        assert rec.e_GD == np.inf
        assert np.isfinite(rec.e_P)
        summary = summarize([rec, bench.run_trial(2, 5, 1, BenchmarkConfig(**SMALL))])
        assert summary["cells"][0]["methods"]["GD"]["Q3"] == np.inf

    def test_unconverged_counts_as_failure(self):
        cfg = BenchmarkConfig(**{**SMALL, "gd": GdConfig(max_iters=1)})
        rec = bench.run_trial(2, 5, 0, cfg)
        assert rec.e_GD == np.inf
        assert rec.gd_iterations == 1
