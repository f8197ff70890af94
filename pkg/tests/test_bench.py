import pytest

from mintest import (
    StreamConfig,
    bench_matrix,
    csv_text,
    load_fixture_matrix,
    run_benchmark,
    summarize,
)
from mintest.bench import CSV_COLUMNS


class TestBenchMatrix:
    def test_fixture_replay(self, q25):
        record = bench_matrix(q25)
        assert record.heuristic_t0 == 7
        assert record.exact_t0 == 7
        assert record.minimal_test_count == 9
        assert not record.mismatch
        assert record.subsets_checked_with <= record.subsets_checked_without
        assert record.subsets_pruned >= 0

    def test_timings_recorded(self, q25):
        record = bench_matrix(q25)
        assert record.ms_search > 0
        assert record.ms_analyze > 0


class TestRunBenchmark:
    def test_small_stream(self):
        config = StreamConfig(
            count=9, rows=(8, 10), cols=(6, 7), densities=(0.3, 0.5, 0.7), seed=5
        )
        result = run_benchmark(config)
        assert len(result.records) == 9
        assert result.mismatches == 0
        for r in result.records:
            if r.error:
                continue
            assert r.exact_t0 is not None
            assert r.subsets_checked_with <= r.subsets_checked_without

    def test_count_zero_header_only(self):
        result = run_benchmark(StreamConfig(count=0, seed=1))
        text = csv_text(result, deterministic=True)
        assert text == ",".join(CSV_COLUMNS) + "\n"

    def test_deterministic_byte_identical(self):
        config = StreamConfig(count=6, seed=99, deterministic=True)
        a = csv_text(run_benchmark(config), deterministic=True)
        b = csv_text(run_benchmark(config), deterministic=True)
        assert a == b
        assert "ms_analyze" in a.splitlines()[0]

    def test_nondeterministic_has_timestamp(self):
        config = StreamConfig(count=1, seed=3)
        text = csv_text(run_benchmark(config), deterministic=False)
        assert text.startswith("# generated ")

    def test_workers_same_records(self):
        base = StreamConfig(count=6, seed=31, deterministic=True)
        seq = run_benchmark(base)
        par = run_benchmark(
            StreamConfig(count=6, seed=31, deterministic=True, workers=2)
        )
        assert seq.records == par.records

    def test_generation_failures_recorded_not_raised(self):
        # rows > 2^cols is caught per record
        result = run_benchmark(
            StreamConfig(count=2, rows=(9,), cols=(3,), densities=(0.5,), seed=7)
        )
        assert result.failures == 2
        text = csv_text(result, deterministic=True)
        assert "# record 0 failed" in text

    def test_summary_shape(self):
        result = run_benchmark(StreamConfig(count=6, seed=17))
        summary = summarize(result)
        assert summary["records"] == 6
        assert summary["mismatches"] == 0
        assert isinstance(summary["heuristic_error_histogram"], dict)

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            run_benchmark(StreamConfig(count=1, rows=()))
