import csv
import io

import pytest

from eccfrog.bench import CSV_HEADER, OPERATIONS, BenchResult, bench_run, write_bench_csv
from eccfrog.registry import curve_names


@pytest.fixture(scope="module")
def results():
    return bench_run(curve_names(), iters=10, seed=1, warmup=1)


def test_rows_cover_every_curve_and_operation(results):
    got = {(r.curve, r.operation) for r in results}
    assert got == {(c, op) for c in curve_names() for op in OPERATIONS}


def test_percentiles_ordered(results):
    for r in results:
        assert 0 < r.p10_ns <= r.median_ns <= r.p90_ns
        assert r.iterations == 10


def test_csv_schema(results, tmp_path):
    path = tmp_path / "bench.csv"
    write_bench_csv(results, path)
    rows = list(csv.reader(io.StringIO(path.read_text())))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 1 + len(results)
    assert all(len(r) == len(CSV_HEADER) for r in rows)


def test_validation():
    with pytest.raises(ValueError):
        bench_run(["p256"], iters=5)
    with pytest.raises(ValueError):
        BenchResult("c", "op", 10, 5, 6, 7, "env")
