import io
import math
from dataclasses import replace

import pytest

from evobench.config import Batch, default_batch
from evobench.harness import (
    CSV_COLUMNS,
    ResultsFormatError,
    derive_seed,
    expand,
    parse_results,
    read_results,
    results_csv_text,
    run_batch,
    to_sample_sets,
)
from evobench.model import Crossover, GAConfig, RunRecord, Variant


def small_batch(runs=3, budget=300):
    batch = default_batch(runs_per_config=runs, master_seed=42)
    configs = {k: c.replace(max_evaluations=budget) for k, c in batch.configs.items()}
    return replace(batch, configs=configs)


def test_seed_is_deterministic():
    assert derive_seed(1, "GGA-MPX", 7) == derive_seed(1, "GGA-MPX", 7)
    assert 0 <= derive_seed(2**64 - 1, "x", 2**63) < 2**64


def test_default_grid_seeds_are_distinct():
    cells = expand(default_batch())
    seeds = [cfg.seed for _, _, cfg in cells]
    assert len(cells) == 360
    assert len(set(seeds)) == 360


def test_master_seed_changes_every_cell():
    a = [cfg.seed for _, _, cfg in expand(default_batch(master_seed=0))]
    b = [cfg.seed for _, _, cfg in expand(default_batch(master_seed=1))]
    assert all(x != y for x, y in zip(a, b))


def test_minimal_batch():
    batch = Batch(configs={"only": GAConfig(max_evaluations=200)}, runs_per_config=2, master_seed=5)
    records = run_batch(batch)
    assert len(records) == 2
    assert records[0].seed != records[1].seed
    assert [r.run_index for r in records] == [0, 1]


def test_batch_persists_and_cleans_partial(tmp_path):
    out = tmp_path / "results.csv"
    records = run_batch(small_batch(), out_path=out)
    assert len(records) == 36
    assert not (tmp_path / "results.csv.partial").exists()
    assert read_results(out) == records


def test_worker_count_does_not_change_output(tmp_path):
    batch = small_batch(runs=2, budget=200)
    run_batch(batch, workers=1, out_path=tmp_path / "a.csv")
    run_batch(batch, workers=3, out_path=tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_csv_floats_round_trip():
    record = RunRecord("c", Variant.SSGA, Crossover.BLX, 0, 2**64 - 1, 17, True, 0.1 + 0.2, (1 / 3, -math.pi))
    (back,) = parse_results(io.StringIO(results_csv_text([record])))
    assert back == record


def test_csv_header():
    assert results_csv_text([]).strip() == ",".join(CSV_COLUMNS)


@pytest.mark.parametrize(
    "body, line",
    [
        ("c,GGA,MPX,0,1,16,false,0.1,1,2\nc,GGA,MPX,1,1,oops,false,0.1,1,2\n", 3),
        ("c,GGA,MPX,0,1,16,false,0.1,1\n", 2),
        ("c,NOPE,MPX,0,1,16,false,0.1,1,2\n", 2),
        ("c,GGA,MPX,0,1,16,maybe,0.1,1,2\n", 2),
    ],
)
def test_malformed_csv_reports_line(body, line):
    text = ",".join(CSV_COLUMNS) + "\n" + body
    with pytest.raises(ResultsFormatError) as info:
        parse_results(io.StringIO(text))
    assert info.value.line == line


def test_sample_sets_group_and_censor():
    records = [
        RunRecord("b", Variant.GGA, Crossover.MPX, 1, 0, 4000, False, 0.1, (0.0, 0.0)),
        RunRecord("a", Variant.GGA, Crossover.SPX, 0, 0, 120, True, 0.0, (0.0, 0.0)),
        RunRecord("b", Variant.GGA, Crossover.MPX, 0, 0, 300, True, 0.0, (0.0, 0.0)),
        RunRecord("a", Variant.GGA, Crossover.SPX, 1, 0, 4000, False, 0.2, (0.0, 0.0)),
    ]
    samples = to_sample_sets(records)
    assert [s.label for s in samples] == ["b", "a"]
    b, a = samples
    assert b.values == (300.0, 4000.0) and b.censored == (False, True)
    assert a.values == (120.0, 4000.0) and a.censored == (False, True)


def test_sample_sets_on_grid(tmp_path):
    records = run_batch(small_batch(runs=3, budget=100))
    samples = to_sample_sets(records)
    assert len(samples) == 12 and all(s.n == 3 for s in samples)
    assert all(v == 100 for s in samples for v, c in zip(s.values, s.censored) if c)


def test_sample_mean_equals_csv_mean(tmp_path):
    out = tmp_path / "results.csv"
    records = run_batch(small_batch(runs=4, budget=400), out_path=out)
    rows = out.read_text().splitlines()[1:]
    for sample in to_sample_sets(records):
        column = [int(r.split(",")[5]) for r in rows if r.split(",")[0] == sample.label]
        assert sum(sample.values) / sample.n == sum(column) / len(column)
