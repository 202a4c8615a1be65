import csv
import json

import pytest

from evobench.cli import main
from evobench.config import default_batch, format_batch
from evobench.harness import CSV_COLUMNS
from evobench.report import TTEST_COLUMNS, render_ttest


@pytest.fixture
def batch_file(tmp_path):
    path = tmp_path / "batch.ini"
    path.write_text(format_batch(default_batch(runs_per_config=3, master_seed=7)))
    return path


def write_results(path, rows):
    with path.open("w", newline="") as handle:
        w = csv.writer(handle, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for config_id, variant, crossover, values in rows:
            for i, v in enumerate(values):
                w.writerow([config_id, variant, crossover, i, i, v, "true" if v < 4000 else "false", 0.0, 0, 0])


def test_validate_ok(batch_file, capsys):
    assert main(["validate", "--config", str(batch_file)]) == 0
    assert "12 configurations" in capsys.readouterr().out


def test_validate_lists_violations(batch_file, capsys):
    code = main(["validate", "--config", str(batch_file), "--override", "*.population_size=1"])
    assert code == 2
    assert capsys.readouterr().err.count("population_size") == 12


def test_missing_config_file(tmp_path, capsys):
    missing = tmp_path / "nope.ini"
    assert main(["run", "--config", str(missing), "--out", str(tmp_path)]) == 2
    assert str(missing) in capsys.readouterr().err
    assert list(tmp_path.iterdir()) == []


def test_run_with_override(batch_file, tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["run", "--config", str(batch_file), "--out", str(out), "--override", "runs_per_config=2",
                 "--override", "*.max_evaluations=200"])
    assert code == 0
    lines = (out / "results.csv").read_text().splitlines()
    assert len(lines) == 1 + 24
    assert "GGA-MPX" in capsys.readouterr().out


def test_run_io_error(batch_file, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["run", "--config", str(batch_file), "--out", str(blocker / "sub")]) == 3


def test_seed_flag_changes_results(batch_file, tmp_path):
    for name, seed in (("a", "1"), ("b", "2")):
        main(["run", "--config", str(batch_file), "--out", str(tmp_path / name), "--seed", seed,
              "--override", "*.max_evaluations=100"])
    assert (tmp_path / "a/results.csv").read_text() != (tmp_path / "b/results.csv").read_text()


def test_workers_env_default(batch_file, tmp_path, monkeypatch):
    monkeypatch.setenv("EVOBENCH_WORKERS", "2")
    assert main(["run", "--config", str(batch_file), "--out", str(tmp_path),
                 "--override", "*.max_evaluations=100"]) == 0


def test_analyze_identical_best_samples_form_one_class(tmp_path):
    values = [100, 200, 300, 400]
    rows = [(f"{v}-MPX", v, "MPX", values) for v in ("GGA", "SSGA", "SGGA", "MU_PLUS_MU")]
    write_results(tmp_path / "results.csv", rows)
    assert main(["analyze", "--out", str(tmp_path)]) == 0
    analysis = json.loads((tmp_path / "analysis.json").read_text())
    assert analysis["best_of_breed"]["partition"]["classes"] == [["GGA-MPX", "SSGA-MPX", "SGGA-MPX", "MU_PLUS_MU-MPX"]]


def test_analyze_dominant_config_alone_in_best_class(tmp_path):
    slow = [3000, 3100, 2900, 3050, 2950]
    rows = [
        ("GGA-MPX", "GGA", "MPX", [100, 110, 90, 105, 95]),
        ("SSGA-MPX", "SSGA", "MPX", slow),
        ("SGGA-MPX", "SGGA", "MPX", [v + 10 for v in slow]),
        ("MU_PLUS_MU-MPX", "MU_PLUS_MU", "MPX", [v - 10 for v in slow]),
    ]
    write_results(tmp_path / "results.csv", rows)
    assert main(["analyze", "--out", str(tmp_path)]) == 0
    classes = json.loads((tmp_path / "analysis.json").read_text())["best_of_breed"]["partition"]["classes"]
    assert classes[0] == ["GGA-MPX"]
    assert sorted(classes[1]) == ["MU_PLUS_MU-MPX", "SGGA-MPX", "SSGA-MPX"]


def test_analyze_within_variant_crossovers_share_class(tmp_path):
    base = [1500, 1400, 1600, 1550, 1450, 1480]
    rows = [(f"SSGA-{c}", "SSGA", c, [v + 5 * i for v in base]) for i, c in enumerate(("SPX", "MPX", "BLX"))]
    write_results(tmp_path / "results.csv", rows)
    assert main(["analyze", "--out", str(tmp_path)]) == 0
    analysis = json.loads((tmp_path / "analysis.json").read_text())
    (ssga,) = analysis["variants"]
    assert ssga["partition"]["classes"] == [["SSGA-SPX", "SSGA-MPX", "SSGA-BLX"]]
    assert ssga["best"] == "SSGA-SPX"
    assert all(p["decision"] == "SAME_CLASS" for p in ssga["pairwise"])
    pairwise = (tmp_path / "pairwise.csv").read_text().splitlines()
    assert pairwise[0] == "label_a,label_b,test_variant,t,df,p,decision"
    assert len(pairwise) == 1 + 3


def test_analyze_stats_override(tmp_path):
    rows = [("SSGA-SPX", "SSGA", "SPX", [10, 12, 11, 13]), ("SSGA-MPX", "SSGA", "MPX", [12, 14, 13, 15])]
    write_results(tmp_path / "results.csv", rows)
    main(["analyze", "--out", str(tmp_path), "--override", "stats.t_threshold=100"])
    analysis = json.loads((tmp_path / "analysis.json").read_text())
    assert analysis["settings"]["t_threshold"] == 100.0
    assert analysis["variants"][0]["pairwise"][0]["decision"] == "SAME_CLASS"


def test_analyze_malformed_csv(tmp_path, capsys):
    (tmp_path / "results.csv").write_text(",".join(CSV_COLUMNS) + "\nc,GGA,MPX,0,1,x,false,0.1,1,2\n")
    assert main(["analyze", "--out", str(tmp_path)]) == 4
    assert "line 2" in capsys.readouterr().err
    assert not (tmp_path / "analysis.json").exists()


def test_analyze_missing_results(tmp_path):
    assert main(["analyze", "--out", str(tmp_path)]) == 4


def test_report_missing_analysis(tmp_path):
    assert main(["report", "--out", str(tmp_path)]) == 4


def test_report_tables(tmp_path):
    rows = [
        ("GGA-SPX", "GGA", "SPX", [1000, 1200, 1100]),
        ("GGA-MPX", "GGA", "MPX", [900, 950, 1000]),
        ("SSGA-MPX", "SSGA", "MPX", [2000, 2100, 4000]),
    ]
    write_results(tmp_path / "results.csv", rows)
    assert main(["analyze", "--out", str(tmp_path)]) == 0
    assert main(["report", "--out", str(tmp_path)]) == 0
    data = list(csv.reader((tmp_path / "table_data.csv").open()))
    assert data[0] == ["run_index", "GGA-SPX", "GGA-MPX", "SSGA-MPX"]
    assert data[4] == ["mean", "1100", "950", "2700"]
    assert data[6] == ["n_censored", "0", "0", "1"]
    anova_rows = list(csv.DictReader((tmp_path / "table_anova.csv").open()))
    assert {r["scope"] for r in anova_rows} == {"GGA", "BEST_OF_BREED"}
    ttest = list(csv.DictReader((tmp_path / "table_ttest.csv").open()))
    assert [(r["scope"], r["label_a"], r["label_b"]) for r in ttest] == [
        ("GGA", "GGA-SPX", "GGA-MPX"),
        ("BEST_OF_BREED", "GGA-MPX", "SSGA-MPX"),
    ]
    assert all(r["decision"] in ("SAME", "DIFFERENT") for r in ttest)


def test_empty_pairwise_gives_header_only():
    analysis = {"settings": {"t_threshold": 1.7}, "variants": [], "best_of_breed": {"pairwise": []}}
    assert render_ttest(analysis) == ",".join(TTEST_COLUMNS) + "\n"
