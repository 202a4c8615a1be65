"""Render an analysis into the three comparison tables.

``table_data.csv`` is the per-run data grid, ``table_anova.csv`` the ANOVA
summaries in single-factor layout, and ``table_ttest.csv`` the pairwise
t-tests with their class decisions. Numbers are printed to 6 significant
digits.
"""

from __future__ import annotations

import csv
import io

DATA_FILE = "table_data.csv"
ANOVA_FILE = "table_anova.csv"
TTEST_FILE = "table_ttest.csv"

ANOVA_COLUMNS = [
    "scope", "row", "name", "count", "sum", "mean", "variance", "ss", "df", "ms", "f", "p_value", "f_crit",
]
TTEST_COLUMNS = [
    "scope", "label_a", "label_b", "mean_a", "mean_b", "var_a", "var_b", "f", "f_crit", "test_variant",
    "t", "df", "p_value", "t_threshold", "decision",
]


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format(value, ".6g")


def _writer(buffer):
    return csv.writer(buffer, lineterminator="\n")


def render_data(analysis: dict) -> str:
    samples = analysis["samples"]
    buffer = io.StringIO()
    w = _writer(buffer)
    w.writerow(["run_index"] + [s["label"] for s in samples])
    longest = max((s["n"] for s in samples), default=0)
    for i in range(longest):
        w.writerow([str(i)] + [fmt(s["values"][i]) if i < s["n"] else "" for s in samples])
    w.writerow(["mean"] + [fmt(s["mean"]) for s in samples])
    w.writerow(["variance"] + [fmt(s["variance"]) for s in samples])
    w.writerow(["n_censored"] + [str(s["n_censored"]) for s in samples])
    return buffer.getvalue()


def _scopes(analysis: dict):
    for entry in analysis["variants"]:
        yield entry["variant"], entry
    yield "BEST_OF_BREED", analysis["best_of_breed"]


def render_anova(analysis: dict) -> str:
    summaries = {s["label"]: s for s in analysis["samples"]}
    buffer = io.StringIO()
    w = _writer(buffer)
    w.writerow(ANOVA_COLUMNS)
    for scope, entry in _scopes(analysis):
        result = entry["anova"]
        if result is None:
            continue
        for label in entry["labels"]:
            s = summaries[label]
            total = s["mean"] * s["n"]
            w.writerow([scope, "GROUP", label, s["n"], fmt(total), fmt(s["mean"]), fmt(s["variance"])] + [""] * 6)
        d = result["details"]
        df_between, df_within = int(result["df1"]), int(result["df2"])
        w.writerow([scope, "BETWEEN", "Between Groups", "", "", "", "", fmt(d["ss_between"]), df_between,
                    fmt(d["ms_between"]), fmt(result["statistic"]), fmt(result["p_value"]), fmt(d["f_critical"])])
        w.writerow([scope, "WITHIN", "Within Groups", "", "", "", "", fmt(d["ss_within"]), df_within,
                    fmt(d["ms_within"])] + [""] * 3)
        w.writerow([scope, "TOTAL", "Total", "", "", "", "", fmt(d["ss_between"] + d["ss_within"]),
                    df_between + df_within] + [""] * 4)
    return buffer.getvalue()


def render_ttest(analysis: dict) -> str:
    threshold = analysis["settings"]["t_threshold"]
    buffer = io.StringIO()
    w = _writer(buffer)
    w.writerow(TTEST_COLUMNS)
    for scope, entry in _scopes(analysis):
        for row in entry["pairwise"]:
            t, f = row["t_test"], row["f_test"]
            d = t["details"]
            decision = "SAME" if row["decision"] == "SAME_CLASS" else "DIFFERENT"
            w.writerow([
                scope, row["label_a"], row["label_b"], fmt(d["mean_a"]), fmt(d["mean_b"]), fmt(d["var_a"]),
                fmt(d["var_b"]), fmt(f["statistic"]), fmt(f["details"]["f_critical"]), row["test_variant"],
                fmt(t["statistic"]), fmt(t["df1"]), fmt(t["p_value"]), fmt(threshold), decision,
            ])
    return buffer.getvalue()


def render_all(analysis: dict) -> dict[str, str]:
    return {
        DATA_FILE: render_data(analysis),
        ANOVA_FILE: render_anova(analysis),
        TTEST_FILE: render_ttest(analysis),
    }
