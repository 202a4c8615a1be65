"""Comparison pipeline: per-variant crossover tests, then best-of-breed partitioning."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict
from itertools import combinations
from typing import Sequence

from .config import StatsConfig
from .harness import to_sample_sets
from .model import RunRecord, SampleSet, Variant
from .stats import (
    anova,
    choose_t_variant,
    f_ppf,
    f_test,
    mean_var,
    partition_equivalence,
    t_rule,
    t_test,
)

PAIRWISE_COLUMNS = ["label_a", "label_b", "test_variant", "t", "df", "p", "decision"]

NOTES = [
    "Failed runs are censored at the evaluation budget and counted in n_censored.",
    "SSGA and SGGA are charged one evaluation per cycle (one offspring); GGA and (mu+mu) are charged P.",
    "The worst-mean sample is removed after each significant ANOVA round when forming equivalence classes.",
]


def _summary(sample: SampleSet, record: RunRecord) -> dict:
    mean, var = mean_var(sample)
    return {
        "label": sample.label,
        "variant": record.variant.value,
        "crossover": record.crossover.value,
        "n": sample.n,
        "mean": mean,
        "variance": var,
        "n_censored": sum(sample.censored),
        "values": list(sample.values),
    }


def _anova_entry(samples: Sequence[SampleSet], alpha: float) -> dict:
    report = anova(samples)
    entry = report.to_dict()
    entry["details"]["f_critical"] = f_ppf(1.0 - alpha, report.df1, report.df2)
    return entry


def compare_pair(a: SampleSet, b: SampleSet, stats: StatsConfig) -> dict:
    f_report, decision = f_test(a, b, stats.alpha)
    variant = choose_t_variant(decision, stats.conventional_f_mapping)
    t_report = t_test(a, b, variant, tails=stats.tails)
    return {
        "label_a": a.label,
        "label_b": b.label,
        "f_test": f_report.to_dict(),
        "test_variant": variant.value,
        "t_test": t_report.to_dict(),
        "decision": t_rule(t_report, stats.t_threshold).value,
    }


def compare_group(samples: Sequence[SampleSet], stats: StatsConfig) -> dict:
    """ANOVA, pairwise F/t tests and the equivalence partition for a set of samples."""
    out = {"labels": [s.label for s in samples]}
    if len(samples) < 2:
        out.update(anova=None, pairwise=[], partition={"classes": [out["labels"]], "trace": []})
        return out
    out["anova"] = _anova_entry(samples, stats.alpha)
    out["pairwise"] = [compare_pair(a, b, stats) for a, b in combinations(samples, 2)]
    out["partition"] = partition_equivalence(samples, stats.alpha).to_dict()
    return out


def analyze(records: Sequence[RunRecord], stats: StatsConfig | None = None) -> dict:
    stats = stats or StatsConfig()
    samples = to_sample_sets(records)
    first = {}
    for record in records:
        first.setdefault(record.config_id, record)
    by_label = {s.label: s for s in samples}
    means = {s.label: mean_var(s)[0] for s in samples}

    variants = []
    best_labels = []
    present = {first[s.label].variant for s in samples}
    for variant in [v for v in Variant if v in present]:
        group = [s for s in samples if first[s.label].variant is variant]
        entry = {"variant": variant.value}
        entry.update(compare_group(group, stats))
        best = min(group, key=lambda s: means[s.label])
        entry["best"] = best.label
        best_labels.append(best.label)
        variants.append(entry)

    best_group = [by_label[label] for label in best_labels]
    return {
        "settings": asdict(stats),
        "notes": NOTES,
        "samples": [_summary(s, first[s.label]) for s in samples],
        "variants": variants,
        "best_of_breed": compare_group(best_group, stats),
    }


def analysis_json(analysis: dict) -> str:
    return json.dumps(analysis, indent=2, sort_keys=False, allow_nan=False) + "\n"


def all_pairwise(analysis: dict) -> list[dict]:
    rows = []
    for entry in analysis["variants"]:
        rows.extend(entry["pairwise"])
    rows.extend(analysis["best_of_breed"]["pairwise"])
    return rows


def _num(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, float) and math.isfinite(value):
        return format(value, ".17g")
    return str(value)


def pairwise_csv(analysis: dict) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(PAIRWISE_COLUMNS)
    for row in all_pairwise(analysis):
        t = row["t_test"]
        writer.writerow(
            [row["label_a"], row["label_b"], row["test_variant"], _num(t["statistic"]), _num(t["df1"]),
             _num(t["p_value"]), row["decision"]]
        )
    return buffer.getvalue()
