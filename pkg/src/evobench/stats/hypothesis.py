"""One-way ANOVA, the variance-ratio F-test and two-sample t-tests."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

from ..model import SampleSet
from .special import f_ppf, f_sf, t_sf_two_sided

INF = math.inf


class TestKind(str, enum.Enum):
    ANOVA = "ANOVA"
    F_TEST = "F_TEST"
    T_EQUAL_VAR = "T_EQUAL_VAR"
    T_WELCH = "T_WELCH"

    __test__ = False  # keep pytest from collecting this


class TVariant(str, enum.Enum):
    EQUAL_VAR = "EQUAL_VAR"
    WELCH = "WELCH"


class VarianceDecision(str, enum.Enum):
    EQUAL_VAR = "EQUAL_VAR"
    UNEQUAL_VAR = "UNEQUAL_VAR"


class ClassDecision(str, enum.Enum):
    SAME_CLASS = "SAME_CLASS"
    DIFFERENT_CLASS = "DIFFERENT_CLASS"


@dataclass(frozen=True)
class TestReport:
    """Outcome of a single hypothesis test.

    ``df2`` is 0 for t-tests. ``details`` holds the test-specific extras that
    the report tables print (sums of squares, critical values, ...).
    """

    __test__ = False

    kind: TestKind
    statistic: float
    df1: float
    df2: float
    p_value: float
    inputs: tuple[str, ...]
    details: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "inputs": list(self.inputs),
            "statistic": _json_float(self.statistic),
            "df1": self.df1,
            "df2": self.df2,
            "p_value": self.p_value,
            "details": {k: _json_float(v) if isinstance(v, float) else v for k, v in self.details.items()},
        }


def _json_float(value: float):
    # JSON has no infinity; the sentinel is a string
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def mean_var(sample: SampleSet | Sequence[float]) -> tuple[float, float]:
    """Arithmetic mean and unbiased (n - 1) variance."""
    values = sample.values if isinstance(sample, SampleSet) else tuple(sample)
    n = len(values)
    if n < 2:
        raise ValueError(f"need at least 2 values, got {n}")
    mean = math.fsum(values) / n
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, var


def anova(samples: Sequence[SampleSet]) -> TestReport:
    """One-way ANOVA across ``samples``.

    Zero within-group spread with differing means gives F = inf and p = 0;
    groups that are all identical give F = 0 and p = 1.
    """
    k = len(samples)
    if k < 2:
        raise ValueError(f"ANOVA needs at least 2 groups, got {k}")
    for s in samples:
        if s.n < 2:
            raise ValueError(f"group {s.label!r} needs at least 2 values")
    n_total = sum(s.n for s in samples)
    grand = math.fsum(v for s in samples for v in s.values) / n_total
    means = [math.fsum(s.values) / s.n for s in samples]
    ss_between = math.fsum(s.n * (m - grand) ** 2 for s, m in zip(samples, means))
    ss_within = math.fsum((v - m) ** 2 for s, m in zip(samples, means) for v in s.values)
    df1, df2 = k - 1, n_total - k
    ms_between = ss_between / df1
    ms_within = ss_within / df2
    if ss_within == 0.0:
        f, p = (0.0, 1.0) if ss_between == 0.0 else (INF, 0.0)
    else:
        f = ms_between / ms_within
        p = f_sf(f, df1, df2)
    return TestReport(
        kind=TestKind.ANOVA,
        statistic=f,
        df1=float(df1),
        df2=float(df2),
        p_value=p,
        inputs=tuple(s.label for s in samples),
        details={
            "ss_between": ss_between,
            "ss_within": ss_within,
            "ms_between": ms_between,
            "ms_within": ms_within,
        },
    )


def f_test(a: SampleSet, b: SampleSet, alpha: float = 0.05) -> tuple[TestReport, VarianceDecision]:
    """Variance-ratio F-test with the larger variance in the numerator.

    Returns the report and whether the variances differ at level ``alpha``
    (one-tailed comparison of F with its critical value).
    """
    _, var_a = mean_var(a)
    _, var_b = mean_var(b)
    if var_b > var_a:
        num, den, var_num, var_den = b, a, var_b, var_a
    else:
        num, den, var_num, var_den = a, b, var_a, var_b
    df1, df2 = num.n - 1, den.n - 1
    critical = f_ppf(1.0 - alpha, df1, df2)
    degenerate = False
    if var_num == 0.0:
        f, p, degenerate = 1.0, 1.0, True
    elif var_den == 0.0:
        f, p = INF, 0.0
    else:
        f = var_num / var_den
        p = f_sf(f, df1, df2)
    decision = VarianceDecision.UNEQUAL_VAR if f > critical else VarianceDecision.EQUAL_VAR
    report = TestReport(
        kind=TestKind.F_TEST,
        statistic=f,
        df1=float(df1),
        df2=float(df2),
        p_value=p,
        inputs=(num.label, den.label),
        details={"f_critical": critical, "alpha": alpha, "decision": decision.value, "degenerate": degenerate},
    )
    return report, decision


def choose_t_variant(decision: VarianceDecision, conventional: bool = False) -> TVariant:
    """Map an F-test outcome to the t-test to run.

    By default a significant variance difference selects the equal-variance
    test, reproducing the comparison procedure this toolkit mirrors. With
    ``conventional`` the textbook mapping (differing variances -> Welch) applies.
    """
    unequal = decision is VarianceDecision.UNEQUAL_VAR
    if conventional:
        return TVariant.WELCH if unequal else TVariant.EQUAL_VAR
    return TVariant.EQUAL_VAR if unequal else TVariant.WELCH


def t_test(a: SampleSet, b: SampleSet, variant: TVariant = TVariant.EQUAL_VAR, tails: int = 2) -> TestReport:
    """Two-sample t-test on mean(a) - mean(b).

    ``tails=1`` reports P(T > |t|), half the two-sided value.
    """
    variant = TVariant(variant)
    if tails not in (1, 2):
        raise ValueError(f"tails must be 1 or 2, got {tails}")
    mean_a, var_a = mean_var(a)
    mean_b, var_b = mean_var(b)
    na, nb = a.n, b.n
    diff = mean_a - mean_b
    if variant is TVariant.EQUAL_VAR:
        kind = TestKind.T_EQUAL_VAR
        df = float(na + nb - 2)
        pooled = ((na - 1) * var_a + (nb - 1) * var_b) / df
        se2 = pooled * (1.0 / na + 1.0 / nb)
        details = {"pooled_variance": pooled}
    else:
        kind = TestKind.T_WELCH
        qa, qb = var_a / na, var_b / nb
        se2 = qa + qb
        if se2 > 0:
            df = se2 * se2 / (qa * qa / (na - 1) + qb * qb / (nb - 1))
        else:
            df = float(na + nb - 2)
        details = {}
    if se2 == 0.0:
        t, p = (0.0, 1.0) if diff == 0.0 else (math.copysign(INF, diff), 0.0)
    else:
        t = diff / math.sqrt(se2)
        p = t_sf_two_sided(t, df)
    if tails == 1:
        p *= 0.5
    details.update(
        {"mean_a": mean_a, "mean_b": mean_b, "var_a": var_a, "var_b": var_b, "n_a": na, "n_b": nb, "tails": tails}
    )
    return TestReport(
        kind=kind,
        statistic=t,
        df1=df,
        df2=0.0,
        p_value=p,
        inputs=(a.label, b.label),
        details=details,
    )


def t_rule(report: TestReport | float, threshold: float = 1.7) -> ClassDecision:
    """|t| strictly above ``threshold`` means the two samples are in different classes."""
    if isinstance(report, TestReport):
        if report.kind not in (TestKind.T_EQUAL_VAR, TestKind.T_WELCH):
            raise ValueError(f"t_rule needs a t-test report, got {report.kind.value}")
        statistic = report.statistic
    else:
        statistic = float(report)
    if abs(statistic) > threshold:
        return ClassDecision.DIFFERENT_CLASS
    return ClassDecision.SAME_CLASS
