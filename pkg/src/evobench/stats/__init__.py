from .hypothesis import (
    ClassDecision,
    TestKind,
    TestReport,
    TVariant,
    VarianceDecision,
    anova,
    choose_t_variant,
    f_test,
    mean_var,
    t_rule,
    t_test,
)
from .partition import EquivalencePartition, TraceStep, partition_equivalence, replay_partition
from .special import betainc, f_cdf, f_ppf, f_sf, t_cdf, t_sf_two_sided

__all__ = [
    "ClassDecision",
    "EquivalencePartition",
    "TestKind",
    "TestReport",
    "TraceStep",
    "TVariant",
    "VarianceDecision",
    "anova",
    "betainc",
    "choose_t_variant",
    "f_cdf",
    "f_ppf",
    "f_sf",
    "f_test",
    "mean_var",
    "partition_equivalence",
    "replay_partition",
    "t_cdf",
    "t_rule",
    "t_sf_two_sided",
    "t_test",
]
