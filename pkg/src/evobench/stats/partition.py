"""Iterative ANOVA partitioning of samples into equivalence classes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..model import SampleSet
from .hypothesis import anova, mean_var


@dataclass(frozen=True)
class TraceStep:
    """One ANOVA round.

    ``removed_label`` is the worst-mean sample dropped after a significant
    result; ``None`` means the round was not significant and closed a class.
    """

    step: int
    removed_label: str | None
    p_value: float

    def to_dict(self) -> dict:
        return {"step": self.step, "removed_label": self.removed_label, "p_value": self.p_value}


@dataclass(frozen=True)
class EquivalencePartition:
    classes: tuple[tuple[str, ...], ...]
    trace: tuple[TraceStep, ...]

    def class_of(self, label: str) -> int:
        for i, members in enumerate(self.classes):
            if label in members:
                return i
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {"classes": [list(c) for c in self.classes], "trace": [s.to_dict() for s in self.trace]}


def partition_equivalence(samples: Sequence[SampleSet], alpha: float = 0.05) -> EquivalencePartition:
    """Split samples into classes of statistically indistinguishable means.

    While the ANOVA over the current set has p < alpha, the sample with the
    largest mean (most evaluations) is removed. The survivors form a class and
    the removed samples, in removal order, are partitioned the same way.
    Classes come out best first; members keep their input order.
    """
    if len(samples) < 2:
        raise ValueError("partitioning needs at least 2 samples")
    labels = [s.label for s in samples]
    if len(set(labels)) != len(labels):
        raise ValueError("sample labels must be unique")
    means = {s.label: mean_var(s)[0] for s in samples}

    classes: list[tuple[str, ...]] = []
    trace: list[TraceStep] = []
    remaining = list(samples)
    while remaining:
        current, removed = remaining, []
        while len(current) > 1:
            report = anova(current)
            if report.p_value >= alpha:
                trace.append(TraceStep(len(trace) + 1, None, report.p_value))
                break
            worst = max(current, key=lambda s: means[s.label])
            current = [s for s in current if s is not worst]
            removed.append(worst)
            trace.append(TraceStep(len(trace) + 1, worst.label, report.p_value))
        classes.append(tuple(s.label for s in current))
        remaining = removed
    return EquivalencePartition(classes=_in_input_order(classes, labels), trace=tuple(trace))


def _in_input_order(classes, labels):
    position = {label: i for i, label in enumerate(labels)}
    return tuple(tuple(sorted(c, key=position.__getitem__)) for c in classes)


def replay_partition(labels: Sequence[str], trace: Sequence[TraceStep]) -> tuple[tuple[str, ...], ...]:
    """Rebuild the classes from the input order and the trace alone, without re-running ANOVA."""
    steps = iter(trace)
    classes = []
    remaining = list(labels)
    while remaining:
        current, removed = remaining, []
        while len(current) > 1:
            step = next(steps)
            if step.removed_label is None:
                break
            current = [label for label in current if label != step.removed_label]
            removed.append(step.removed_label)
        classes.append(tuple(current))
        remaining = removed
    leftover = list(steps)
    if leftover:
        raise ValueError(f"trace has {len(leftover)} unused steps")
    return _in_input_order(classes, labels)
