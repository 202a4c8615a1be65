"""Schaffer F6 benchmark, fitness transform, and budgeted evaluation counting."""

from __future__ import annotations

import math
from typing import Sequence


class BudgetExhausted(Exception):
    """Raised when an evaluation is requested after the budget is spent."""

    def __init__(self, budget: int):
        super().__init__(f"evaluation budget of {budget} exhausted")
        self.budget = budget


def schaffer_f6(genes: Sequence[float]) -> float:
    """Schaffer F6: 0.5 + (sin^2(r) - 0.5) / (1 + 0.001 r^2)^2 with r^2 = x^2 + y^2.

    Global minimum 0 at the origin; values lie in [0, 1).
    """
    if len(genes) != 2:
        raise ValueError(f"schaffer_f6 takes exactly 2 genes, got {len(genes)}")
    x, y = genes
    r2 = x * x + y * y
    s = math.sin(math.sqrt(r2))
    value = 0.5 + (s * s - 0.5) / (1.0 + 0.001 * r2) ** 2
    # rounding can leave -1e-17 at the origin
    return value if value > 0.0 else 0.0


def fitness_of(raw: float) -> float:
    if raw < 0:
        raise ValueError(f"raw objective must be >= 0, got {raw}")
    return 1.0 - raw


class EvaluationCounter:
    """Counts objective calls against a fixed budget."""

    __slots__ = ("used", "budget")

    def __init__(self, budget: int, used: int = 0):
        if budget < 1:
            raise ValueError(f"budget must be positive, got {budget}")
        self.budget = budget
        self.used = used

    @property
    def remaining(self) -> int:
        return self.budget - self.used

    def charge(self) -> int:
        if self.used >= self.budget:
            raise BudgetExhausted(self.budget)
        self.used += 1
        return self.used

    def __repr__(self):
        return f"EvaluationCounter(used={self.used}, budget={self.budget})"


def evaluate(counter: EvaluationCounter, genes: Sequence[float]) -> tuple[float, float]:
    """Charge one evaluation and return ``(raw, fitness)`` for ``genes``."""
    counter.charge()
    raw = schaffer_f6(genes)
    return raw, fitness_of(raw)
