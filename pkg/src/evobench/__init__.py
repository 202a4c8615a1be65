"""Real-coded GA variants on Schaffer F6 with a statistical comparison harness."""

from .engines import run
from .model import Bounds, Crossover, GAConfig, Individual, RunRecord, SampleSet, Variant, validate_config
from .objective import BudgetExhausted, EvaluationCounter, evaluate, fitness_of, schaffer_f6

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "BudgetExhausted",
    "Crossover",
    "EvaluationCounter",
    "GAConfig",
    "Individual",
    "RunRecord",
    "SampleSet",
    "Variant",
    "evaluate",
    "fitness_of",
    "run",
    "schaffer_f6",
    "validate_config",
]
