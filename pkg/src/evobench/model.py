"""Value types shared across the toolkit."""

from __future__ import annotations

import enum
import math
from dataclasses import InitVar, dataclass, field, fields
from typing import Sequence

UINT64_MAX = 2**64 - 1


class Variant(str, enum.Enum):
    GGA = "GGA"
    SSGA = "SSGA"
    SGGA = "SGGA"
    MU_PLUS_MU = "MU_PLUS_MU"


class Crossover(str, enum.Enum):
    SPX = "SPX"
    MPX = "MPX"
    BLX = "BLX"


@dataclass(frozen=True)
class Bounds:
    lower: float = -100.0
    upper: float = 100.0

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"bounds need lower < upper, got [{self.lower}, {self.upper}]")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, genes: Sequence[float]) -> bool:
        return all(self.lower <= g <= self.upper for g in genes)

    def clamp(self, value: float) -> float:
        return min(max(value, self.lower), self.upper)


@dataclass(frozen=True, eq=False)
class Individual:
    """An evaluated chromosome.

    Equality is by identity on purpose: engines track survivors across a
    cycle, and two distinct individuals may carry the same genes.
    Passing ``bounds`` rejects out-of-range genes instead of clamping them.
    """

    genes: tuple[float, ...]
    raw: float
    fitness: float
    bounds: InitVar[Bounds | None] = None

    def __post_init__(self, bounds):
        if bounds is not None and not bounds.contains(self.genes):
            raise ValueError(f"genes {self.genes} outside [{bounds.lower}, {bounds.upper}]")
        if not self.raw >= 0:
            raise ValueError(f"raw objective must be >= 0, got {self.raw}")


@dataclass(frozen=True)
class GAConfig:
    variant: Variant = Variant.GGA
    crossover: Crossover = Crossover.MPX
    population_size: int = 16
    chromosome_length: int = 2
    mutation_rate: float = 0.012
    # None means 0.1 * bounds width
    mutation_sigma: float | None = None
    blx_alpha: float = 0.0
    mpx_probability: float = 1.0
    bounds: Bounds = field(default_factory=Bounds)
    max_evaluations: int = 4000
    success_threshold: float = 1e-5
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "crossover", Crossover(self.crossover))

    @property
    def sigma(self) -> float:
        if self.mutation_sigma is None:
            return 0.1 * self.bounds.width
        return self.mutation_sigma

    @property
    def default_id(self) -> str:
        return f"{self.variant.value}-{self.crossover.value}"

    def replace(self, **changes) -> "GAConfig":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return GAConfig(**values)


def validate_config(config: GAConfig) -> list[str]:
    """Return every problem with ``config`` as a readable message; empty means usable."""
    problems = []
    if not isinstance(config.population_size, int) or config.population_size < 2:
        problems.append(f"population_size must be an integer >= 2, got {config.population_size!r}")
    if not isinstance(config.chromosome_length, int) or config.chromosome_length < 1:
        problems.append(f"chromosome_length must be an integer >= 1, got {config.chromosome_length!r}")
    elif config.chromosome_length != 2:
        problems.append(
            f"chromosome_length must be 2 for the Schaffer F6 objective, got {config.chromosome_length}"
        )
    if not 0.0 <= config.mutation_rate <= 1.0:
        problems.append(f"mutation_rate must lie in [0, 1], got {config.mutation_rate}")
    if not config.sigma > 0 or not math.isfinite(config.sigma):
        problems.append(f"mutation_sigma must be a finite value > 0, got {config.mutation_sigma}")
    if not config.blx_alpha >= 0:
        problems.append(f"blx_alpha must be >= 0, got {config.blx_alpha}")
    if not 0.0 <= config.mpx_probability <= 1.0:
        problems.append(f"mpx_probability must lie in [0, 1], got {config.mpx_probability}")
    if not isinstance(config.max_evaluations, int) or config.max_evaluations < 1:
        problems.append(f"max_evaluations must be a positive integer, got {config.max_evaluations!r}")
    elif isinstance(config.population_size, int) and config.max_evaluations < config.population_size:
        problems.append(
            f"max_evaluations ({config.max_evaluations}) must be >= population_size "
            f"({config.population_size})"
        )
    if not config.success_threshold > 0:
        problems.append(f"success_threshold must be > 0, got {config.success_threshold}")
    if not isinstance(config.seed, int) or not 0 <= config.seed <= UINT64_MAX:
        problems.append(f"seed must be an unsigned 64-bit integer, got {config.seed!r}")
    return problems


@dataclass(frozen=True)
class RunRecord:
    config_id: str
    variant: Variant
    crossover: Crossover
    run_index: int
    seed: int
    evaluations_used: int
    success: bool
    best_raw: float
    best_genes: tuple[float, ...]


@dataclass(frozen=True)
class SampleSet:
    """Per-run evaluation counts for one configuration.

    ``censored`` marks runs that failed and were counted at the full budget.
    """

    label: str
    values: tuple[float, ...]
    censored: tuple[bool, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.censored:
            object.__setattr__(self, "censored", (False,) * len(self.values))
        if len(self.values) < 2:
            raise ValueError(f"sample {self.label!r} needs at least 2 values, got {len(self.values)}")
        if any(not v > 0 for v in self.values):
            raise ValueError(f"sample {self.label!r} has non-positive values")
        if len(self.censored) != len(self.values):
            raise ValueError("censored flags must match values in length")

    @property
    def n(self) -> int:
        return len(self.values)
