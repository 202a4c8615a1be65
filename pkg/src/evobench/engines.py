"""The four population-update strategies behind one cycle interface.

Each ``*_cycle`` function mutates the given :class:`EngineState` in place and
returns it. Every objective call goes through :meth:`EngineState.evaluate`, so
the counter is the single source of truth for the evaluation count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .model import Crossover, GAConfig, Individual, RunRecord, Variant
from .objective import BudgetExhausted, EvaluationCounter, evaluate
from .operators import binary_tournament, blx, mpx, mutate, spx


class Solved(Exception):
    """Raised by an engine that stops on success, at the first qualifying evaluation."""

    def __init__(self, evaluation: int):
        super().__init__(f"success threshold reached at evaluation {evaluation}")
        self.evaluation = evaluation


@dataclass
class EngineState:
    config: GAConfig
    population: list[Individual]
    counter: EvaluationCounter
    rng: np.random.Generator
    best_ever: Individual | None = None
    stop_on_success: bool = False
    solved_at: int | None = None

    def evaluate(self, genes: tuple[float, ...]) -> Individual:
        raw, fitness = evaluate(self.counter, genes)
        ind = Individual(genes, raw, fitness, bounds=self.config.bounds)
        if self.best_ever is None or raw < self.best_ever.raw:
            self.best_ever = ind
        if raw < self.config.success_threshold and self.solved_at is None:
            self.solved_at = self.counter.used
            if self.stop_on_success:
                raise Solved(self.solved_at)
        return ind

    def best_index(self) -> int:
        """Index of the fittest member; lowest index wins ties."""
        pop = self.population
        best = 0
        for i in range(1, len(pop)):
            if pop[i].fitness > pop[best].fitness:
                best = i
        return best

    def worst_index(self) -> int:
        pop = self.population
        worst = 0
        for i in range(1, len(pop)):
            if pop[i].fitness < pop[worst].fitness:
                worst = i
        return worst


def new_state(config: GAConfig, stop_on_success: bool = False) -> EngineState:
    return EngineState(
        config=config,
        population=[],
        counter=EvaluationCounter(config.max_evaluations),
        rng=np.random.default_rng(config.seed),
        stop_on_success=stop_on_success,
    )


def populate(state: EngineState) -> EngineState:
    """Draw P chromosomes uniformly inside the bounds and evaluate each one."""
    config = state.config
    lo, hi = config.bounds.lower, config.bounds.upper
    for _ in range(config.population_size):
        genes = tuple(float(g) for g in state.rng.uniform(lo, hi, config.chromosome_length))
        state.population.append(state.evaluate(genes))
    return state


def init(config: GAConfig, stop_on_success: bool = False) -> EngineState:
    return populate(new_state(config, stop_on_success))


def _recombine(state: EngineState, a: Individual, b: Individual) -> tuple[float, ...]:
    config = state.config
    rng = state.rng
    if config.crossover is Crossover.SPX:
        return spx(a.genes, b.genes, rng)[0]
    if config.crossover is Crossover.MPX:
        if config.mpx_probability < 1.0 and rng.random() >= config.mpx_probability:
            return a.genes if a.fitness >= b.fitness else b.genes
        return mpx(a.genes, b.genes)
    return blx(a.genes, b.genes, config.blx_alpha, 1, rng, config.bounds)[0]


def make_offspring(state: EngineState) -> Individual:
    """Two tournament parents -> one child -> mutation -> one evaluation."""
    pop = state.population
    a = pop[binary_tournament(pop, state.rng)]
    b = pop[binary_tournament(pop, state.rng)]
    child = _recombine(state, a, b)
    config = state.config
    child = mutate(child, config.mutation_rate, config.sigma, config.bounds, state.rng)
    return state.evaluate(child)


def gga_cycle(state: EngineState) -> EngineState:
    """Generational: P offspring replace the whole population.

    If the budget runs out mid-cycle the partial offspring are dropped and
    BudgetExhausted propagates.
    """
    offspring = [make_offspring(state) for _ in range(state.config.population_size)]
    state.population = offspring
    return state


def ssga_cycle(state: EngineState) -> EngineState:
    """Steady-state (mu+1): one offspring unconditionally replaces the worst member."""
    child = make_offspring(state)
    state.population[state.worst_index()] = child
    return state


def sgga_cycle(state: EngineState) -> EngineState:
    """Steady-generational: one offspring replaces a random member other than the best."""
    child = make_offspring(state)
    best = state.best_index()
    victim = int(state.rng.integers(len(state.population) - 1))
    if victim >= best:
        victim += 1
    state.population[victim] = child
    return state


def truncate(parents: list[Individual], children: list[Individual], size: int) -> list[Individual]:
    """Keep the ``size`` fittest of parents + children.

    Ties prefer children, then the lower raw objective, then merge order.
    """
    merged = [(ind, 1) for ind in parents] + [(ind, 0) for ind in children]
    merged.sort(key=lambda pair: (-pair[0].fitness, pair[1], pair[0].raw))
    return [ind for ind, _ in merged[:size]]


def mu_plus_mu_cycle(state: EngineState) -> EngineState:
    """(mu+mu): P offspring compete with the P parents; the top P survive.

    On budget exhaustion the children made so far still compete before the
    exception propagates.
    """
    size = state.config.population_size
    children: list[Individual] = []
    try:
        for _ in range(size):
            children.append(make_offspring(state))
    except BudgetExhausted:
        state.population = truncate(state.population, children, size)
        raise
    state.population = truncate(state.population, children, size)
    return state


CYCLES: dict[Variant, Callable[[EngineState], EngineState]] = {
    Variant.GGA: gga_cycle,
    Variant.SSGA: ssga_cycle,
    Variant.SGGA: sgga_cycle,
    Variant.MU_PLUS_MU: mu_plus_mu_cycle,
}


def cycle(state: EngineState) -> EngineState:
    return CYCLES[state.config.variant](state)


def run(config: GAConfig, config_id: str | None = None, run_index: int = 0) -> RunRecord:
    """Run until the first evaluation below the success threshold or until the budget is spent."""
    state = new_state(config, stop_on_success=True)
    step = CYCLES[config.variant]
    success = False
    try:
        populate(state)
        while True:
            step(state)
    except Solved:
        success = True
    except BudgetExhausted:
        pass
    best = state.best_ever
    return RunRecord(
        config_id=config_id or config.default_id,
        variant=config.variant,
        crossover=config.crossover,
        run_index=run_index,
        seed=config.seed,
        evaluations_used=state.counter.used,
        success=success,
        best_raw=best.raw,
        best_genes=best.genes,
    )

