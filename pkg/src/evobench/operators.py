"""Selection, crossover and mutation for real-coded chromosomes.

Every function takes the random generator explicitly; nothing here keeps state.
Genes are passed and returned as tuples of floats.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .model import Bounds, Individual

Genes = tuple[float, ...]


def _check_lengths(a: Sequence[float], b: Sequence[float]) -> None:
    if len(a) != len(b):
        raise ValueError(f"parents differ in length: {len(a)} vs {len(b)}")


def binary_tournament(population: Sequence[Individual], rng: np.random.Generator) -> int:
    """Pick two distinct members uniformly and return the index of the fitter one."""
    size = len(population)
    if size < 2:
        raise ValueError(f"binary tournament needs at least 2 members, got {size}")
    i = int(rng.integers(size))
    j = int(rng.integers(size - 1))
    if j >= i:
        j += 1
    fi = population[i].fitness
    fj = population[j].fitness
    if fi > fj:
        return i
    if fj > fi:
        return j
    return i if rng.random() < 0.5 else j


def spx(parent_a: Sequence[float], parent_b: Sequence[float], rng: np.random.Generator) -> tuple[Genes, Genes]:
    """Single-point crossover: swap tails after a cut drawn from 1..L-1."""
    _check_lengths(parent_a, parent_b)
    length = len(parent_a)
    if length < 2:
        raise ValueError("SPX needs chromosomes of length >= 2")
    cut = int(rng.integers(1, length))
    a, b = tuple(parent_a), tuple(parent_b)
    return a[:cut] + b[cut:], b[:cut] + a[cut:]


def mpx(parent_a: Sequence[float], parent_b: Sequence[float]) -> Genes:
    _check_lengths(parent_a, parent_b)
    return tuple((x + y) / 2.0 for x, y in zip(parent_a, parent_b))


def blx(
    parent_a: Sequence[float],
    parent_b: Sequence[float],
    alpha: float,
    n_children: int,
    rng: np.random.Generator,
    bounds: Bounds | None = None,
) -> list[Genes]:
    """Blend crossover BLX-alpha.

    Each child gene is uniform on [lo - alpha*d, hi + alpha*d] where lo/hi are
    the parental genes and d = hi - lo, then clamped into ``bounds``.
    """
    _check_lengths(parent_a, parent_b)
    if n_children not in (1, 2):
        raise ValueError(f"n_children must be 1 or 2, got {n_children}")
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    children = []
    for _ in range(n_children):
        child = []
        for x, y in zip(parent_a, parent_b):
            lo, hi = (x, y) if x <= y else (y, x)
            if lo == hi:
                child.append(lo)
                continue
            spread = alpha * (hi - lo)
            low, high = lo - spread, hi + spread
            value = low + (high - low) * rng.random()
            if bounds is not None:
                value = bounds.clamp(value)
            child.append(value)
        children.append(tuple(child))
    return children


def mutate(
    genes: Sequence[float],
    rate: float,
    sigma: float,
    bounds: Bounds,
    rng: np.random.Generator,
) -> Genes:
    """Gaussian per-gene mutation with probability ``rate``, clamped into ``bounds``."""
    if rate <= 0.0:
        return tuple(genes)
    hits = rng.random(len(genes)) < rate
    if not hits.any():
        return tuple(genes)
    out = list(genes)
    for i in np.flatnonzero(hits):
        out[i] = bounds.clamp(float(out[i] + sigma * rng.standard_normal()))
    return tuple(out)
