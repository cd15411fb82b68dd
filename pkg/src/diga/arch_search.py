"""Architecture generation, Pareto dominance ranking and sorting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, IncomparableError, SearchSpaceExhausted
from .model import Arch, ArchSolution, Dataset, ParamSet, as_arch, costs_for

ATTEMPTS_PER_SOLUTION = 1000


@dataclass
class ArchSearchConfig:
    max_dims: Arch
    cr: float = 0.9
    par: float = 0.3
    pitch_span: int = 2

    def __post_init__(self):
        self.max_dims = as_arch(self.max_dims)
        if not 0.0 <= self.cr <= 1.0:
            raise ConfigError(f"cr must lie in [0, 1], got {self.cr}")
        if not 0.0 <= self.par <= 1.0:
            raise ConfigError(f"par must lie in [0, 1], got {self.par}")
        if int(self.pitch_span) != self.pitch_span or self.pitch_span < 1:
            raise ConfigError(f"pitch_span must be a positive integer, got {self.pitch_span}")
        self.pitch_span = int(self.pitch_span)


def fitness_weights(costs: Sequence[float]) -> np.ndarray:
    """Roulette-wheel probabilities, proportional to 1 / (1 + cost)."""
    c = np.asarray(costs, dtype=float)
    if c.size == 0:
        raise ValueError("fitness_weights needs at least one cost")
    if not np.isfinite(c).all():
        raise ValueError("costs must be finite")
    if (c < 0).any():
        raise ValueError("costs must be nonnegative")
    fitness = 1.0 / (1.0 + c)
    return fitness / fitness.sum()


def objectives(sol: ArchSolution) -> tuple:
    """Hidden-layer sizes followed by cost; every component is minimized."""
    return (*sol.arch[1:-1], sol.cost)


def dominates(a: ArchSolution, b: ArchSolution) -> bool:
    if len(a.arch) != len(b.arch):
        raise IncomparableError(f"cannot compare {list(a.arch)} with {list(b.arch)}")
    fa, fb = objectives(a), objectives(b)
    return all(x <= y for x, y in zip(fa, fb)) and any(x < y for x, y in zip(fa, fb))


def pareto_dominance_rank(solutions: Sequence[ArchSolution]) -> np.ndarray:
    """Number of solutions in the population that dominate each solution."""
    if not solutions:
        raise ValueError("empty population")
    n_layers = {len(s.arch) for s in solutions}
    if len(n_layers) > 1:
        raise IncomparableError("population mixes architectures with different layer counts")
    F = np.array([objectives(s) for s in solutions], dtype=float)
    # dom[j, i]: solution j dominates solution i
    le = (F[:, None, :] <= F[None, :, :]).all(axis=2)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=2)
    return (le & lt).sum(axis=0)


def sort_order(solutions: Sequence[ArchSolution]) -> list[int]:
    ranks = pareto_dominance_rank(solutions)
    return sorted(range(len(solutions)), key=lambda i: (ranks[i], solutions[i].cost))


def sort_solutions(solutions: Sequence[ArchSolution]) -> list[ArchSolution]:
    """Stable sort by (dominance rank, cost)."""
    return [solutions[i] for i in sort_order(solutions)]


def unique_solutions(solutions: Sequence[ArchSolution]) -> list[ArchSolution]:
    """One entry per architecture, keeping the cheaper duplicate, in first-seen order."""
    best: dict[Arch, ArchSolution] = {}
    for s in solutions:
        if s.arch not in best or s.cost < best[s.arch].cost:
            best[s.arch] = s
    return list(best.values())


def _roulette(cum: np.ndarray, rng: np.random.Generator) -> int:
    idx = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
    return min(idx, len(cum) - 1)


def create_new_solution(unique_layers: Sequence[ArchSolution], config: ArchSearchConfig,
                        rng: np.random.Generator) -> Arch:
    if not unique_layers:
        raise ValueError("need at least one solution to draw from")
    max_dims = config.max_dims
    template = unique_layers[0].arch
    if len(template) != len(max_dims) or any(len(s.arch) != len(template) for s in unique_layers):
        raise IncomparableError("solutions and max_dims disagree on layer count")
    cum = np.cumsum(fitness_weights([s.cost for s in unique_layers]))
    middle = []
    for col in range(1, len(max_dims) - 1):
        hi = max_dims[col]
        if rng.random() < config.cr:
            x = unique_layers[_roulette(cum, rng)].arch[col]
            if rng.random() < config.par:
                x += int(rng.integers(-config.pitch_span, config.pitch_span + 1))
            x = min(max(x, 1), hi)
        else:
            x = int(rng.integers(1, hi + 1))
        middle.append(int(x))
    return (template[0], *middle, template[-1])


def draw_distinct(pool: Sequence[ArchSolution], config: ArchSearchConfig, count: int,
                  rng: np.random.Generator, exclude=()) -> list[Arch]:
    """Draw ``count`` mutually distinct architectures not in ``exclude``."""
    taken = set(exclude)
    out: list[Arch] = []
    budget = ATTEMPTS_PER_SOLUTION * max(count, 1)
    for _ in range(budget):
        if len(out) >= count:
            break
        arch = create_new_solution(pool, config, rng)
        if arch not in taken:
            taken.add(arch)
            out.append(arch)
    if len(out) < count:
        raise SearchSpaceExhausted(
            f"found only {len(out)} of {count} new distinct architectures within {budget} draws "
            f"(max_dims={list(config.max_dims)})"
        )
    return out


def create_new_solutions(leader_layers: Sequence[ArchSolution], follower_layers: Sequence[ArchSolution],
                         config: ArchSearchConfig, size: int, rng: np.random.Generator) -> list[Arch]:
    pool = unique_solutions([*leader_layers, *follower_layers])
    if not pool:
        raise ValueError("leader and follower lists are both empty")
    return draw_distinct(pool, config, size, rng)


def update_and_sort(archs: Sequence[Arch], params: ParamSet, data: Dataset) -> list[ArchSolution]:
    """Re-evaluate every architecture against ``params`` and sort the result."""
    archs = [as_arch(a) for a in archs]
    costs = costs_for(params, archs, data)
    return sort_solutions([ArchSolution(a, c) for a, c in zip(archs, costs)])
