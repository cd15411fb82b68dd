"""The dual-agent evolution loop and its run record."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .arch_search import ArchSearchConfig, create_new_solutions, draw_distinct, update_and_sort
from .assimilation import anabolism, merge_two_offs, update_lead_foll
from .errors import ConfigError
from .model import Arch, ArchSolution, Dataset, ParamSet, as_arch, forward, init_zero_params
from .variation import MutationConfig, crossover_rows, mutate, mutation_rate_at

log = logging.getLogger(__name__)


@dataclass
class EvolutionConfig:
    max_dims: Arch
    stop_cost: float
    size: int = 5
    max_iter: int = 20_000
    seed: int = 42
    mutation: MutationConfig = field(default_factory=MutationConfig)
    arch_search: ArchSearchConfig | None = None

    def __post_init__(self):
        self.max_dims = as_arch(self.max_dims)
        if not self.stop_cost > 0:
            raise ConfigError(f"stop_cost must be positive, got {self.stop_cost}")
        if self.size < 1:
            raise ConfigError(f"size must be at least 1, got {self.size}")
        space = int(np.prod(self.max_dims[1:-1], dtype=object))
        if space < self.size:
            raise ConfigError(f"max_dims {list(self.max_dims)} allow only {space} distinct architectures, "
                              f"fewer than size {self.size}")
        if self.max_iter < 0:
            raise ConfigError(f"max_iter must be nonnegative, got {self.max_iter}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.arch_search is None:
            self.arch_search = ArchSearchConfig(self.max_dims)
        elif tuple(self.arch_search.max_dims) != self.max_dims:
            raise ConfigError("arch_search.max_dims disagrees with max_dims")


@dataclass
class CurveRow:
    iteration: int
    best_cost: float
    leader_best: float
    follower_best: float | None
    mutation_rate: float | None
    swapped: bool


@dataclass
class SolutionRow:
    arch: Arch
    cost: float
    train_accuracy: float | None
    test_accuracy: float | None


@dataclass
class RunRecord:
    method: str
    curve: list[CurveRow] = field(default_factory=list)
    leader: list[SolutionRow] = field(default_factory=list)
    follower: list[SolutionRow] = field(default_factory=list)
    iterations: int = 0
    stopped_early: bool = False
    stop_cost: float | None = None
    wall_time: float = 0.0
    finalized: bool = False
    leader_params: ParamSet | None = field(default=None, repr=False)
    follower_params: ParamSet | None = field(default=None, repr=False)

    def log(self, row: CurveRow) -> None:
        if self.curve and row.iteration <= self.curve[-1].iteration:
            raise ValueError("curve iterations must be strictly increasing")
        if not np.isfinite(row.best_cost):
            raise ValueError(f"non-finite best cost at iteration {row.iteration}")
        self.curve.append(row)

    @property
    def swap_iterations(self) -> list[int]:
        return [r.iteration for r in self.curve if r.swapped]


def accuracy_pct(params: ParamSet, arch: Arch, data: Dataset | None) -> float | None:
    if data is None:
        return None
    out = forward(params, arch, data.X).output
    return 100.0 * float(np.mean((out >= 0.5) == (data.Y == 1)))


def solution_rows(params: ParamSet, solutions: Sequence[ArchSolution], train: Dataset,
                  test: Dataset | None) -> list[SolutionRow]:
    return [SolutionRow(s.arch, s.cost, accuracy_pct(params, s.arch, train), accuracy_pct(params, s.arch, test))
            for s in solutions]


def initial_agent(config: EvolutionConfig, train: Dataset, rng: np.random.Generator):
    params = init_zero_params(config.max_dims)
    # one generator for everything: the start pool holds max_dims alone
    archs = draw_distinct([ArchSolution(config.max_dims, 0.0)], config.arch_search, config.size, rng)
    return params, update_and_sort(archs, params, train)


def run_evolution(config: EvolutionConfig, train: Dataset, test: Dataset | None = None,
                  observer=None) -> RunRecord:
    """Evolve leader and follower agents until stop_cost or max_iter.

    Row 0 of the curve is the zero-initialized state; row k is the state after
    k generations. Random draws happen in a fixed order each generation:
    offspring architectures, crossover, mutation of offspring 1, mutation of
    offspring 2, then any gap-filling draws inside anabolism.

    ``observer(iteration, lead_p, foll_p, lead_l, foll_l)`` is called after
    every logged row, if given.
    """
    if train.n_features != config.max_dims[0]:
        raise ConfigError(f"training data has {train.n_features} features but max_dims[0] = {config.max_dims[0]}")
    if test is not None and test.n_features != config.max_dims[0]:
        raise ConfigError(f"test data has {test.n_features} features but max_dims[0] = {config.max_dims[0]}")
    start = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    mcfg, acfg = config.mutation, config.arch_search
    record = RunRecord("diga", stop_cost=config.stop_cost)

    lead_p, lead_l = initial_agent(config, train, rng)
    foll_p, foll_l = initial_agent(config, train, rng)
    record.log(CurveRow(0, lead_l[0].cost, lead_l[0].cost, foll_l[0].cost, mutation_rate_at(0, mcfg), False))
    if observer:
        observer(0, lead_p, foll_p, lead_l, foll_l)

    it = 0
    while record.curve[-1].best_cost >= config.stop_cost and it < config.max_iter:
        it += 1
        rate = mutation_rate_at(it, mcfg)
        off_archs = create_new_solutions(lead_l, foll_l, acfg, config.size, rng)
        off1_p, off2_p = crossover_rows(lead_p, foll_p, rng)
        off1_p = mutate(off1_p, rate, mcfg.scale, rng)
        off2_p = mutate(off2_p, rate, mcfg.scale, rng)
        off1_l = update_and_sort(off_archs, off1_p, train)
        off2_l = update_and_sort(off_archs, off2_p, train)
        off_p, off_l = merge_two_offs(off1_p, off2_p, off1_l, off2_l, train)
        lead_p, foll_p, lead_l, foll_l = anabolism(lead_p, foll_p, off_p, lead_l, foll_l, off_l, acfg, rng, train)
        lead_p, foll_p, lead_l, foll_l, swapped = update_lead_foll(lead_p, foll_p, lead_l, foll_l, train)
        record.log(CurveRow(it, lead_l[0].cost, lead_l[0].cost, foll_l[0].cost, rate, swapped))
        if observer:
            observer(it, lead_p, foll_p, lead_l, foll_l)
        if it % 1000 == 0:
            log.info("iteration %d best %.5f follower %.5f", it, lead_l[0].cost, foll_l[0].cost)

    record.iterations = it
    record.stopped_early = record.curve[-1].best_cost < config.stop_cost
    record.leader = solution_rows(lead_p, lead_l, train, test)
    record.follower = solution_rows(foll_p, foll_l, train, test)
    record.leader_params, record.follower_params = lead_p, foll_p
    record.wall_time = time.perf_counter() - start
    record.finalized = True
    return record


def _fmt_pct(p: float | None) -> str:
    return "-" if p is None else f"{round(p, 2):g}"


def _report_rows(rows: Sequence[SolutionRow]) -> list[dict]:
    return [
        {
            "layer_dims": list(r.arch),
            "cost": r.cost,
            "train_accuracy": r.train_accuracy,
            "test_accuracy": r.test_accuracy,
            "row": "[" + ", ".join(str(d) for d in r.arch) + f", {r.cost:.5f}]",
            "train_test": f"{_fmt_pct(r.train_accuracy)}/{_fmt_pct(r.test_accuracy)}",
        }
        for r in rows
    ]


def final_report(record: RunRecord) -> dict:
    """Leader/follower tables in sorted order, one row per solution.

    Wall time is left out so identical runs give identical reports.
    """
    if not record.finalized:
        raise ValueError("run record is not finalized")
    return {
        "method": record.method,
        "iterations": record.iterations,
        "stopped_early": record.stopped_early,
        "stop_cost": record.stop_cost,
        "initial_cost": record.curve[0].best_cost,
        "final_cost": record.curve[-1].best_cost,
        "swap_count": len(record.swap_iterations),
        "leader": _report_rows(record.leader),
        "follower": _report_rows(record.follower),
    }


def format_table(report: dict) -> str:
    """Plain-text rendering of a report in the Leader | Train/test | Follower | Train/test layout."""
    lead, foll = report["leader"], report["follower"]
    lines = []
    if foll:
        lines.append(f"{'No.':<4}{'Leader_layers':<34}{'Train%/test%':<14}{'Follower_layers':<34}Train%/test%")
        for i, (a, b) in enumerate(zip(lead, foll), 1):
            lines.append(f"{i:<4}{a['row']:<34}{a['train_test']:<14}{b['row']:<34}{b['train_test']}")
    else:
        lines.append(f"{'No':<4}{'Layer_dims':<34}Train%/test%")
        for i, a in enumerate(lead, 1):
            lines.append(f"{i:<4}{a['row']:<34}{a['train_test']}")
    return "\n".join(lines)
