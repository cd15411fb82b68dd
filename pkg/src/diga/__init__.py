"""Dual-agent genetic algorithm for evolving feedforward binary classifiers."""

from .arch_search import (
    ArchSearchConfig,
    create_new_solution,
    create_new_solutions,
    dominates,
    fitness_weights,
    pareto_dominance_rank,
    sort_solutions,
    update_and_sort,
)
from .assimilation import TaggedSolution, allocate, anabolism, masked_paste, merge_two_offs, update_lead_foll
from .data_io import load_dataset, synth_dataset, write_dataset
from .engine import EvolutionConfig, RunRecord, final_report, run_evolution
from .errors import (
    ConfigError,
    DatasetError,
    DatasetFormatError,
    DimensionError,
    IncomparableError,
    NumericalError,
    SearchSpaceExhausted,
)
from .gd_baseline import GDConfig, backprop_grads, gd_train
from .model import ArchSolution, Dataset, ParamSet, cost, forward, init_zero_params, predict, trim_params
from .variation import MutationConfig, crossover_rows, mutate, mutation_rate_at

__version__ = "0.1.0"
